#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace causal {

struct DirectedEdge {
    std::string from;
    std::string to;
    std::optional<double> weight;
};

/// DAG over named nodes, with optional bi-directed edges marking pairs that
/// share a latent confounder. The directed part is validated acyclic on
/// construction; no pair may be both directed and bi-directed.
class CausalGraph {
  public:
    CausalGraph() = default;
    CausalGraph(std::vector<std::string> nodes, std::vector<DirectedEdge> directed,
                std::vector<std::pair<std::string, std::string>> bidirected = {});

    const std::vector<std::string>& nodes() const { return nodes_; }
    const std::vector<DirectedEdge>& directed() const { return directed_; }
    const std::vector<std::pair<std::string, std::string>>& bidirected() const {
        return bidirected_;
    }

    int index(const std::string& node) const;
    bool has_node(const std::string& node) const;
    bool has_directed_edge(const std::string& from, const std::string& to) const;
    bool has_bidirected_edge(const std::string& a, const std::string& b) const;
    std::optional<double> edge_weight(const std::string& from, const std::string& to) const;

    const std::vector<int>& parents(int node) const { return parents_[node]; }
    const std::vector<int>& children(int node) const { return children_[node]; }

    /// A topological order of the directed part (exists by construction).
    std::vector<int> topological_order() const;

    /// Same nodes and edges with every bi-directed pair replaced by a fresh
    /// latent parent with two outgoing edges.
    CausalGraph expand_bidirected() const;

    /// Copy without the outgoing edges of `node` (backdoor-graph surgery).
    CausalGraph without_outgoing(const std::string& node) const;

  private:
    std::vector<std::string> nodes_;
    std::vector<DirectedEdge> directed_;
    std::vector<std::pair<std::string, std::string>> bidirected_;
    std::vector<std::vector<int>> parents_;
    std::vector<std::vector<int>> children_;
};

using NodeSet = std::set<std::string>;

/// Nodes reachable from v via directed edges, excluding v itself.
NodeSet descendants(const CausalGraph& g, const std::string& v);

/// Standard d-separation; bi-directed pairs are expanded into latent common
/// parents before testing. Sets must be disjoint.
bool d_separated(const CausalGraph& g, const NodeSet& a, const NodeSet& b, const NodeSet& z);

/// Pearl's backdoor criterion: z holds no descendant of the treatment and
/// blocks every path into the treatment, checked by d-separation in the
/// graph with the treatment's outgoing edges removed.
bool satisfies_backdoor(const CausalGraph& g, const std::string& treatment,
                        const std::string& outcome, const NodeSet& z);

/// A witness for a backdoor violation: some unblocked path from treatment to
/// outcome starting with an arrow into the treatment, or std::nullopt when z
/// satisfies the criterion. Paths through expanded latents name the latent
/// as "<a><->\<b>".
std::optional<std::vector<std::string>> find_open_backdoor_path(const CausalGraph& g,
                                                                const std::string& treatment,
                                                                const std::string& outcome,
                                                                const NodeSet& z);

/// All inclusion-minimal backdoor adjustment sets, ordered by size then
/// lexicographically. Exhaustive; refuses graphs beyond max_nodes.
std::vector<NodeSet> minimal_backdoor_sets(const CausalGraph& g, const std::string& treatment,
                                           const std::string& outcome, int max_nodes = 20);

/// DOT serialization; directed edges carry 4-decimal weight labels,
/// bi-directed edges render with dir=both.
std::string to_dot(const CausalGraph& g);
CausalGraph from_dot(const std::string& text);

/// Edge-list format: one `a -> b [weight]` or `a <-> b` per line; isolated
/// nodes appear as `node a`.
std::string to_edge_list(const CausalGraph& g);
CausalGraph from_edge_list(const std::string& text);

void save_dot(const CausalGraph& g, const std::string& path);
CausalGraph load_dot(const std::string& path);

}  // namespace causal
