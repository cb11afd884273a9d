#include "causal/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <deque>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "causal/errors.hpp"

namespace causal {

namespace {

std::pair<std::string, std::string> ordered_pair(const std::string& a, const std::string& b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

}  // namespace

CausalGraph::CausalGraph(std::vector<std::string> nodes, std::vector<DirectedEdge> directed,
                         std::vector<std::pair<std::string, std::string>> bidirected)
    : nodes_(std::move(nodes)), directed_(std::move(directed)), bidirected_(std::move(bidirected)) {
    std::map<std::string, int> id;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!id.emplace(nodes_[i], static_cast<int>(i)).second) {
            throw SchemaError("duplicate node '" + nodes_[i] + "'");
        }
    }
    parents_.assign(nodes_.size(), {});
    children_.assign(nodes_.size(), {});

    std::set<std::pair<std::string, std::string>> seen_directed;
    for (const auto& e : directed_) {
        const auto from = id.find(e.from);
        const auto to = id.find(e.to);
        if (from == id.end()) throw LookupError("edge references unknown node '" + e.from + "'");
        if (to == id.end()) throw LookupError("edge references unknown node '" + e.to + "'");
        if (e.from == e.to) throw SchemaError("self-loop on '" + e.from + "'");
        if (!seen_directed.insert({e.from, e.to}).second) {
            throw SchemaError("duplicate edge " + e.from + " -> " + e.to);
        }
        children_[from->second].push_back(to->second);
        parents_[to->second].push_back(from->second);
    }

    std::set<std::pair<std::string, std::string>> seen_bidirected;
    for (auto& pr : bidirected_) {
        if (!id.count(pr.first)) throw LookupError("edge references unknown node '" + pr.first + "'");
        if (!id.count(pr.second)) throw LookupError("edge references unknown node '" + pr.second + "'");
        if (pr.first == pr.second) throw SchemaError("self-loop on '" + pr.first + "'");
        pr = ordered_pair(pr.first, pr.second);
        if (!seen_bidirected.insert(pr).second) {
            throw SchemaError("duplicate bidirected edge " + pr.first + " <-> " + pr.second);
        }
        if (seen_directed.count({pr.first, pr.second}) || seen_directed.count({pr.second, pr.first})) {
            throw SchemaError("pair " + pr.first + ", " + pr.second +
                              " is both directed and bidirected");
        }
    }

    topological_order();  // throws on cycles
}

int CausalGraph::index(const std::string& node) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i] == node) return static_cast<int>(i);
    }
    throw LookupError("unknown node '" + node + "'");
}

bool CausalGraph::has_node(const std::string& node) const {
    return std::find(nodes_.begin(), nodes_.end(), node) != nodes_.end();
}

bool CausalGraph::has_directed_edge(const std::string& from, const std::string& to) const {
    return std::any_of(directed_.begin(), directed_.end(), [&](const DirectedEdge& e) {
        return e.from == from && e.to == to;
    });
}

bool CausalGraph::has_bidirected_edge(const std::string& a, const std::string& b) const {
    const auto key = ordered_pair(a, b);
    return std::find(bidirected_.begin(), bidirected_.end(), key) != bidirected_.end();
}

std::optional<double> CausalGraph::edge_weight(const std::string& from, const std::string& to) const {
    for (const auto& e : directed_) {
        if (e.from == from && e.to == to) return e.weight;
    }
    return std::nullopt;
}

std::vector<int> CausalGraph::topological_order() const {
    const int n = static_cast<int>(nodes_.size());
    std::vector<int> in_degree(n, 0);
    for (int v = 0; v < n; ++v) in_degree[v] = static_cast<int>(parents_[v].size());
    std::deque<int> ready;
    for (int v = 0; v < n; ++v) {
        if (in_degree[v] == 0) ready.push_back(v);
    }
    std::vector<int> order;
    order.reserve(n);
    while (!ready.empty()) {
        const int v = ready.front();
        ready.pop_front();
        order.push_back(v);
        for (const int c : children_[v]) {
            if (--in_degree[c] == 0) ready.push_back(c);
        }
    }
    if (static_cast<int>(order.size()) != n) {
        throw SchemaError("directed edges contain a cycle");
    }
    return order;
}

CausalGraph CausalGraph::expand_bidirected() const {
    if (bidirected_.empty()) return *this;
    std::vector<std::string> nodes = nodes_;
    std::vector<DirectedEdge> edges = directed_;
    for (const auto& [a, b] : bidirected_) {
        const std::string latent = a + "<->" + b;
        nodes.push_back(latent);
        edges.push_back({latent, a, std::nullopt});
        edges.push_back({latent, b, std::nullopt});
    }
    return CausalGraph(std::move(nodes), std::move(edges));
}

CausalGraph CausalGraph::without_outgoing(const std::string& node) const {
    std::vector<DirectedEdge> kept;
    for (const auto& e : directed_) {
        if (e.from != node) kept.push_back(e);
    }
    return CausalGraph(nodes_, std::move(kept), bidirected_);
}

NodeSet descendants(const CausalGraph& g, const std::string& v) {
    const int start = g.index(v);
    std::vector<char> seen(g.nodes().size(), 0);
    std::deque<int> frontier{start};
    while (!frontier.empty()) {
        const int u = frontier.front();
        frontier.pop_front();
        for (const int c : g.children(u)) {
            if (!seen[c]) {
                seen[c] = 1;
                frontier.push_back(c);
            }
        }
    }
    NodeSet out;
    for (std::size_t i = 0; i < g.nodes().size(); ++i) {
        if (seen[i] && static_cast<int>(i) != start) out.insert(g.nodes()[i]);
    }
    out.erase(v);
    return out;
}

namespace {

// Reachability form of d-separation ("Bayes ball"): breadth-first search
// over (node, direction) states. `up` means the node was entered from a
// child, `down` from a parent.
std::vector<char> reachable_from(const CausalGraph& g, const std::vector<int>& sources,
                                 const std::vector<char>& in_z) {
    const int n = static_cast<int>(g.nodes().size());

    // Ancestors of z (including z), for the collider rule.
    std::vector<char> anc_z(n, 0);
    {
        std::deque<int> frontier;
        for (int v = 0; v < n; ++v) {
            if (in_z[v]) {
                anc_z[v] = 1;
                frontier.push_back(v);
            }
        }
        while (!frontier.empty()) {
            const int v = frontier.front();
            frontier.pop_front();
            for (const int p : g.parents(v)) {
                if (!anc_z[p]) {
                    anc_z[p] = 1;
                    frontier.push_back(p);
                }
            }
        }
    }

    enum { kUp = 0, kDown = 1 };
    std::vector<char> visited(2 * n, 0);
    std::vector<char> reached(n, 0);
    std::deque<std::pair<int, int>> frontier;
    for (const int s : sources) frontier.emplace_back(s, kUp);
    while (!frontier.empty()) {
        const auto [v, dir] = frontier.front();
        frontier.pop_front();
        if (visited[2 * v + dir]) continue;
        visited[2 * v + dir] = 1;
        if (!in_z[v]) reached[v] = 1;

        if (dir == kUp) {
            if (!in_z[v]) {
                for (const int p : g.parents(v)) frontier.emplace_back(p, kUp);
                for (const int c : g.children(v)) frontier.emplace_back(c, kDown);
            }
        } else {
            if (!in_z[v]) {
                for (const int c : g.children(v)) frontier.emplace_back(c, kDown);
            }
            if (anc_z[v]) {
                for (const int p : g.parents(v)) frontier.emplace_back(p, kUp);
            }
        }
    }
    return reached;
}

void require_disjoint(const NodeSet& a, const NodeSet& b, const char* what) {
    for (const auto& x : a) {
        if (b.count(x)) throw PreconditionError(std::string("d-separation query sets overlap: ") +
                                                what + " share '" + x + "'");
    }
}

}  // namespace

bool d_separated(const CausalGraph& g, const NodeSet& a, const NodeSet& b, const NodeSet& z) {
    require_disjoint(a, b, "a and b");
    require_disjoint(a, z, "a and z");
    require_disjoint(b, z, "b and z");
    const CausalGraph h = g.expand_bidirected();

    std::vector<int> sources;
    for (const auto& name : a) sources.push_back(h.index(name));
    std::vector<char> in_z(h.nodes().size(), 0);
    for (const auto& name : z) in_z[h.index(name)] = 1;

    const std::vector<char> reached = reachable_from(h, sources, in_z);
    for (const auto& name : b) {
        if (reached[h.index(name)]) return false;
    }
    return true;
}

bool satisfies_backdoor(const CausalGraph& g, const std::string& treatment,
                        const std::string& outcome, const NodeSet& z) {
    if (treatment == outcome) throw PreconditionError("treatment and outcome must differ");
    if (z.count(treatment) || z.count(outcome)) {
        throw PreconditionError("adjustment set must exclude treatment and outcome");
    }
    const NodeSet below = descendants(g, treatment);
    for (const auto& name : z) {
        if (below.count(name)) return false;
    }
    const CausalGraph surgered = g.without_outgoing(treatment);
    return d_separated(surgered, {treatment}, {outcome}, z);
}

std::optional<std::vector<std::string>> find_open_backdoor_path(const CausalGraph& g,
                                                                const std::string& treatment,
                                                                const std::string& outcome,
                                                                const NodeSet& z) {
    if (satisfies_backdoor(g, treatment, outcome, z)) return std::nullopt;

    const NodeSet below = descendants(g, treatment);
    for (const auto& name : z) {
        if (below.count(name)) {
            return std::vector<std::string>{"(adjustment node '" + name +
                                            "' is a descendant of " + treatment + ")"};
        }
    }

    // Walk all simple paths in the latent-expanded, treatment-surgered graph
    // until an unblocked one turns up; bounded by the graph size.
    const CausalGraph h = g.without_outgoing(treatment).expand_bidirected();
    const int n = static_cast<int>(h.nodes().size());
    const int start = h.index(treatment);
    const int goal = h.index(outcome);
    std::vector<char> in_z(n, 0);
    for (const auto& name : z) in_z[h.index(name)] = 1;

    std::vector<NodeSet> desc_cache(n);
    for (int v = 0; v < n; ++v) desc_cache[v] = descendants(h, h.nodes()[v]);
    const auto blocked_collider = [&](int v) {
        if (in_z[v]) return false;
        for (const auto& name : desc_cache[v]) {
            if (in_z[h.index(name)]) return false;
        }
        return true;
    };

    struct Step {
        int node;
        bool entered_by_arrow_into_node;
    };
    std::vector<Step> path{{start, false}};
    std::vector<char> on_path(n, 0);
    on_path[start] = 1;

    std::optional<std::vector<std::string>> found;
    const std::function<void()> dfs = [&]() {
        if (found) return;
        const Step cur = path.back();
        if (cur.node == goal) {
            std::vector<std::string> names;
            for (const auto& s : path) names.push_back(h.nodes()[s.node]);
            found = names;
            return;
        }
        const bool is_midpoint = path.size() >= 2;
        const auto try_step = [&](int next, bool into_next) {
            if (found || on_path[next]) return;
            path.push_back({next, into_next});
            on_path[next] = 1;
            dfs();
            on_path[next] = 0;
            path.pop_back();
        };
        // Leaving via an outgoing edge makes cur a chain or fork: blocked
        // exactly when cur is in z.
        if (!is_midpoint || !in_z[cur.node]) {
            for (const int next : h.children(cur.node)) try_step(next, true);
        }
        // Leaving via an incoming edge makes cur a collider when it was
        // entered head-on, otherwise a reversed chain.
        for (const int next : h.parents(cur.node)) {
            if (is_midpoint) {
                if (cur.entered_by_arrow_into_node) {
                    if (blocked_collider(cur.node)) continue;
                } else if (in_z[cur.node]) {
                    continue;
                }
            }
            try_step(next, false);
        }
    };
    dfs();
    if (found) return found;
    return std::vector<std::string>{"(open backdoor path exists but was not reconstructed)"};
}

std::vector<NodeSet> minimal_backdoor_sets(const CausalGraph& g, const std::string& treatment,
                                           const std::string& outcome, int max_nodes) {
    const int n = static_cast<int>(g.nodes().size());
    if (n > max_nodes) {
        throw BudgetError("graph has " + std::to_string(n) + " nodes, beyond the exhaustive budget " +
                          std::to_string(max_nodes) + "; check explicit sets with satisfies_backdoor");
    }
    std::vector<std::string> candidates;
    for (const auto& name : g.nodes()) {
        if (name != treatment && name != outcome) candidates.push_back(name);
    }
    std::sort(candidates.begin(), candidates.end());
    const int m = static_cast<int>(candidates.size());

    std::vector<NodeSet> minimal;
    const auto is_superset_of_found = [&](const NodeSet& z) {
        return std::any_of(minimal.begin(), minimal.end(), [&](const NodeSet& s) {
            return std::includes(z.begin(), z.end(), s.begin(), s.end());
        });
    };

    // Enumerate subsets by size, lexicographically within a size.
    std::vector<int> pick;
    const std::function<void(int, int)> enumerate = [&](int offset, int remaining) {
        if (remaining == 0) {
            NodeSet z;
            for (const int i : pick) z.insert(candidates[i]);
            if (!is_superset_of_found(z) && satisfies_backdoor(g, treatment, outcome, z)) {
                minimal.push_back(std::move(z));
            }
            return;
        }
        for (int i = offset; i <= m - remaining; ++i) {
            pick.push_back(i);
            enumerate(i + 1, remaining - 1);
            pick.pop_back();
        }
    };
    for (int size = 0; size <= m; ++size) {
        enumerate(0, size);
    }
    return minimal;
}

namespace {

std::string dot_quote(const std::string& name) {
    std::string out = "\"";
    for (const char c : name) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string to_dot(const CausalGraph& g) {
    std::ostringstream os;
    os << "digraph causal {\n";
    for (const auto& name : g.nodes()) {
        os << "  " << dot_quote(name) << ";\n";
    }
    for (const auto& e : g.directed()) {
        os << "  " << dot_quote(e.from) << " -> " << dot_quote(e.to);
        if (e.weight) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.4f", *e.weight);
            os << " [label=" << dot_quote(buf) << "]";
        }
        os << ";\n";
    }
    for (const auto& [a, b] : g.bidirected()) {
        os << "  " << dot_quote(a) << " -> " << dot_quote(b) << " [dir=both];\n";
    }
    os << "}\n";
    return os.str();
}

namespace {

struct DotParser {
    const std::string& text;
    std::size_t pos = 0;

    void skip_space() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(const std::string& token) {
        skip_space();
        if (text.compare(pos, token.size(), token) == 0) {
            pos += token.size();
            return true;
        }
        return false;
    }

    std::optional<std::string> identifier() {
        skip_space();
        if (pos >= text.size()) return std::nullopt;
        if (text[pos] == '"') {
            std::string out;
            ++pos;
            while (pos < text.size() && text[pos] != '"') {
                if (text[pos] == '\\' && pos + 1 < text.size()) ++pos;
                out += text[pos++];
            }
            if (pos >= text.size()) throw StructuralError("unterminated quoted DOT identifier");
            ++pos;
            return out;
        }
        std::string out;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' ||
                text[pos] == '.' || text[pos] == '+' || text[pos] == '-')) {
            out += text[pos++];
        }
        if (out.empty()) return std::nullopt;
        return out;
    }
};

}  // namespace

CausalGraph from_dot(const std::string& text) {
    DotParser p{text};
    if (!p.eat("digraph")) throw StructuralError("DOT input must start with 'digraph'");
    p.identifier();  // optional graph name
    if (!p.eat("{")) throw StructuralError("expected '{' in DOT input");

    std::vector<std::string> nodes;
    std::set<std::string> node_set;
    std::vector<DirectedEdge> directed;
    std::vector<std::pair<std::string, std::string>> bidirected;
    const auto add_node = [&](const std::string& name) {
        if (node_set.insert(name).second) nodes.push_back(name);
    };

    for (;;) {
        p.skip_space();
        if (p.eat("}")) break;
        const auto first = p.identifier();
        if (!first) throw StructuralError("unexpected token in DOT input near offset " +
                                          std::to_string(p.pos));
        add_node(*first);
        if (p.eat("->")) {
            const auto second = p.identifier();
            if (!second) throw StructuralError("dangling '->' in DOT input");
            add_node(*second);
            std::optional<double> weight;
            bool both = false;
            if (p.eat("[")) {
                while (!p.eat("]")) {
                    const auto key = p.identifier();
                    if (!key || !p.eat("=")) throw StructuralError("malformed DOT attribute");
                    const auto value = p.identifier();
                    if (!value) throw StructuralError("malformed DOT attribute value");
                    if (*key == "label" || *key == "weight") {
                        weight = std::stod(*value);
                    } else if (*key == "dir" && *value == "both") {
                        both = true;
                    }
                    p.eat(",");
                }
            }
            if (both) {
                bidirected.emplace_back(*first, *second);
            } else {
                directed.push_back({*first, *second, weight});
            }
        }
        p.eat(";");
    }
    return CausalGraph(std::move(nodes), std::move(directed), std::move(bidirected));
}

std::string to_edge_list(const CausalGraph& g) {
    std::ostringstream os;
    std::set<std::string> touched;
    for (const auto& e : g.directed()) {
        touched.insert(e.from);
        touched.insert(e.to);
    }
    for (const auto& [a, b] : g.bidirected()) {
        touched.insert(a);
        touched.insert(b);
    }
    for (const auto& name : g.nodes()) {
        if (!touched.count(name)) os << "node " << name << '\n';
    }
    for (const auto& e : g.directed()) {
        os << e.from << " -> " << e.to;
        if (e.weight) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.17g", *e.weight);
            os << ' ' << buf;
        }
        os << '\n';
    }
    for (const auto& [a, b] : g.bidirected()) {
        os << a << " <-> " << b << '\n';
    }
    return os.str();
}

CausalGraph from_edge_list(const std::string& text) {
    std::vector<std::string> nodes;
    std::set<std::string> node_set;
    std::vector<DirectedEdge> directed;
    std::vector<std::pair<std::string, std::string>> bidirected;
    const auto add_node = [&](const std::string& name) {
        if (node_set.insert(name).second) nodes.push_back(name);
    };

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::vector<std::string> tok;
        std::string t;
        while (ls >> t) tok.push_back(t);
        if (tok.empty() || tok[0].starts_with("#")) continue;
        if (tok[0] == "node" && tok.size() == 2) {
            add_node(tok[1]);
            continue;
        }
        if (tok.size() >= 3 && tok[1] == "->") {
            add_node(tok[0]);
            add_node(tok[2]);
            std::optional<double> weight;
            if (tok.size() == 4) weight = std::stod(tok[3]);
            directed.push_back({tok[0], tok[2], weight});
            continue;
        }
        if (tok.size() == 3 && tok[1] == "<->") {
            add_node(tok[0]);
            add_node(tok[2]);
            bidirected.emplace_back(tok[0], tok[2]);
            continue;
        }
        throw StructuralError("edge list line " + std::to_string(line_no) + " is malformed: " + line);
    }
    return CausalGraph(std::move(nodes), std::move(directed), std::move(bidirected));
}

void save_dot(const CausalGraph& g, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw StructuralError("cannot write '" + path + "'");
    f << to_dot(g);
}

CausalGraph load_dot(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw StructuralError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return from_dot(buf.str());
}

}  // namespace causal
