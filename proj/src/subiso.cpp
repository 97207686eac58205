#include "laymat/subiso.hpp"

#include <algorithm>
#include <limits>

namespace laymat {

std::vector<int> vf2pp_node_order(const InteractionGraph& pattern) {
    const int n = pattern.num_nodes;
    const auto adj = pattern.adjacency();
    std::vector<int> degree(n);
    for (int i = 0; i < n; ++i) degree[i] = static_cast<int>(adj[i].size());

    std::vector<char> placed(n, 0);
    std::vector<int> order;
    order.reserve(n);

    auto by_degree_desc = [&](int a, int b) {
        return degree[a] != degree[b] ? degree[a] > degree[b] : a < b;
    };

    int remaining = n;
    while (remaining > 0) {
        int root = -1;
        for (int i = 0; i < n; ++i)
            if (!placed[i] && (root == -1 || by_degree_desc(i, root))) root = i;
        // BFS layers from the root; each layer sorted by descending degree
        std::vector<int> layer{root};
        placed[root] = 1;
        while (!layer.empty()) {
            for (int u : layer) {
                order.push_back(u);
                --remaining;
            }
            std::vector<int> next;
            for (int u : layer)
                for (int w : adj[u])
                    if (!placed[w]) {
                        placed[w] = 1;
                        next.push_back(w);
                    }
            std::sort(next.begin(), next.end(), by_degree_desc);
            layer = std::move(next);
        }
    }
    return order;
}

namespace {

struct Matcher {
    const InteractionGraph& pattern;
    const CouplingMap& target;
    const MatchMode mode;
    const std::vector<int> static_order;  // empty for the classic vf2 ordering

    int np = 0;
    int nt = 0;
    std::vector<std::vector<int>> p_und, p_out, p_in;
    std::vector<std::vector<int>> t_und, t_out, t_in;
    // strict-mode availability of each pattern node's ops at each target node
    std::vector<std::vector<char>> node_ok;

    std::vector<int> core_p;  // pattern node -> target node or -1
    std::vector<int> core_t;  // target node -> pattern node or -1
    // frontier stamps: depth at which the node became adjacent to the mapping
    std::vector<int> p_stamp, t_stamp;

    long long visits = 0;
    long long max_visits = std::numeric_limits<long long>::max();
    long long max_layouts = std::numeric_limits<long long>::max();
    bool aborted = false;
    std::vector<Layout> layouts;

    Matcher(const InteractionGraph& p, const CouplingMap& t, MatchMode m,
            std::vector<int> order)
        : pattern(p), target(t), mode(m), static_order(std::move(order)) {
        np = pattern.num_nodes;
        nt = target.num_qubits;
        p_und = pattern.adjacency();
        t_und = target.undirected_adjacency();
        if (mode == MatchMode::Strict) {
            p_out.resize(np);
            p_in.resize(np);
            for (auto [a, b] : pattern.edges) {
                p_out[a].push_back(b);
                p_in[b].push_back(a);
            }
            t_out.resize(nt);
            t_in.resize(nt);
            for (auto [a, b] : target.edges) {
                t_out[a].push_back(b);
                t_in[b].push_back(a);
            }
            for (auto* lists : {&t_out, &t_in})
                for (auto& l : *lists) std::sort(l.begin(), l.end());
            node_ok.assign(np, std::vector<char>(nt, 1));
            for (const auto& [u, ops] : pattern.node_ops)
                for (int v = 0; v < nt; ++v) {
                    bool ok = true;
                    for (const auto& [name, count] : ops)
                        if (!target.supports(name, {v})) {
                            ok = false;
                            break;
                        }
                    node_ok[u][v] = ok;
                }
        }
        core_p.assign(np, -1);
        core_t.assign(nt, -1);
        p_stamp.assign(np, 0);
        t_stamp.assign(nt, 0);
    }

    bool edge_ops_supported(int pu, int pw, int tv, int tw) const {
        if (!target.has_op_data()) return true;
        auto it = pattern.edge_ops.find({pu, pw});
        if (it == pattern.edge_ops.end()) return true;
        for (const auto& [name, count] : it->second)
            if (!target.supports(name, {tv, tw})) return false;
        return true;
    }

    static bool adjacent(const std::vector<int>& sorted_nbrs, int v) {
        return std::binary_search(sorted_nbrs.begin(), sorted_nbrs.end(), v);
    }

    bool feasible(int u, int v) const {
        if (t_und[v].size() < p_und[u].size()) return false;
        if (mode == MatchMode::Strict) {
            if (t_out[v].size() < p_out[u].size()) return false;
            if (t_in[v].size() < p_in[u].size()) return false;
            if (!node_ok[u][v]) return false;
            for (int w : p_out[u])
                if (core_p[w] != -1 &&
                    (!adjacent(t_out[v], core_p[w]) || !edge_ops_supported(u, w, v, core_p[w])))
                    return false;
            for (int w : p_in[u])
                if (core_p[w] != -1 &&
                    (!adjacent(t_in[v], core_p[w]) || !edge_ops_supported(w, u, core_p[w], v)))
                    return false;
        } else {
            for (int w : p_und[u])
                if (core_p[w] != -1 && !adjacent(t_und[v], core_p[w])) return false;
        }
        // VF2 look-ahead on terminal-set sizes, monomorphism-safe form:
        // frontier neighbors and total unmapped neighbors of u may not
        // outnumber those of v.
        int term_p = 0, new_p = 0;
        for (int w : p_und[u])
            if (core_p[w] == -1) (p_stamp[w] ? term_p : new_p) += 1;
        int term_t = 0, new_t = 0;
        for (int w : t_und[v])
            if (core_t[w] == -1) (t_stamp[w] ? term_t : new_t) += 1;
        return term_p <= term_t && term_p + new_p <= term_t + new_t;
    }

    void add_pair(int u, int v, int depth) {
        core_p[u] = v;
        core_t[v] = u;
        for (int w : p_und[u])
            if (p_stamp[w] == 0) p_stamp[w] = depth;
        for (int w : t_und[v])
            if (t_stamp[w] == 0) t_stamp[w] = depth;
    }

    void remove_pair(int u, int v, int depth) {
        for (int w : p_und[u])
            if (p_stamp[w] == depth) p_stamp[w] = 0;
        for (int w : t_und[v])
            if (t_stamp[w] == depth) t_stamp[w] = 0;
        core_p[u] = -1;
        core_t[v] = -1;
    }

    int next_pattern_node() const {
        if (!static_order.empty()) {
            for (int u : static_order)
                if (core_p[u] == -1) return u;
            return -1;
        }
        for (int u = 0; u < np; ++u)
            if (core_p[u] == -1 && p_stamp[u] > 0) return u;
        for (int u = 0; u < np; ++u)
            if (core_p[u] == -1) return u;
        return -1;
    }

    void record_layout() {
        Layout l;
        l.num_physical = nt;
        l.phys_of_virtual.assign(pattern.num_virtual_qubits, -1);
        for (int u = 0; u < np; ++u) l.phys_of_virtual[pattern.virtual_of_node[u]] = core_p[u];
        layouts.push_back(std::move(l));
        if (static_cast<long long>(layouts.size()) >= max_layouts) aborted = true;
    }

    void search(int mapped) {
        if (aborted) return;
        if (mapped == np) {
            record_layout();
            return;
        }
        const int depth = mapped + 1;  // stamp value; 0 means unstamped
        const int u = next_pattern_node();

        // With a mapped pattern neighbor, only its image's neighborhood can
        // host u; otherwise every unmapped target node is a candidate.
        int anchor = -1;
        for (int w : p_und[u])
            if (core_p[w] != -1) {
                anchor = core_p[w];
                break;
            }
        const std::vector<int>* candidates = anchor >= 0 ? &t_und[anchor] : nullptr;
        const int limit = candidates ? static_cast<int>(candidates->size()) : nt;

        for (int i = 0; i < limit; ++i) {
            const int v = candidates ? (*candidates)[i] : i;
            if (core_t[v] != -1) continue;
            if (visits >= max_visits) {
                aborted = true;
                return;
            }
            ++visits;
            if (!feasible(u, v)) continue;
            add_pair(u, v, depth);
            search(mapped + 1);
            remove_pair(u, v, depth);
            if (aborted) return;
        }
    }
};

}  // namespace

SearchResult find_embeddings(const InteractionGraph& pattern, const CouplingMap& target,
                             MatchMode mode, NodeOrdering ordering, SearchBudget budget) {
    SearchResult result;
    if (pattern.num_nodes > target.num_qubits) return result;  // pigeonhole
    if (pattern.num_nodes == 0) {
        Layout l;
        l.num_physical = target.num_qubits;
        l.phys_of_virtual.assign(pattern.num_virtual_qubits, -1);
        result.layouts.push_back(std::move(l));
        return result;
    }

    std::vector<int> order;
    if (ordering == NodeOrdering::Vf2pp) order = vf2pp_node_order(pattern);
    Matcher m(pattern, target, mode, std::move(order));
    if (budget.max_state_visits) m.max_visits = *budget.max_state_visits;
    if (budget.max_layouts) m.max_layouts = *budget.max_layouts;
    m.search(0);

    result.layouts = std::move(m.layouts);
    result.exhausted = !m.aborted;
    result.visits_used = m.visits;
    return result;
}

}  // namespace laymat
