#include "laymat/interaction_graph.hpp"

#include <algorithm>

#include <json.hpp>

namespace laymat {

int InteractionGraph::node_of_virtual(int virtual_qubit) const {
    auto it = std::lower_bound(virtual_of_node.begin(), virtual_of_node.end(), virtual_qubit);
    if (it == virtual_of_node.end() || *it != virtual_qubit) return -1;
    return static_cast<int>(it - virtual_of_node.begin());
}

std::vector<std::vector<int>> InteractionGraph::adjacency() const {
    std::vector<std::set<int>> nbrs(num_nodes);
    for (auto [a, b] : edges) {
        nbrs[a].insert(b);
        nbrs[b].insert(a);
    }
    std::vector<std::vector<int>> adj(num_nodes);
    for (int i = 0; i < num_nodes; ++i) adj[i].assign(nbrs[i].begin(), nbrs[i].end());
    return adj;
}

InteractionGraph build_interaction_graph(const QuantumCircuit& c, MatchMode mode) {
    InteractionGraph g;
    g.directed = mode == MatchMode::Strict;
    g.num_virtual_qubits = c.num_qubits;
    g.virtual_of_node = c.active_qubits();
    g.num_nodes = static_cast<int>(g.virtual_of_node.size());

    for (const auto& in : c.instructions) {
        if (in.kind == InstructionKind::Barrier) continue;
        if (in.qubits.size() == 1) {
            g.node_ops[g.node_of_virtual(in.qubits[0])][in.name] += 1;
            continue;
        }
        int a = g.node_of_virtual(in.qubits[0]);
        int b = g.node_of_virtual(in.qubits[1]);
        std::pair<int, int> e = g.directed ? std::pair{a, b} : std::minmax(a, b);
        g.edges.insert(e);
        g.edge_ops[e][in.name] += 1;
    }
    return g;
}

std::string interaction_graph_to_json(const InteractionGraph& g) {
    nlohmann::json j;
    j["directed"] = g.directed;
    j["num_nodes"] = g.num_nodes;
    j["num_virtual_qubits"] = g.num_virtual_qubits;
    j["virtual_of_node"] = g.virtual_of_node;
    auto& edges = j["edges"] = nlohmann::json::array();
    for (auto [a, b] : g.edges) edges.push_back({a, b});
    auto& node_ops = j["node_ops"] = nlohmann::json::object();
    for (const auto& [node, ops] : g.node_ops) node_ops[std::to_string(node)] = ops;
    auto& edge_ops = j["edge_ops"] = nlohmann::json::array();
    for (const auto& [e, ops] : g.edge_ops)
        edge_ops.push_back({{"edge", {e.first, e.second}}, {"ops", ops}});
    return j.dump(2) + "\n";
}

}  // namespace laymat
