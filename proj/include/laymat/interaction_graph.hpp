#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "laymat/circuit.hpp"

namespace laymat {

/// The two compiler integration points: loose runs right after routing and
/// matches undirected graphs with averaged errors; strict runs after
/// optimization and matches directed edges with exact per-instruction
/// availability and error rates.
enum class MatchMode { Loose, Strict };

/// Graph over a circuit's active virtual qubits. Nodes are compacted ids
/// 0..num_nodes-1; `virtual_of_node` maps back to circuit qubit indices.
/// Edges mark two-qubit gates (undirected and deduplicated in loose mode,
/// directed per instruction qubit order in strict mode). Instruction-name
/// multisets are kept per node and per edge for strict-mode availability
/// checks and exact scoring.
struct InteractionGraph {
    bool directed = false;
    int num_nodes = 0;
    int num_virtual_qubits = 0;  // declared circuit width, including idle wires
    std::vector<int> virtual_of_node;
    std::set<std::pair<int, int>> edges;
    std::map<int, std::map<std::string, int>> node_ops;
    std::map<std::pair<int, int>, std::map<std::string, int>> edge_ops;

    /// Node id of a virtual qubit, or -1 when the qubit is idle.
    int node_of_virtual(int virtual_qubit) const;

    /// Sorted undirected neighbor lists over node ids.
    std::vector<std::vector<int>> adjacency() const;

    bool operator==(const InteractionGraph&) const = default;
};

/// Iterates the circuit's instructions and builds the pattern graph for
/// subgraph search. Barriers are skipped; single-qubit gates, measure and
/// reset land on nodes; fully idle declared wires are excluded so they do
/// not constrain placement.
InteractionGraph build_interaction_graph(const QuantumCircuit& c, MatchMode mode);

/// Debug/CLI dump of the graph (node ids, virtual qubits, edges, op multisets).
std::string interaction_graph_to_json(const InteractionGraph& g);

}  // namespace laymat
