#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "laymat/errors.hpp"

namespace laymat {

/// Directed graph of physical qubits. Edges mark two-qubit gate support
/// between qubit pairs; `supported_ops` optionally narrows which named
/// instructions exist on which qubits/edges. An empty `supported_ops`
/// means every registered instruction is available everywhere.
struct CouplingMap {
    int num_qubits = 0;
    std::set<std::pair<int, int>> edges;
    std::map<std::string, std::set<std::vector<int>>> supported_ops;

    bool has_edge(int a, int b) const { return edges.count({a, b}) != 0; }
    bool has_op_data() const { return !supported_ops.empty(); }

    /// True when instruction `name` can run on the given qubit tuple. With no
    /// per-instruction data, any in-range tuple (edge-backed for 2q) is allowed.
    bool supports(const std::string& name, const std::vector<int>& qubits) const;

    /// Sorted undirected neighbor lists (both edge orientations merged).
    std::vector<std::vector<int>> undirected_adjacency() const;

    bool operator==(const CouplingMap&) const = default;
};

/// Symmetric closure: both orientations of every edge, supported 2q ops
/// unified across orientations. Idempotent; node count preserved.
CouplingMap undirected_view(const CouplingMap& cm);

/// Heavy-hex lattice of code distance `d` with (5d^2 - 2d - 1)/2 qubits and
/// node degrees in {1, 2, 3}. Valid distances are 2 (the minimal 7-qubit
/// H-cell) and odd values >= 3; d = 23 yields the 1299-qubit device scale.
/// Numbering is row-major over the lattice rows; edges are emitted in both
/// directions. Deterministic across runs.
CouplingMap heavy_hex(int distance);

/// Loads `{"num_qubits":N,"edges":[[a,b],...],"supported_ops":{...}?}`.
CouplingMap coupling_map_from_json(const std::string& text);

std::string coupling_map_to_json(const CouplingMap& cm);

}  // namespace laymat
