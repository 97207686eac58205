#pragma once

#include <compare>
#include <optional>
#include <vector>

#include "laymat/coupling_map.hpp"
#include "laymat/interaction_graph.hpp"

namespace laymat {

/// Injective virtual-qubit -> physical-qubit assignment. Indexed by virtual
/// qubit; -1 marks declared wires the pattern graph does not constrain
/// (completed at remap time). Every pattern edge maps onto a coupling-map
/// edge, respecting direction in strict mode.
struct Layout {
    std::vector<int> phys_of_virtual;
    int num_physical = 0;

    auto operator<=>(const Layout&) const = default;
};

/// Bounds on the backtracking search. A state visit is one candidate-pair
/// feasibility evaluation; the layout set found under a smaller budget is
/// always a prefix of the set found under a larger one.
struct SearchBudget {
    std::optional<long long> max_state_visits;
    std::optional<long long> max_layouts;
};

struct SearchResult {
    std::vector<Layout> layouts;
    /// True iff the search space was fully covered. False only when a budget
    /// cut the search short, in which case `layouts` may be incomplete.
    bool exhausted = true;
    long long visits_used = 0;
};

/// Search-tree orderings: `Vf2` expands the lowest-index frontier node the
/// way the classic algorithm generates candidate pairs; `Vf2pp` follows the
/// precomputed degree-based order from vf2pp_node_order.
enum class NodeOrdering { Vf2, Vf2pp };

/// Degree-driven total order over pattern nodes: BFS layers grown from a
/// maximum-degree root, descending degree within each layer, all ties broken
/// by ascending node index. Exhausted components are followed by the next
/// component in order of its max-degree node index.
std::vector<int> vf2pp_node_order(const InteractionGraph& pattern);

/// Enumerates every subgraph-monomorphic embedding of `pattern` into
/// `target` (extra target edges allowed, automorphic relabelings included).
/// Loose mode matches the undirected views and ignores instruction
/// availability; strict mode matches directed edges and admits a layout only
/// when every node/edge op of the pattern is supported at the mapped
/// location. Candidate physical qubits are tried in ascending index order,
/// so results are deterministic for fixed inputs. Budget exhaustion is
/// reported through SearchResult, never as an error.
SearchResult find_embeddings(const InteractionGraph& pattern, const CouplingMap& target,
                             MatchMode mode, NodeOrdering ordering, SearchBudget budget = {});

}  // namespace laymat
