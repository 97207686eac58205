#pragma once

#include <random>
#include <utility>
#include <vector>

#include "laymat/calibration.hpp"
#include "laymat/circuit.hpp"
#include "laymat/coupling_map.hpp"
#include "laymat/interaction_graph.hpp"

namespace laymat::test {

/// The hand-coded 7-qubit H-shaped map: edges 0-1, 1-2, 1-3, 3-5, 4-5, 5-6,
/// both directions.
inline CouplingMap nairobi_map() {
    CouplingMap cm;
    cm.num_qubits = 7;
    const std::pair<int, int> und[] = {{0, 1}, {1, 2}, {1, 3}, {3, 5}, {4, 5}, {5, 6}};
    for (auto [a, b] : und) {
        cm.edges.insert({a, b});
        cm.edges.insert({b, a});
    }
    return cm;
}

/// GHZ-style 3-qubit circuit hand-routed onto the Nairobi topology
/// (two-qubit gates on edges 1-3 and 3-5).
inline QuantumCircuit routed_ghz_circuit() {
    QuantumCircuit c;
    c.num_qubits = 7;
    c.num_clbits = 3;
    c.add_gate("h", {1});
    c.add_gate("cx", {1, 3});
    c.add_gate("cx", {3, 5});
    c.add_measure(1, 0);
    c.add_measure(3, 1);
    c.add_measure(5, 2);
    return c;
}

/// Pattern graph over nodes 0..n-1 built directly from an edge list.
inline InteractionGraph make_pattern(int n, const std::vector<std::pair<int, int>>& edges,
                                     bool directed = false) {
    InteractionGraph g;
    g.directed = directed;
    g.num_nodes = n;
    g.num_virtual_qubits = n;
    for (int i = 0; i < n; ++i) g.virtual_of_node.push_back(i);
    for (auto [a, b] : edges) {
        auto e = directed ? std::pair{a, b} : std::minmax(a, b);
        g.edges.insert(e);
        g.edge_ops[e]["cx"] += 1;
    }
    return g;
}

/// Random circuit over the whole index space; exercises every instruction
/// kind and parameterized gates. Used for round-trip and scoring properties.
inline QuantumCircuit random_circuit(std::mt19937_64& rng, int num_qubits, int num_clbits,
                                     int num_instructions) {
    QuantumCircuit c;
    c.num_qubits = num_qubits;
    c.num_clbits = num_clbits;
    const char* one_q[] = {"x", "h", "sx", "s", "t", "rz", "rx", "ry", "u2"};
    const char* two_q[] = {"cx", "cz", "swap", "rzz"};
    std::uniform_real_distribution<double> angle(-3.14159, 3.14159);
    for (int i = 0; i < num_instructions; ++i) {
        const int kind = static_cast<int>(rng() % 100);
        if (kind < 78) {
            if (num_qubits >= 2 && rng() % 2 == 0) {
                const char* name = two_q[rng() % std::size(two_q)];
                int a = static_cast<int>(rng() % num_qubits);
                int b = static_cast<int>(rng() % (num_qubits - 1));
                if (b >= a) ++b;
                std::vector<double> params;
                if (std::string(name) == "rzz") params.push_back(angle(rng));
                c.add_gate(name, {a, b}, params);
            } else {
                const char* name = one_q[rng() % std::size(one_q)];
                std::vector<double> params;
                const std::string n = name;
                if (n == "rz" || n == "rx" || n == "ry") params.push_back(angle(rng));
                if (n == "u2") params = {angle(rng), angle(rng)};
                c.add_gate(name, {static_cast<int>(rng() % num_qubits)}, params);
            }
        } else if (kind < 88 && num_clbits > 0) {
            c.add_measure(static_cast<int>(rng() % num_qubits),
                          static_cast<int>(rng() % num_clbits));
        } else if (kind < 93) {
            c.add_reset(static_cast<int>(rng() % num_qubits));
        } else {
            std::vector<int> qs{static_cast<int>(rng() % num_qubits)};
            if (num_qubits >= 2) {
                int b = static_cast<int>(rng() % (num_qubits - 1));
                if (b >= qs[0]) ++b;
                qs.push_back(b);
            }
            c.add_barrier(qs);
        }
    }
    return c;
}

/// Random connected region of `width` qubits on a coupling map.
inline std::vector<int> random_region(const CouplingMap& cm, std::mt19937_64& rng, int width) {
    const auto adj = cm.undirected_adjacency();
    std::vector<int> region;
    std::vector<char> chosen(cm.num_qubits, 0);
    int start = static_cast<int>(rng() % cm.num_qubits);
    region.push_back(start);
    chosen[start] = 1;
    while (static_cast<int>(region.size()) < width) {
        std::vector<int> frontier;
        for (int u : region)
            for (int v : adj[u])
                if (!chosen[v]) frontier.push_back(v);
        if (frontier.empty()) break;
        int v = frontier[rng() % frontier.size()];
        region.push_back(v);
        chosen[v] = 1;
    }
    return region;
}

/// Random routed circuit: all two-qubit gates lie on coupling-map edges
/// inside one connected region; region qubits get 1q gates and final
/// measurements (basis x/sx/rz/cx, the synthetic-calibration gate set).
inline QuantumCircuit random_routed_circuit(const CouplingMap& cm, std::mt19937_64& rng,
                                            int width, int num_gates, bool with_measures = true) {
    const auto region = random_region(cm, rng, width);
    const auto adj = cm.undirected_adjacency();
    std::vector<char> in_region(cm.num_qubits, 0);
    for (int q : region) in_region[q] = 1;
    std::vector<std::pair<int, int>> region_edges;
    for (int u : region)
        for (int v : adj[u])
            if (in_region[v]) region_edges.push_back({u, v});

    QuantumCircuit c;
    c.num_qubits = cm.num_qubits;
    c.num_clbits = with_measures ? static_cast<int>(region.size()) : 0;
    const char* one_q[] = {"x", "sx", "rz"};
    std::uniform_real_distribution<double> angle(-3.14159, 3.14159);
    for (int i = 0; i < num_gates; ++i) {
        if (!region_edges.empty() && rng() % 3 != 0) {
            auto [a, b] = region_edges[rng() % region_edges.size()];
            c.add_gate("cx", {a, b});
        } else {
            const char* name = one_q[rng() % std::size(one_q)];
            std::vector<double> params;
            if (std::string(name) == "rz") params.push_back(angle(rng));
            c.add_gate(name, {region[rng() % region.size()]}, params);
        }
    }
    if (with_measures)
        for (size_t i = 0; i < region.size(); ++i)
            c.add_measure(region[i], static_cast<int>(i));
    return c;
}

}  // namespace laymat::test
