#include "laymat/coupling_map.hpp"

#include <algorithm>

#include <json.hpp>

namespace laymat {

bool CouplingMap::supports(const std::string& name, const std::vector<int>& qubits) const {
    for (int q : qubits)
        if (q < 0 || q >= num_qubits) return false;
    if (qubits.size() == 2 && !has_edge(qubits[0], qubits[1])) return false;
    if (!has_op_data()) return true;
    auto it = supported_ops.find(name);
    return it != supported_ops.end() && it->second.count(qubits) != 0;
}

std::vector<std::vector<int>> CouplingMap::undirected_adjacency() const {
    std::vector<std::set<int>> nbrs(num_qubits);
    for (auto [a, b] : edges) {
        nbrs[a].insert(b);
        nbrs[b].insert(a);
    }
    std::vector<std::vector<int>> adj(num_qubits);
    for (int i = 0; i < num_qubits; ++i) adj[i].assign(nbrs[i].begin(), nbrs[i].end());
    return adj;
}

CouplingMap undirected_view(const CouplingMap& cm) {
    CouplingMap out;
    out.num_qubits = cm.num_qubits;
    for (auto [a, b] : cm.edges) {
        out.edges.insert({a, b});
        out.edges.insert({b, a});
    }
    for (const auto& [name, tuples] : cm.supported_ops) {
        auto& out_tuples = out.supported_ops[name];
        for (const auto& t : tuples) {
            out_tuples.insert(t);
            if (t.size() == 2) out_tuples.insert({t[1], t[0]});
        }
    }
    return out;
}

CouplingMap heavy_hex(int distance) {
    const int d = distance;
    if (d < 2 || (d > 2 && d % 2 == 0))
        throw SchemaError("invalid heavy-hex distance " + std::to_string(d) +
                          " (expected 2 or an odd value >= 3)");

    // Rows alternate data and flag qubits: data(r,0) flag(r,0) data(r,1) ...
    // data(r,d-1). Syndrome qubits form the vertical hexagon edges: between
    // rows g and g+1 they join flag(g,c) to flag(g+1,c) at flag columns with
    // c == g (mod 2); on the top and bottom boundary rows (odd d only) they
    // join the two data qubits flanking the remaining flag columns.
    CouplingMap cm;
    std::vector<std::vector<int>> row_node(d, std::vector<int>(2 * d - 1, -1));
    auto add_edge = [&cm](int a, int b) {
        cm.edges.insert({a, b});
        cm.edges.insert({b, a});
    };

    int id = 0;
    std::vector<int> top_syndrome(std::max(0, d - 1), -1);
    if (d % 2 == 1)
        for (int c = 1; c < d - 1; c += 2) top_syndrome[c] = id++;

    std::vector<std::vector<int>> gap_syndrome(std::max(0, d - 1),
                                               std::vector<int>(std::max(0, d - 1), -1));
    for (int r = 0; r < d; ++r) {
        for (int k = 0; k < 2 * d - 1; ++k) row_node[r][k] = id++;
        if (r < d - 1)
            for (int c = r % 2; c < d - 1; c += 2) gap_syndrome[r][c] = id++;
    }

    std::vector<int> bottom_syndrome(std::max(0, d - 1), -1);
    if (d % 2 == 1)
        for (int c = 0; c < d - 1; c += 2) bottom_syndrome[c] = id++;

    cm.num_qubits = id;

    auto data = [&](int r, int c) { return row_node[r][2 * c]; };
    auto flag = [&](int r, int c) { return row_node[r][2 * c + 1]; };

    for (int r = 0; r < d; ++r)
        for (int k = 0; k + 1 < 2 * d - 1; ++k) add_edge(row_node[r][k], row_node[r][k + 1]);
    for (int g = 0; g + 1 < d; ++g)
        for (int c = 0; c < d - 1; ++c)
            if (gap_syndrome[g][c] >= 0) {
                add_edge(flag(g, c), gap_syndrome[g][c]);
                add_edge(gap_syndrome[g][c], flag(g + 1, c));
            }
    for (int c = 0; c < d - 1; ++c) {
        if (top_syndrome[c] >= 0) {
            add_edge(data(0, c), top_syndrome[c]);
            add_edge(top_syndrome[c], data(0, c + 1));
        }
        if (bottom_syndrome[c] >= 0) {
            add_edge(data(d - 1, c), bottom_syndrome[c]);
            add_edge(bottom_syndrome[c], data(d - 1, c + 1));
        }
    }
    return cm;
}

namespace {

void validate_map(const CouplingMap& cm) {
    if (cm.num_qubits < 0) throw SchemaError("num_qubits must be nonnegative");
    for (auto [a, b] : cm.edges) {
        if (a == b) throw SchemaError("self-loop edge on qubit " + std::to_string(a));
        if (a < 0 || b < 0 || a >= cm.num_qubits || b >= cm.num_qubits)
            throw SchemaError("edge [" + std::to_string(a) + "," + std::to_string(b) +
                              "] references a qubit outside num_qubits=" +
                              std::to_string(cm.num_qubits));
    }
    for (const auto& [name, tuples] : cm.supported_ops) {
        for (const auto& t : tuples) {
            if (t.empty() || t.size() > 2)
                throw SchemaError("supported op '" + name + "' has a tuple of arity " +
                                  std::to_string(t.size()));
            for (int q : t)
                if (q < 0 || q >= cm.num_qubits)
                    throw SchemaError("supported op '" + name + "' references qubit " +
                                      std::to_string(q) + " outside the map");
            if (t.size() == 2 && !cm.has_edge(t[0], t[1]))
                throw SchemaError("supported op '" + name + "' on non-edge [" +
                                  std::to_string(t[0]) + "," + std::to_string(t[1]) + "]");
        }
    }
}

}  // namespace

CouplingMap coupling_map_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("invalid coupling-map JSON: ") + e.what());
    }
    CouplingMap cm;
    try {
        cm.num_qubits = j.at("num_qubits").get<int>();
        for (const auto& e : j.at("edges")) {
            auto pair = e.get<std::vector<int>>();
            if (pair.size() != 2) throw SchemaError("edge entries must be [a,b] pairs");
            cm.edges.insert({pair[0], pair[1]});
        }
        if (j.contains("supported_ops"))
            for (const auto& [name, tuples] : j["supported_ops"].items())
                for (const auto& t : tuples)
                    cm.supported_ops[name].insert(t.get<std::vector<int>>());
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("coupling-map schema violation: ") + e.what());
    }
    validate_map(cm);
    return cm;
}

std::string coupling_map_to_json(const CouplingMap& cm) {
    nlohmann::json j;
    j["num_qubits"] = cm.num_qubits;
    auto& edges = j["edges"] = nlohmann::json::array();
    for (auto [a, b] : cm.edges) edges.push_back({a, b});
    if (cm.has_op_data()) {
        auto& ops = j["supported_ops"] = nlohmann::json::object();
        for (const auto& [name, tuples] : cm.supported_ops) {
            auto& arr = ops[name] = nlohmann::json::array();
            for (const auto& t : tuples) arr.push_back(t);
        }
    }
    return j.dump(2) + "\n";
}

}  // namespace laymat
