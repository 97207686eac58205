#include "laymat/selector.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include <json.hpp>

#include "laymat/interaction_graph.hpp"

namespace laymat {

namespace {

void validate_device(const DeviceCandidate& dev) {
    const auto& cm = dev.coupling_map;
    const auto& cal = dev.calibration;
    if (static_cast<int>(cal.qubits.size()) != cm.num_qubits)
        throw SchemaError("device '" + dev.name + "': calibration covers " +
                          std::to_string(cal.qubits.size()) + " qubits but the map has " +
                          std::to_string(cm.num_qubits));
    for (const auto& g : cal.gates) {
        for (int q : g.qubits)
            if (q < 0 || q >= cm.num_qubits)
                throw SchemaError("device '" + dev.name + "': calibration entry for " + g.name +
                                  " references qubit " + std::to_string(q) +
                                  " outside the coupling map");
        if (g.qubits.size() == 2 && !cm.has_edge(g.qubits[0], g.qubits[1]))
            throw SchemaError("device '" + dev.name + "': calibration entry for " + g.name +
                              " on [" + std::to_string(g.qubits[0]) + "," +
                              std::to_string(g.qubits[1]) + "] is not a coupling-map edge");
    }
}

}  // namespace

DeviceCandidate device_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("invalid device JSON: ") + e.what());
    }
    DeviceCandidate dev;
    try {
        dev.name = j.value("name", "device");
        dev.coupling_map = coupling_map_from_json(j.at("coupling_map").dump());
        dev.calibration = calibration_from_json(j.at("calibration").dump());
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("device schema violation: ") + e.what());
    }
    validate_device(dev);
    return dev;
}

const DeviceReport& SelectionReport::winner() const {
    if (winner_index < 0 || winner_index >= static_cast<int>(devices.size()))
        throw Error("selection report has no winner");
    return devices[winner_index];
}

ScoredLayout best_layout(const QuantumCircuit& c, const DeviceCandidate& device, MatchMode mode,
                         const CostFunction& cost, SearchBudget budget, NodeOrdering ordering,
                         double tol) {
    const InteractionGraph pattern = build_interaction_graph(c, mode);
    const SearchResult result = find_embeddings(pattern, device.coupling_map, mode, ordering, budget);
    if (result.layouts.empty())
        throw NoEmbeddingError("circuit does not embed into device '" + device.name + "'" +
                                   (result.exhausted ? "" : " (search budget exhausted first)"),
                               result.exhausted);
    const ErrorMap em(device.calibration, mode);
    return rank_layouts(c, result.layouts, cost, em, &device.calibration, tol).front();
}

SelectionReport select_device(const QuantumCircuit& c, const std::vector<DeviceCandidate>& fleet,
                              MatchMode mode, const CostFunction& cost, SearchBudget budget,
                              NodeOrdering ordering, double tol) {
    if (fleet.empty()) throw SchemaError("select_device requires a non-empty fleet");

    const InteractionGraph pattern = build_interaction_graph(c, mode);

    // Devices sharing a topology share their embedding set. Loose mode keys
    // on the undirected edge set; strict mode additionally keys on the
    // instruction-availability data the search filters against.
    using TopologyKey =
        std::tuple<int, std::set<std::pair<int, int>>,
                   std::map<std::string, std::set<std::vector<int>>>>;
    std::map<TopologyKey, SearchResult> embedding_cache;

    SelectionReport report;
    double best_score = 0.0;
    for (const auto& dev : fleet) {
        const CouplingMap matched =
            mode == MatchMode::Loose ? undirected_view(dev.coupling_map) : dev.coupling_map;
        TopologyKey key{matched.num_qubits, matched.edges,
                        mode == MatchMode::Strict ? matched.supported_ops
                                                  : decltype(matched.supported_ops){}};
        auto it = embedding_cache.find(key);
        if (it == embedding_cache.end())
            it = embedding_cache
                     .emplace(std::move(key),
                              find_embeddings(pattern, dev.coupling_map, mode, ordering, budget))
                     .first;
        const SearchResult& result = it->second;

        DeviceReport dr;
        dr.device = dev.name;
        dr.exhausted = result.exhausted;
        dr.visits_used = result.visits_used;
        dr.layout_count = static_cast<long long>(result.layouts.size());
        if (result.layouts.empty()) {
            dr.skipped = true;
            dr.skip_reason = "insufficient embedding";
        } else {
            const ErrorMap em(dev.calibration, mode);
            dr.best = rank_layouts(c, result.layouts, cost, em, &dev.calibration, tol).front();
        }
        report.devices.push_back(std::move(dr));

        const auto& added = report.devices.back();
        if (!added.skipped &&
            (report.winner_index < 0 || added.best.score < best_score)) {
            report.winner_index = static_cast<int>(report.devices.size()) - 1;
            best_score = added.best.score;
        }
    }
    if (report.winner_index < 0)
        throw NoEmbeddingError("circuit does not embed into any device in the fleet", true);
    return report;
}

QuantumCircuit remap(const QuantumCircuit& c, const Layout& layout) {
    if (static_cast<int>(layout.phys_of_virtual.size()) != c.num_qubits)
        throw SchemaError("layout is over " + std::to_string(layout.phys_of_virtual.size()) +
                          " virtual qubits but the circuit declares " +
                          std::to_string(c.num_qubits));

    std::vector<int> assignment = layout.phys_of_virtual;
    std::vector<char> used(layout.num_physical, 0);
    for (int p : assignment)
        if (p >= 0) {
            if (p >= layout.num_physical)
                throw SchemaError("layout maps outside the target device");
            used[p] = 1;
        }
    // complete idle declared wires onto unused physical qubits, ascending
    int next_free = 0;
    for (int q = 0; q < c.num_qubits; ++q) {
        if (assignment[q] >= 0) continue;
        while (next_free < layout.num_physical && used[next_free]) ++next_free;
        if (next_free >= layout.num_physical)
            throw SchemaError("device too small to place idle wires");
        assignment[q] = next_free;
        used[next_free] = 1;
    }

    QuantumCircuit out;
    out.num_qubits = layout.num_physical;
    out.num_clbits = c.num_clbits;
    out.instructions = c.instructions;
    for (auto& in : out.instructions)
        for (int& q : in.qubits) q = assignment[q];
    return out;
}

std::string selection_report_to_json(const SelectionReport& report) {
    nlohmann::json j;
    auto& devices = j["devices"] = nlohmann::json::array();
    for (const auto& dr : report.devices) {
        nlohmann::json jd;
        jd["device"] = dr.device;
        jd["exhausted"] = dr.exhausted;
        jd["visits_used"] = dr.visits_used;
        if (dr.skipped) {
            jd["status"] = "skipped";
            jd["reason"] = dr.skip_reason;
        } else {
            jd["status"] = "ok";
            jd["layout_count"] = dr.layout_count;
            jd["best"] = {{"mapping", dr.best.layout.phys_of_virtual},
                          {"score", dr.best.score},
                          {"fidelity_estimate", dr.best.fidelity_estimate},
                          {"tied_with", dr.best.tied_with}};
        }
        devices.push_back(std::move(jd));
    }
    if (report.winner_index >= 0) {
        const auto& w = report.winner();
        j["winner"] = {{"device", w.device},
                       {"mapping", w.best.layout.phys_of_virtual},
                       {"score", w.best.score}};
    }
    return j.dump(2) + "\n";
}

}  // namespace laymat
