#pragma once

#include <string>
#include <vector>

#include "laymat/scoring.hpp"

namespace laymat {

/// One target device: topology plus the calibration used to score layouts.
struct DeviceCandidate {
    std::string name;
    CouplingMap coupling_map;
    CalibrationSnapshot calibration;
};

/// Loads `{"name":...,"coupling_map":{...},"calibration":{...}}` and checks
/// that the calibration covers the map and references only its qubits/edges.
DeviceCandidate device_from_json(const std::string& text);

struct DeviceReport {
    std::string device;
    bool skipped = false;
    std::string skip_reason;
    ScoredLayout best;  // meaningful only when !skipped
    bool exhausted = true;
    long long visits_used = 0;
    long long layout_count = 0;
};

/// Fleet-wide outcome. The winner minimizes score over all non-skipped
/// devices; score ties go to the earliest device in fleet order.
struct SelectionReport {
    std::vector<DeviceReport> devices;
    int winner_index = -1;

    const DeviceReport& winner() const;
};

std::string selection_report_to_json(const SelectionReport& report);

/// Lowest-scoring embedding of the circuit into one device: the head of
/// rank_layouts over find_embeddings. Throws NoEmbeddingError when the
/// circuit does not embed (carrying whether the search was exhausted or
/// merely ran out of budget).
ScoredLayout best_layout(const QuantumCircuit& c, const DeviceCandidate& device, MatchMode mode,
                         const CostFunction& cost, SearchBudget budget = {},
                         NodeOrdering ordering = NodeOrdering::Vf2pp, double tol = 1e-10);

/// Scores the circuit across a fleet. Devices with no embedding are skipped;
/// embeddings are reused across devices whose coupling maps are identical
/// (same edge set, and in strict mode the same instruction availability).
SelectionReport select_device(const QuantumCircuit& c, const std::vector<DeviceCandidate>& fleet,
                              MatchMode mode, const CostFunction& cost, SearchBudget budget = {},
                              NodeOrdering ordering = NodeOrdering::Vf2pp, double tol = 1e-10);

/// Rewrites the circuit onto physical qubits: instruction order, names,
/// params and clbits are untouched; qubit operands go through the layout;
/// declared-but-idle wires are assigned the unused physical qubits in
/// ascending order; the result is padded to the device width.
QuantumCircuit remap(const QuantumCircuit& c, const Layout& layout);

}  // namespace laymat
