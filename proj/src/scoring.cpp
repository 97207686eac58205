#include "laymat/scoring.hpp"

#include <algorithm>
#include <cmath>

namespace laymat {

namespace {

std::vector<int> mapped_qubits(const Instruction& in, const Layout& layout) {
    std::vector<int> phys;
    phys.reserve(in.qubits.size());
    for (int q : in.qubits) {
        if (q < 0 || q >= static_cast<int>(layout.phys_of_virtual.size()) ||
            layout.phys_of_virtual[q] < 0)
            throw SchemaError("layout does not cover virtual qubit " + std::to_string(q));
        phys.push_back(layout.phys_of_virtual[q]);
    }
    return phys;
}

}  // namespace

double score_default(const QuantumCircuit& c, const Layout& layout, const ErrorMap& em) {
    double fidelity = 1.0;
    for (const auto& in : c.instructions) {
        if (in.kind == InstructionKind::Barrier) continue;
        fidelity *= 1.0 - em.instruction_error(in, mapped_qubits(in, layout));
    }
    return 1.0 - fidelity;
}

double score_with_idle(const QuantumCircuit& c, const Layout& layout, const ErrorMap& em,
                       const CalibrationSnapshot& snap) {
    double fidelity = 1.0;
    // as-soon-as-possible schedule; barriers carry no time or error
    std::vector<double> ready(c.num_qubits, 0.0);
    std::vector<char> seen(c.num_qubits, 0);
    for (const auto& in : c.instructions) {
        if (in.kind == InstructionKind::Barrier) continue;
        const auto phys = mapped_qubits(in, layout);
        fidelity *= 1.0 - em.instruction_error(in, phys);

        double start = 0.0;
        for (int q : in.qubits) start = std::max(start, ready[q]);
        for (size_t i = 0; i < in.qubits.size(); ++i) {
            const int q = in.qubits[i];
            const int p = phys[i];
            const double gap = start - ready[q];
            if (seen[q] && gap > 0.0) {
                if (p >= static_cast<int>(snap.qubits.size()))
                    throw CalibrationLookupError("no t1/t2 data for physical qubit " +
                                                 std::to_string(p));
                const auto& qc = snap.qubits[p];
                fidelity *= 1.0 - idle_error(qc.t1(), qc.t2(), gap);
            }
        }
        const double duration = snap.duration(in.name, phys);
        for (int q : in.qubits) {
            ready[q] = start + duration;
            seen[q] = 1;
        }
    }
    return 1.0 - fidelity;
}

const CostFunction& builtin_cost(const std::string& name) {
    static const CostFunction default_cost{
        "default",
        [](const QuantumCircuit& c, const Layout& l, const ErrorMap& em,
           const CalibrationSnapshot*) { return score_default(c, l, em); }};
    static const CostFunction idle_cost{
        "idle", [](const QuantumCircuit& c, const Layout& l, const ErrorMap& em,
                   const CalibrationSnapshot* snap) {
            if (!snap)
                throw SchemaError("the idle cost function requires a calibration snapshot");
            return score_with_idle(c, l, em, *snap);
        }};
    if (name == "default") return default_cost;
    if (name == "idle") return idle_cost;
    throw SchemaError("unknown cost function '" + name + "' (expected default|idle)");
}

std::vector<ScoredLayout> rank_layouts(const QuantumCircuit& c, const std::vector<Layout>& layouts,
                                       const CostFunction& cost, const ErrorMap& em,
                                       const CalibrationSnapshot* snap, double tol) {
    if (tol < 0.0) throw SchemaError("ranking tolerance must be nonnegative");
    std::vector<ScoredLayout> scored;
    scored.reserve(layouts.size());
    for (const auto& l : layouts) {
        const double s = cost.fn(c, l, em, snap);
        scored.push_back({l, s, 1.0 - s, 1});
    }
    std::sort(scored.begin(), scored.end(), [](const ScoredLayout& a, const ScoredLayout& b) {
        return a.score != b.score ? a.score < b.score : a.layout < b.layout;
    });
    // group ties anchored at each group's lowest score, then order the group
    // lexicographically by mapping
    size_t start = 0;
    while (start < scored.size()) {
        size_t end = start + 1;
        while (end < scored.size() && scored[end].score - scored[start].score <= tol) ++end;
        std::sort(scored.begin() + start, scored.begin() + end,
                  [](const ScoredLayout& a, const ScoredLayout& b) { return a.layout < b.layout; });
        for (size_t i = start; i < end; ++i) scored[i].tied_with = static_cast<int>(end - start);
        start = end;
    }
    return scored;
}

double recoverable_fraction(double f, double f_base) {
    if (!(f >= 0.0 && f <= 1.0) || !(f_base >= 0.0 && f_base <= 1.0))
        throw SchemaError("fidelities must lie in [0,1]");
    if (f_base == 1.0) throw SchemaError("baseline fidelity 1 leaves nothing to recover");
    return (f - f_base) / (1.0 - f_base);
}

}  // namespace laymat
