#pragma once

#include <functional>
#include <string>
#include <vector>

#include "laymat/calibration.hpp"
#include "laymat/subiso.hpp"

namespace laymat {

/// A layout with its estimated circuit error. Lower scores are better;
/// score = 1 - prod(1 - e_i) over the scored instruction errors, so the
/// fidelity estimate is loosely an upper bound on real performance.
struct ScoredLayout {
    Layout layout;
    double score = 0.0;
    double fidelity_estimate = 1.0;
    /// Number of layouts (including this one) whose scores fall within the
    /// ranking tolerance of each other.
    int tied_with = 1;

    bool operator==(const ScoredLayout&) const = default;
};

/// Pluggable layout cost: any deterministic callable mapping a circuit,
/// layout, error map and (optionally) calibration snapshot to a score in
/// [0,1]. The snapshot pointer is null for costs that do not need timing or
/// coherence data.
struct CostFunction {
    std::string name;
    std::function<double(const QuantumCircuit&, const Layout&, const ErrorMap&,
                         const CalibrationSnapshot*)>
        fn;
};

/// Built-in cost functions selectable by CLI name: "default" (instruction
/// fidelity product) and "idle" (adds T1/T2 idle-time factors).
const CostFunction& builtin_cost(const std::string& name);

/// 1 - prod over non-barrier instructions of (1 - error at mapped location).
/// Measures use the mapped qubit's readout error. Strict-mode lookup misses
/// propagate as CalibrationLookupError.
double score_default(const QuantumCircuit& c, const Layout& layout, const ErrorMap& em);

/// As score_default, additionally multiplying in (1 - idle_error(t1,t2,gap))
/// for every idle gap between a qubit's consecutive instructions under an
/// as-soon-as-possible schedule built from calibrated durations. Never
/// smaller than score_default.
double score_with_idle(const QuantumCircuit& c, const Layout& layout, const ErrorMap& em,
                       const CalibrationSnapshot& snap);

/// Scores every layout and sorts ascending. Layouts whose scores lie within
/// `tol` of the group head are marked tied and ordered among themselves by
/// lexicographic physical-qubit tuple, making the full order deterministic.
std::vector<ScoredLayout> rank_layouts(const QuantumCircuit& c, const std::vector<Layout>& layouts,
                                       const CostFunction& cost, const ErrorMap& em,
                                       const CalibrationSnapshot* snap, double tol = 1e-10);

/// Fraction of the fidelity missing from a baseline that a comparison run
/// recovered: (f - f_base) / (1 - f_base). Negative when the comparison
/// degraded the result.
double recoverable_fraction(double f, double f_base);

}  // namespace laymat
