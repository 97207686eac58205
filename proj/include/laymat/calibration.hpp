#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "laymat/circuit.hpp"
#include "laymat/coupling_map.hpp"
#include "laymat/interaction_graph.hpp"

namespace laymat {

/// Per-qubit calibration record. Times are stored in the interchange units
/// (microseconds) so snapshots round-trip exactly; accessors convert to
/// seconds for computation.
struct QubitCalibration {
    double t1_us = 0.0;
    double t2_us = 0.0;
    double readout_error = 0.0;

    double t1() const { return t1_us * 1e-6; }
    double t2() const { return t2_us * 1e-6; }

    bool operator==(const QubitCalibration&) const = default;
};

struct GateCalibration {
    std::string name;
    std::vector<int> qubits;
    double error = 0.0;
    double duration_ns = 0.0;

    double duration() const { return duration_ns * 1e-9; }

    bool operator==(const GateCalibration&) const = default;
};

/// One device calibration. Timestamps are carried verbatim and never
/// interpreted. `warnings` collects soft violations found at load time
/// (currently t2 > 2*t1, which real data can exhibit).
struct CalibrationSnapshot {
    std::string device_name;
    std::string timestamp;
    std::vector<QubitCalibration> qubits;
    std::vector<GateCalibration> gates;
    std::vector<std::string> warnings;

    /// Duration in seconds of the named instruction on the given physical
    /// qubits; throws CalibrationLookupError when no entry exists.
    double duration(const std::string& name, const std::vector<int>& qubits) const;

    double average_readout_error() const;

    bool operator==(const CalibrationSnapshot& o) const {
        return device_name == o.device_name && timestamp == o.timestamp && qubits == o.qubits &&
               gates == o.gates;
    }
};

CalibrationSnapshot calibration_from_json(const std::string& text);
std::string calibration_to_json(const CalibrationSnapshot& snap);

/// Maps physical instructions to error rates. Strict mode answers from exact
/// per-instruction calibration entries and throws on a miss; loose mode
/// answers gate lookups with the per-arity mean over all gate entries (reset
/// with the mean over reset entries), so any layout is scoreable. Readout is
/// always per qubit, with missing values defaulted to the device average.
class ErrorMap {
public:
    ErrorMap(const CalibrationSnapshot& snap, MatchMode mode);

    MatchMode mode() const { return mode_; }

    double gate_error(const std::string& name, const std::vector<int>& qubits) const;
    double readout_error(int qubit) const;
    double reset_error(int qubit) const;

    /// Error of one circuit instruction placed on physical qubits `phys`.
    /// Barriers score 0.
    double instruction_error(const Instruction& in, const std::vector<int>& phys) const;

    /// Arithmetic mean of all gate entries of the given arity (1 or 2).
    double average_error(int arity) const;

private:
    MatchMode mode_;
    std::map<std::pair<std::string, std::vector<int>>, double> exact_;
    std::vector<double> readout_;
    double average_[3] = {0.0, 0.0, 0.0};
    double average_reset_ = 0.0;
};

/// Probability that an idle qubit decays over `dt` seconds:
///   1 - (exp(-dt/t1) + 2*exp(-dt/t2eff)) / 3,  t2eff = min(t2, 2*t1),
/// clamped to [0,1]. Zero at dt = 0, monotone to 1 as dt grows.
double idle_error(double t1, double t2, double dt);

/// Synthetic calibration profiles for tests and demos: `Uniform` gives every
/// instruction class one error rate, `Gradient` makes low-numbered qubits
/// strictly better, `Hotspot` degrades exactly one (seed-chosen) edge.
enum class CalibrationProfile { Uniform, Gradient, Hotspot };

CalibrationSnapshot synth_calibration(const CouplingMap& cm, std::uint64_t seed,
                                      CalibrationProfile profile);

}  // namespace laymat
