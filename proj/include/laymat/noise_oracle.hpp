#pragma once

#include <cstdint>

#include "laymat/calibration.hpp"
#include "laymat/circuit.hpp"

namespace laymat {

/// Stochastic noise description for a circuit already expressed on physical
/// qubits: one depolarizing probability per instruction (index-aligned with
/// the circuit) and one readout flip probability per measured qubit.
struct NoiseModel {
    std::vector<double> instruction_error;
    std::vector<double> readout_flip;
    std::uint64_t seed = 0;
};

/// Derives the noise model for `c` from an error map: gates and resets get
/// their per-instruction depolarizing probability, measures get the mapped
/// qubit's readout flip. `c` must reference the same physical qubits the
/// error map was built for.
NoiseModel noise_model_for(const QuantumCircuit& c, const ErrorMap& em, std::uint64_t seed);

struct FidelityEstimate {
    /// Overlap sum(sqrt(p_x * q_x)) of the noisy and ideal output histograms.
    double fidelity = 0.0;
    double std_error = 0.0;
    long long shots = 0;
};

/// Monte-Carlo trajectory estimate of execution fidelity: every instruction
/// is applied ideally on a dense state vector and, with its depolarizing
/// probability, followed by a uniformly random Pauli on its qubits; readout
/// flips land on recorded bits. The ideal reference histogram is sampled
/// with the same per-trajectory random streams, so zero noise yields
/// fidelity 1.0 exactly and estimates are seed-deterministic regardless of
/// worker count. Restricted to circuits with at most 10 active qubits and at
/// least one measurement.
FidelityEstimate simulate_fidelity(const QuantumCircuit& c, const NoiseModel& noise,
                                   long long shots);

}  // namespace laymat
