#include "laymat/noise_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <thread>

namespace laymat {

NoiseModel noise_model_for(const QuantumCircuit& c, const ErrorMap& em, std::uint64_t seed) {
    NoiseModel nm;
    nm.seed = seed;
    nm.instruction_error.reserve(c.instructions.size());
    nm.readout_flip.assign(c.num_qubits, 0.0);
    for (const auto& in : c.instructions) {
        switch (in.kind) {
            case InstructionKind::Barrier:
                nm.instruction_error.push_back(0.0);
                break;
            case InstructionKind::Measure:
                // modeled as a classical flip on the recorded bit, not a Pauli
                nm.instruction_error.push_back(0.0);
                nm.readout_flip[in.qubits[0]] = em.readout_error(in.qubits[0]);
                break;
            default:
                nm.instruction_error.push_back(em.instruction_error(in, in.qubits));
                break;
        }
    }
    return nm;
}

namespace {

using cplx = std::complex<double>;

constexpr double kInvSqrt2 = 0.70710678118654752440;

struct StateVector {
    int num_qubits;
    std::vector<cplx> amp;

    explicit StateVector(int n) : num_qubits(n), amp(size_t{1} << n, cplx{0.0, 0.0}) {
        amp[0] = 1.0;
    }

    void reset_to_zero() {
        std::fill(amp.begin(), amp.end(), cplx{0.0, 0.0});
        amp[0] = 1.0;
    }

    void apply_1q(int t, cplx m00, cplx m01, cplx m10, cplx m11) {
        const size_t bit = size_t{1} << t;
        for (size_t i = 0; i < amp.size(); ++i) {
            if (i & bit) continue;
            const cplx a0 = amp[i];
            const cplx a1 = amp[i | bit];
            amp[i] = m00 * a0 + m01 * a1;
            amp[i | bit] = m10 * a0 + m11 * a1;
        }
    }

    void apply_diag_1q(int t, cplx d0, cplx d1) {
        const size_t bit = size_t{1} << t;
        for (size_t i = 0; i < amp.size(); ++i) amp[i] *= (i & bit) ? d1 : d0;
    }

    void apply_x(int t) {
        const size_t bit = size_t{1} << t;
        for (size_t i = 0; i < amp.size(); ++i)
            if (!(i & bit)) std::swap(amp[i], amp[i | bit]);
    }

    void apply_y(int t) { apply_1q(t, 0.0, cplx{0.0, -1.0}, cplx{0.0, 1.0}, 0.0); }

    void apply_z(int t) { apply_diag_1q(t, 1.0, -1.0); }

    void apply_cx(int ctrl, int t) {
        const size_t cb = size_t{1} << ctrl;
        const size_t tb = size_t{1} << t;
        for (size_t i = 0; i < amp.size(); ++i)
            if ((i & cb) && !(i & tb)) std::swap(amp[i], amp[i | tb]);
    }

    void apply_swap(int a, int b) {
        const size_t ab = size_t{1} << a;
        const size_t bb = size_t{1} << b;
        for (size_t i = 0; i < amp.size(); ++i)
            if ((i & ab) && !(i & bb)) std::swap(amp[i], amp[(i & ~ab) | bb]);
    }

    void apply_diag_2q(int a, int b, cplx d00, cplx d01, cplx d10, cplx d11) {
        const size_t ab = size_t{1} << a;
        const size_t bb = size_t{1} << b;
        for (size_t i = 0; i < amp.size(); ++i) {
            const bool ba = (i & ab) != 0;
            const bool bbit = (i & bb) != 0;
            amp[i] *= ba ? (bbit ? d11 : d10) : (bbit ? d01 : d00);
        }
    }

    double prob_one(int t) const {
        const size_t bit = size_t{1} << t;
        double p = 0.0;
        for (size_t i = 0; i < amp.size(); ++i)
            if (i & bit) p += std::norm(amp[i]);
        return p;
    }

    // projects qubit t to `outcome` and renormalizes
    void collapse(int t, int outcome, double prob) {
        const size_t bit = size_t{1} << t;
        const double norm = std::sqrt(std::max(prob, 1e-300));
        for (size_t i = 0; i < amp.size(); ++i) {
            const bool one = (i & bit) != 0;
            if (one == (outcome == 1))
                amp[i] /= norm;
            else
                amp[i] = 0.0;
        }
    }
};

struct Rng {
    std::mt19937_64 gen;
    Rng(std::uint64_t seed, std::uint64_t shot, std::uint64_t stream) {
        std::seed_seq seq{static_cast<unsigned>(seed), static_cast<unsigned>(seed >> 32),
                          static_cast<unsigned>(shot), static_cast<unsigned>(shot >> 32),
                          static_cast<unsigned>(stream)};
        gen.seed(seq);
    }
    double uniform() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
    std::uint64_t bits() { return gen(); }
};

void apply_gate(StateVector& sv, const Instruction& in, const std::vector<int>& local) {
    const auto& p = in.params;
    auto need_params = [&](size_t n) {
        if (p.size() != n)
            throw SimulationError("gate '" + in.name + "' expects " + std::to_string(n) +
                                  " parameter(s)");
    };
    const std::string& g = in.name;
    if (g == "id") return;
    if (g == "x") return sv.apply_x(local[0]);
    if (g == "y") return sv.apply_y(local[0]);
    if (g == "z") return sv.apply_z(local[0]);
    if (g == "h")
        return sv.apply_1q(local[0], kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2);
    if (g == "s") return sv.apply_diag_1q(local[0], 1.0, cplx{0.0, 1.0});
    if (g == "sdg") return sv.apply_diag_1q(local[0], 1.0, cplx{0.0, -1.0});
    if (g == "t") return sv.apply_diag_1q(local[0], 1.0, std::polar(1.0, M_PI / 4));
    if (g == "tdg") return sv.apply_diag_1q(local[0], 1.0, std::polar(1.0, -M_PI / 4));
    if (g == "sx")
        return sv.apply_1q(local[0], cplx{0.5, 0.5}, cplx{0.5, -0.5}, cplx{0.5, -0.5},
                           cplx{0.5, 0.5});
    if (g == "sxdg")
        return sv.apply_1q(local[0], cplx{0.5, -0.5}, cplx{0.5, 0.5}, cplx{0.5, 0.5},
                           cplx{0.5, -0.5});
    if (g == "rx") {
        need_params(1);
        const double h = p[0] / 2;
        return sv.apply_1q(local[0], std::cos(h), cplx{0.0, -std::sin(h)},
                           cplx{0.0, -std::sin(h)}, std::cos(h));
    }
    if (g == "ry") {
        need_params(1);
        const double h = p[0] / 2;
        return sv.apply_1q(local[0], std::cos(h), -std::sin(h), std::sin(h), std::cos(h));
    }
    if (g == "rz") {
        need_params(1);
        const double h = p[0] / 2;
        return sv.apply_diag_1q(local[0], std::polar(1.0, -h), std::polar(1.0, h));
    }
    if (g == "p" || g == "u1") {
        need_params(1);
        return sv.apply_diag_1q(local[0], 1.0, std::polar(1.0, p[0]));
    }
    if (g == "u2") {
        need_params(2);
        const double phi = p[0], lam = p[1];
        return sv.apply_1q(local[0], kInvSqrt2, -kInvSqrt2 * std::polar(1.0, lam),
                           kInvSqrt2 * std::polar(1.0, phi),
                           kInvSqrt2 * std::polar(1.0, phi + lam));
    }
    if (g == "u3") {
        need_params(3);
        const double th = p[0] / 2, phi = p[1], lam = p[2];
        return sv.apply_1q(local[0], std::cos(th), -std::sin(th) * std::polar(1.0, lam),
                           std::sin(th) * std::polar(1.0, phi),
                           std::cos(th) * std::polar(1.0, phi + lam));
    }
    if (g == "cx") return sv.apply_cx(local[0], local[1]);
    if (g == "cy") {
        // CY = (I ⊗ Sdg) CX (I ⊗ S) with control/target in circuit order
        sv.apply_diag_1q(local[1], 1.0, cplx{0.0, -1.0});
        sv.apply_cx(local[0], local[1]);
        sv.apply_diag_1q(local[1], 1.0, cplx{0.0, 1.0});
        return;
    }
    if (g == "cz") return sv.apply_diag_2q(local[0], local[1], 1.0, 1.0, 1.0, -1.0);
    if (g == "swap") return sv.apply_swap(local[0], local[1]);
    if (g == "rzz") {
        need_params(1);
        const cplx m = std::polar(1.0, -p[0] / 2);
        const cplx pl = std::polar(1.0, p[0] / 2);
        return sv.apply_diag_2q(local[0], local[1], m, pl, pl, m);
    }
    throw SimulationError("gate '" + g + "' is not supported by the noise oracle");
}

struct TrajectoryResult {
    std::map<std::uint64_t, long long> noisy;
    std::map<std::uint64_t, long long> ideal;
    // per-batch paired histograms for the dispersion estimate
    std::vector<std::map<std::uint64_t, long long>> noisy_batch;
    std::vector<std::map<std::uint64_t, long long>> ideal_batch;
};

// One trajectory. The measurement/collapse stream is shared between the
// ideal and noisy passes so that a zero-noise model reproduces the ideal
// samples bit for bit.
std::uint64_t run_trajectory(const QuantumCircuit& c, const std::vector<int>& local_of_qubit,
                             int active, const NoiseModel& noise, bool with_noise,
                             std::uint64_t seed, std::uint64_t shot) {
    StateVector sv(active);
    Rng collapse_rng(seed, shot, 0);
    Rng noise_rng(seed, shot, 1);
    std::uint64_t bits = 0;

    for (size_t idx = 0; idx < c.instructions.size(); ++idx) {
        const auto& in = c.instructions[idx];
        if (in.kind == InstructionKind::Barrier) continue;
        std::vector<int> local(in.qubits.size());
        for (size_t i = 0; i < in.qubits.size(); ++i) local[i] = local_of_qubit[in.qubits[i]];

        switch (in.kind) {
            case InstructionKind::Measure: {
                const double p1 = sv.prob_one(local[0]);
                const int outcome = collapse_rng.uniform() < p1 ? 1 : 0;
                sv.collapse(local[0], outcome, outcome ? p1 : 1.0 - p1);
                int recorded = outcome;
                if (with_noise && noise_rng.uniform() < noise.readout_flip[in.qubits[0]])
                    recorded ^= 1;
                else if (!with_noise)
                    noise_rng.uniform();  // keep streams aligned across passes
                if (recorded)
                    bits |= std::uint64_t{1} << in.clbits[0];
                else
                    bits &= ~(std::uint64_t{1} << in.clbits[0]);
                break;
            }
            case InstructionKind::Reset: {
                const double p1 = sv.prob_one(local[0]);
                const int outcome = collapse_rng.uniform() < p1 ? 1 : 0;
                sv.collapse(local[0], outcome, outcome ? p1 : 1.0 - p1);
                if (outcome) sv.apply_x(local[0]);
                break;
            }
            case InstructionKind::Gate:
                apply_gate(sv, in, local);
                break;
            case InstructionKind::Barrier:
                break;
        }

        const double e = noise.instruction_error[idx];
        if (in.kind != InstructionKind::Measure && e > 0.0) {
            const double coin = noise_rng.uniform();
            const std::uint64_t pauli_bits = noise_rng.bits();
            if (with_noise && coin < e) {
                for (size_t i = 0; i < local.size(); ++i) {
                    switch ((pauli_bits >> (2 * i)) & 3) {
                        case 1: sv.apply_x(local[i]); break;
                        case 2: sv.apply_y(local[i]); break;
                        case 3: sv.apply_z(local[i]); break;
                        default: break;
                    }
                }
            }
        }
    }
    return bits;
}

double bhattacharyya(const std::map<std::uint64_t, long long>& a,
                     const std::map<std::uint64_t, long long>& b, double na, double nb) {
    double overlap = 0.0;
    for (const auto& [key, count] : a) {
        auto it = b.find(key);
        if (it != b.end())
            overlap += std::sqrt((count / na) * (it->second / nb));
    }
    return std::min(overlap, 1.0);
}

}  // namespace

FidelityEstimate simulate_fidelity(const QuantumCircuit& c, const NoiseModel& noise,
                                   long long shots) {
    if (shots <= 0) throw SimulationError("shot count must be positive");
    if (noise.instruction_error.size() != c.instructions.size())
        throw SimulationError("noise model does not match the circuit instruction count");
    for (double e : noise.instruction_error)
        if (!(e >= 0.0 && e <= 1.0)) throw SimulationError("instruction error outside [0,1]");
    for (double e : noise.readout_flip)
        if (!(e >= 0.0 && e <= 1.0)) throw SimulationError("readout flip outside [0,1]");

    const auto active = c.active_qubits();
    if (active.size() > 10)
        throw SimulationError("noise oracle handles at most 10 active qubits, circuit has " +
                              std::to_string(active.size()));
    if (c.num_clbits > 63) throw SimulationError("noise oracle handles at most 63 clbits");
    bool has_measure = false;
    for (const auto& in : c.instructions) has_measure |= in.kind == InstructionKind::Measure;
    if (!has_measure)
        throw SimulationError("circuit has no measurements; output histogram would be empty");

    std::vector<int> local_of_qubit(c.num_qubits, -1);
    for (size_t i = 0; i < active.size(); ++i) local_of_qubit[active[i]] = static_cast<int>(i);

    const int num_batches = static_cast<int>(std::min<long long>(10, shots));
    TrajectoryResult total;
    total.noisy_batch.resize(num_batches);
    total.ideal_batch.resize(num_batches);

    const unsigned worker_hint = std::thread::hardware_concurrency();
    const int workers =
        shots >= 2000 ? static_cast<int>(std::clamp(worker_hint, 1u, 4u)) : 1;

    std::vector<TrajectoryResult> partial(workers);
    for (auto& p : partial) {
        p.noisy_batch.resize(num_batches);
        p.ideal_batch.resize(num_batches);
    }

    auto run_range = [&](int worker, long long begin, long long end) {
        TrajectoryResult& out = partial[worker];
        for (long long shot = begin; shot < end; ++shot) {
            const std::uint64_t noisy_bits = run_trajectory(
                c, local_of_qubit, static_cast<int>(active.size()), noise, true, noise.seed,
                static_cast<std::uint64_t>(shot));
            const std::uint64_t ideal_bits = run_trajectory(
                c, local_of_qubit, static_cast<int>(active.size()), noise, false, noise.seed,
                static_cast<std::uint64_t>(shot));
            const int batch = static_cast<int>(shot * num_batches / shots);
            out.noisy[noisy_bits] += 1;
            out.ideal[ideal_bits] += 1;
            out.noisy_batch[batch][noisy_bits] += 1;
            out.ideal_batch[batch][ideal_bits] += 1;
        }
    };

    if (workers == 1) {
        run_range(0, 0, shots);
    } else {
        std::vector<std::thread> threads;
        for (int w = 0; w < workers; ++w) {
            const long long begin = shots * w / workers;
            const long long end = shots * (w + 1) / workers;
            threads.emplace_back(run_range, w, begin, end);
        }
        for (auto& t : threads) t.join();
    }

    for (const auto& p : partial) {
        for (const auto& [k, v] : p.noisy) total.noisy[k] += v;
        for (const auto& [k, v] : p.ideal) total.ideal[k] += v;
        for (int b = 0; b < num_batches; ++b) {
            for (const auto& [k, v] : p.noisy_batch[b]) total.noisy_batch[b][k] += v;
            for (const auto& [k, v] : p.ideal_batch[b]) total.ideal_batch[b][k] += v;
        }
    }

    FidelityEstimate est;
    est.shots = shots;
    est.fidelity = bhattacharyya(total.noisy, total.ideal, static_cast<double>(shots),
                                 static_cast<double>(shots));

    // dispersion across shot batches
    std::vector<double> batch_f;
    for (int b = 0; b < num_batches; ++b) {
        double nb = 0.0;
        for (const auto& [k, v] : total.noisy_batch[b]) nb += static_cast<double>(v);
        if (nb == 0.0) continue;
        batch_f.push_back(bhattacharyya(total.noisy_batch[b], total.ideal_batch[b], nb, nb));
    }
    if (batch_f.size() > 1) {
        double mean = 0.0;
        for (double f : batch_f) mean += f;
        mean /= static_cast<double>(batch_f.size());
        double var = 0.0;
        for (double f : batch_f) var += (f - mean) * (f - mean);
        var /= static_cast<double>(batch_f.size() - 1);
        est.std_error = std::sqrt(var / static_cast<double>(batch_f.size()));
    }
    return est;
}

}  // namespace laymat
