#include "laymat/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <json.hpp>

namespace laymat {

double CalibrationSnapshot::duration(const std::string& name,
                                     const std::vector<int>& qs) const {
    for (const auto& g : gates)
        if (g.name == name && g.qubits == qs) return g.duration();
    throw CalibrationLookupError("no duration for " + name + " on the requested qubits");
}

double CalibrationSnapshot::average_readout_error() const {
    if (qubits.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& q : qubits) sum += q.readout_error;
    return sum / static_cast<double>(qubits.size());
}

namespace {

void check_probability(double p, const std::string& what) {
    if (!(p >= 0.0 && p <= 1.0))
        throw SchemaError(what + " must be a probability in [0,1], got " + std::to_string(p));
}

void validate_snapshot(CalibrationSnapshot& snap) {
    for (size_t i = 0; i < snap.qubits.size(); ++i) {
        const auto& q = snap.qubits[i];
        if (q.t1_us <= 0.0 || q.t2_us <= 0.0)
            throw SchemaError("qubit " + std::to_string(i) + " has non-positive t1/t2");
        check_probability(q.readout_error, "qubit " + std::to_string(i) + " readout_error");
        if (q.t2_us > 2.0 * q.t1_us)
            snap.warnings.push_back("qubit " + std::to_string(i) + ": t2 (" +
                                    std::to_string(q.t2_us) + " us) exceeds 2*t1");
    }
    for (const auto& g : snap.gates) {
        check_probability(g.error, "gate " + g.name + " error");
        if (g.duration_ns <= 0.0)
            throw SchemaError("gate " + g.name + " has non-positive duration");
        if (g.qubits.empty() || g.qubits.size() > 2)
            throw SchemaError("gate " + g.name + " has arity " + std::to_string(g.qubits.size()));
    }
}

}  // namespace

CalibrationSnapshot calibration_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("invalid calibration JSON: ") + e.what());
    }
    CalibrationSnapshot snap;
    try {
        snap.device_name = j.value("device", "");
        snap.timestamp = j.value("timestamp", "");
        double readout_sum = 0.0;
        int readout_count = 0;
        for (const auto& jq : j.at("qubits")) {
            QubitCalibration q;
            q.t1_us = jq.at("t1_us").get<double>();
            q.t2_us = jq.at("t2_us").get<double>();
            if (jq.contains("readout_error")) {
                q.readout_error = jq["readout_error"].get<double>();
                readout_sum += q.readout_error;
                ++readout_count;
            } else {
                q.readout_error = -1.0;  // resolved to the device average below
            }
            snap.qubits.push_back(q);
        }
        const double avg = readout_count > 0 ? readout_sum / readout_count : 0.0;
        for (auto& q : snap.qubits)
            if (q.readout_error < 0.0) q.readout_error = avg;
        if (j.contains("gates"))
            for (const auto& jg : j["gates"]) {
                GateCalibration g;
                g.name = jg.at("name").get<std::string>();
                g.qubits = jg.at("qubits").get<std::vector<int>>();
                g.error = jg.at("error").get<double>();
                g.duration_ns = jg.at("duration_ns").get<double>();
                snap.gates.push_back(std::move(g));
            }
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("calibration schema violation: ") + e.what());
    }
    validate_snapshot(snap);
    return snap;
}

std::string calibration_to_json(const CalibrationSnapshot& snap) {
    nlohmann::json j;
    j["device"] = snap.device_name;
    j["timestamp"] = snap.timestamp;
    auto& qubits = j["qubits"] = nlohmann::json::array();
    for (const auto& q : snap.qubits)
        qubits.push_back({{"t1_us", q.t1_us},
                          {"t2_us", q.t2_us},
                          {"readout_error", q.readout_error}});
    auto& gates = j["gates"] = nlohmann::json::array();
    for (const auto& g : snap.gates)
        gates.push_back({{"name", g.name},
                         {"qubits", g.qubits},
                         {"error", g.error},
                         {"duration_ns", g.duration_ns}});
    return j.dump(2) + "\n";
}

ErrorMap::ErrorMap(const CalibrationSnapshot& snap, MatchMode mode) : mode_(mode) {
    readout_.reserve(snap.qubits.size());
    for (const auto& q : snap.qubits) readout_.push_back(q.readout_error);

    double sum[3] = {0.0, 0.0, 0.0};
    int count[3] = {0, 0, 0};
    double reset_sum = 0.0;
    int reset_count = 0;
    for (const auto& g : snap.gates) {
        exact_[{g.name, g.qubits}] = g.error;
        if (g.name == "measure") continue;
        if (g.name == "reset") {
            reset_sum += g.error;
            ++reset_count;
            continue;
        }
        const int arity = static_cast<int>(g.qubits.size());
        sum[arity] += g.error;
        count[arity] += 1;
    }
    for (int a = 1; a <= 2; ++a) average_[a] = count[a] > 0 ? sum[a] / count[a] : 0.0;
    average_reset_ = reset_count > 0 ? reset_sum / reset_count : 0.0;
}

double ErrorMap::gate_error(const std::string& name, const std::vector<int>& qubits) const {
    if (mode_ == MatchMode::Loose) return average_[qubits.size()];
    auto it = exact_.find({name, qubits});
    if (it == exact_.end()) {
        std::string tuple;
        for (int q : qubits) tuple += (tuple.empty() ? "" : ",") + std::to_string(q);
        throw CalibrationLookupError("no calibration entry for " + name + " on (" + tuple + ")");
    }
    return it->second;
}

double ErrorMap::readout_error(int qubit) const {
    if (qubit < 0 || qubit >= static_cast<int>(readout_.size()))
        throw CalibrationLookupError("readout error requested for uncalibrated qubit " +
                                     std::to_string(qubit));
    return readout_[qubit];
}

double ErrorMap::reset_error(int qubit) const {
    if (mode_ == MatchMode::Loose) return average_reset_;
    auto it = exact_.find({std::string("reset"), {qubit}});
    if (it == exact_.end())
        throw CalibrationLookupError("no calibration entry for reset on qubit " +
                                     std::to_string(qubit));
    return it->second;
}

double ErrorMap::instruction_error(const Instruction& in, const std::vector<int>& phys) const {
    switch (in.kind) {
        case InstructionKind::Barrier:
            return 0.0;
        case InstructionKind::Measure:
            return readout_error(phys[0]);
        case InstructionKind::Reset:
            return reset_error(phys[0]);
        case InstructionKind::Gate:
            return gate_error(in.name, phys);
    }
    return 0.0;
}

double ErrorMap::average_error(int arity) const {
    if (arity < 1 || arity > 2) throw SchemaError("average_error expects arity 1 or 2");
    return average_[arity];
}

double idle_error(double t1, double t2, double dt) {
    if (t1 <= 0.0 || t2 <= 0.0) throw SchemaError("idle_error requires positive t1 and t2");
    if (dt < 0.0) throw SchemaError("idle_error requires nonnegative dt");
    if (dt == 0.0) return 0.0;
    const double t2_eff = std::min(t2, 2.0 * t1);
    const double survival = (std::exp(-dt / t1) + 2.0 * std::exp(-dt / t2_eff)) / 3.0;
    return std::clamp(1.0 - survival, 0.0, 1.0);
}

CalibrationSnapshot synth_calibration(const CouplingMap& cm, std::uint64_t seed,
                                      CalibrationProfile profile) {
    CalibrationSnapshot snap;
    snap.device_name = "synthetic";
    snap.timestamp = "2000-01-01T00:00:00Z";

    const int n = cm.num_qubits;
    const double denom = n > 1 ? static_cast<double>(n - 1) : 1.0;
    // position in [0,1] used by the gradient profile: qubit 0 is the good corner
    auto pos = [&](double idx) { return idx / denom; };

    for (int q = 0; q < n; ++q) {
        QubitCalibration qc;
        switch (profile) {
            case CalibrationProfile::Uniform:
            case CalibrationProfile::Hotspot:
                qc.t1_us = 120.0;
                qc.t2_us = 100.0;
                qc.readout_error = 0.02;
                break;
            case CalibrationProfile::Gradient:
                qc.t1_us = 150.0 - 70.0 * pos(q);
                qc.t2_us = 0.8 * qc.t1_us;
                qc.readout_error = 0.005 + 0.035 * pos(q);
                break;
        }
        snap.qubits.push_back(qc);
    }

    auto one_qubit_error = [&](int q) {
        return profile == CalibrationProfile::Gradient ? 0.0002 + 0.0008 * pos(q) : 0.0004;
    };
    for (int q = 0; q < n; ++q) {
        for (const char* name : {"x", "sx"})
            snap.gates.push_back({name, {q}, one_qubit_error(q), 35.0});
        snap.gates.push_back({"rz", {q}, 0.0, 1.0});
        snap.gates.push_back({"measure", {q}, snap.qubits[q].readout_error, 700.0});
        snap.gates.push_back({"reset", {q}, 0.002, 1000.0});
    }

    // undirected edge list, ascending, for the seed-chosen hotspot
    std::vector<std::pair<int, int>> undirected;
    for (auto [a, b] : cm.edges)
        if (a < b || !cm.has_edge(b, a)) undirected.push_back(std::minmax(a, b));
    std::sort(undirected.begin(), undirected.end());
    undirected.erase(std::unique(undirected.begin(), undirected.end()), undirected.end());

    std::pair<int, int> hotspot{-1, -1};
    if (profile == CalibrationProfile::Hotspot && !undirected.empty()) {
        std::mt19937_64 rng(seed);
        hotspot = undirected[rng() % undirected.size()];
    }

    for (auto [a, b] : cm.edges) {
        double err = 0.01;
        if (profile == CalibrationProfile::Gradient)
            err = 0.004 + 0.016 * pos((a + b) / 2.0);
        if (profile == CalibrationProfile::Hotspot && std::minmax(a, b) == hotspot) err = 0.08;
        snap.gates.push_back({"cx", {a, b}, err, 300.0});
    }
    return snap;
}

}  // namespace laymat
