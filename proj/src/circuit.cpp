#include "laymat/circuit.hpp"

#include <algorithm>
#include <cstdio>

#include <json.hpp>

namespace laymat {

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

const GateRegistry& GateRegistry::standard() {
    static const GateRegistry reg = [] {
        GateRegistry r;
        for (const char* n : {"id", "x", "y", "z", "h", "s", "sdg", "t", "tdg",
                              "sx", "sxdg", "rx", "ry", "rz", "p", "u1", "u2", "u3"})
            r.add(n, 1);
        for (const char* n : {"cx", "cy", "cz", "swap", "ecr", "rzz"})
            r.add(n, 2);
        return r;
    }();
    return reg;
}

void GateRegistry::add(const std::string& name, int arity) {
    if (arity != 1 && arity != 2)
        throw SchemaError("gate arity must be 1 or 2: " + name);
    arity_[name] = arity;
}

int GateRegistry::arity(const std::string& name) const {
    auto it = arity_.find(name);
    if (it == arity_.end()) throw SchemaError("unknown gate name: " + name);
    return it->second;
}

std::set<std::string> QuantumCircuit::basis() const {
    std::set<std::string> names;
    for (const auto& in : instructions)
        if (in.kind == InstructionKind::Gate) names.insert(in.name);
    return names;
}

std::vector<int> QuantumCircuit::active_qubits() const {
    std::set<int> active;
    for (const auto& in : instructions) {
        if (in.kind == InstructionKind::Barrier) continue;
        active.insert(in.qubits.begin(), in.qubits.end());
    }
    return {active.begin(), active.end()};
}

namespace {

void check_qubits(const std::vector<int>& qubits, int num_qubits) {
    for (int q : qubits)
        if (q < 0 || q >= num_qubits)
            throw SchemaError("qubit index " + std::to_string(q) + " out of range (num_qubits=" +
                              std::to_string(num_qubits) + ")");
    if (qubits.size() == 2 && qubits[0] == qubits[1])
        throw SchemaError("duplicate qubit index " + std::to_string(qubits[0]) +
                          " within one instruction");
}

}  // namespace

void QuantumCircuit::add_gate(const std::string& name, std::vector<int> qubits,
                              std::vector<double> params, const GateRegistry& registry) {
    const int arity = registry.arity(name);
    if (static_cast<int>(qubits.size()) != arity)
        throw SchemaError("gate " + name + " expects " + std::to_string(arity) +
                          " qubit(s), got " + std::to_string(qubits.size()));
    check_qubits(qubits, num_qubits);
    instructions.push_back({InstructionKind::Gate, name, std::move(qubits), std::move(params), {}});
}

void QuantumCircuit::add_measure(int qubit, int clbit) {
    check_qubits({qubit}, num_qubits);
    if (clbit < 0 || clbit >= num_clbits)
        throw SchemaError("clbit index " + std::to_string(clbit) + " out of range");
    instructions.push_back({InstructionKind::Measure, "measure", {qubit}, {}, {clbit}});
}

void QuantumCircuit::add_reset(int qubit) {
    check_qubits({qubit}, num_qubits);
    instructions.push_back({InstructionKind::Reset, "reset", {qubit}, {}, {}});
}

void QuantumCircuit::add_barrier(std::vector<int> qubits) {
    for (int q : qubits) check_qubits({q}, num_qubits);
    instructions.push_back({InstructionKind::Barrier, "barrier", std::move(qubits), {}, {}});
}

void validate_circuit(const QuantumCircuit& c, const GateRegistry& registry) {
    for (const auto& in : c.instructions) {
        switch (in.kind) {
            case InstructionKind::Gate: {
                const int arity = registry.arity(in.name);
                if (static_cast<int>(in.qubits.size()) != arity)
                    throw SchemaError("gate " + in.name + " arity mismatch");
                check_qubits(in.qubits, c.num_qubits);
                break;
            }
            case InstructionKind::Measure:
                check_qubits(in.qubits, c.num_qubits);
                if (in.clbits.size() != 1 || in.clbits[0] < 0 || in.clbits[0] >= c.num_clbits)
                    throw SchemaError("measure requires one in-range clbit");
                break;
            case InstructionKind::Reset:
                check_qubits(in.qubits, c.num_qubits);
                break;
            case InstructionKind::Barrier:
                if (!in.params.empty()) throw SchemaError("barrier carries no params");
                for (int q : in.qubits) check_qubits({q}, c.num_qubits);
                break;
        }
    }
}

QuantumCircuit circuit_from_json(const std::string& text, const GateRegistry& registry) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("invalid circuit JSON: ") + e.what());
    }
    QuantumCircuit c;
    try {
        c.num_qubits = j.at("num_qubits").get<int>();
        c.num_clbits = j.value("num_clbits", 0);
        for (const auto& ji : j.at("instructions")) {
            Instruction in;
            in.name = ji.at("name").get<std::string>();
            in.qubits = ji.at("qubits").get<std::vector<int>>();
            if (ji.contains("params")) in.params = ji["params"].get<std::vector<double>>();
            if (ji.contains("clbits")) in.clbits = ji["clbits"].get<std::vector<int>>();
            if (in.name == "measure")
                in.kind = InstructionKind::Measure;
            else if (in.name == "reset")
                in.kind = InstructionKind::Reset;
            else if (in.name == "barrier")
                in.kind = InstructionKind::Barrier;
            else
                in.kind = InstructionKind::Gate;
            c.instructions.push_back(std::move(in));
        }
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("circuit JSON schema violation: ") + e.what());
    }
    validate_circuit(c, registry);
    return c;
}

namespace {

std::string serialize_qasm(const QuantumCircuit& c) {
    std::string out = "OPENQASM 2.0;\n";
    out += "qreg q[" + std::to_string(c.num_qubits) + "];\n";
    if (c.num_clbits > 0) out += "creg c[" + std::to_string(c.num_clbits) + "];\n";
    for (const auto& in : c.instructions) {
        switch (in.kind) {
            case InstructionKind::Measure:
                out += "measure q[" + std::to_string(in.qubits[0]) + "] -> c[" +
                       std::to_string(in.clbits[0]) + "];\n";
                break;
            case InstructionKind::Reset:
                out += "reset q[" + std::to_string(in.qubits[0]) + "];\n";
                break;
            case InstructionKind::Barrier:
            case InstructionKind::Gate: {
                out += in.name;
                if (!in.params.empty()) {
                    out += "(";
                    for (size_t i = 0; i < in.params.size(); ++i) {
                        if (i) out += ",";
                        out += format_double(in.params[i]);
                    }
                    out += ")";
                }
                out += " ";
                for (size_t i = 0; i < in.qubits.size(); ++i) {
                    if (i) out += ",";
                    out += "q[" + std::to_string(in.qubits[i]) + "]";
                }
                out += ";\n";
                break;
            }
        }
    }
    return out;
}

std::string serialize_json(const QuantumCircuit& c) {
    nlohmann::json j;
    j["num_qubits"] = c.num_qubits;
    j["num_clbits"] = c.num_clbits;
    auto& arr = j["instructions"] = nlohmann::json::array();
    for (const auto& in : c.instructions) {
        nlohmann::json ji;
        ji["name"] = in.name;
        ji["qubits"] = in.qubits;
        if (!in.params.empty()) ji["params"] = in.params;
        if (!in.clbits.empty()) ji["clbits"] = in.clbits;
        arr.push_back(std::move(ji));
    }
    return j.dump(2) + "\n";
}

}  // namespace

std::string serialize_circuit(const QuantumCircuit& c, CircuitFormat format) {
    return format == CircuitFormat::Qasm ? serialize_qasm(c) : serialize_json(c);
}

}  // namespace laymat
