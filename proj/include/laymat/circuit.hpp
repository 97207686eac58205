#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "laymat/errors.hpp"

namespace laymat {

enum class InstructionKind { Gate, Measure, Reset, Barrier };

/// One circuit operation over virtual qubits. Qubit indices within a single
/// instruction are distinct; gate arity matches the registry entry for `name`.
struct Instruction {
    InstructionKind kind = InstructionKind::Gate;
    std::string name;
    std::vector<int> qubits;
    std::vector<double> params;
    std::vector<int> clbits;  // measure only

    bool operator==(const Instruction&) const = default;
};

/// Name -> arity table for gate instructions. Extensible at runtime so
/// device-specific entangling gates can be registered without code changes.
class GateRegistry {
public:
    /// Registry preloaded with the common 1q/2q gate set (x, sx, rz, cx, ...).
    static const GateRegistry& standard();

    GateRegistry() = default;

    void add(const std::string& name, int arity);
    bool contains(const std::string& name) const { return arity_.count(name) != 0; }
    int arity(const std::string& name) const;

private:
    std::map<std::string, int> arity_;
};

/// A routed quantum circuit: an ordered instruction list over virtual qubits.
/// Immutable by convention once built; instruction order is significant and
/// survives parse/serialize round-trips exactly.
struct QuantumCircuit {
    int num_qubits = 0;
    int num_clbits = 0;
    std::vector<Instruction> instructions;

    /// Gate names appearing in the circuit (measure/reset/barrier excluded).
    std::set<std::string> basis() const;

    /// Virtual qubits referenced by at least one non-barrier instruction,
    /// ascending. Declared-but-idle wires are not listed.
    std::vector<int> active_qubits() const;

    void add_gate(const std::string& name, std::vector<int> qubits,
                  std::vector<double> params = {},
                  const GateRegistry& registry = GateRegistry::standard());
    void add_measure(int qubit, int clbit);
    void add_reset(int qubit);
    void add_barrier(std::vector<int> qubits);

    bool operator==(const QuantumCircuit&) const = default;
};

/// Checks all structural invariants (index ranges, arity, distinct qubits)
/// against `registry`; throws SchemaError on the first violation.
void validate_circuit(const QuantumCircuit& c,
                      const GateRegistry& registry = GateRegistry::standard());

enum class CircuitFormat { Qasm, Json };

/// Parses the QASM-2 subset (qreg/creg declarations, gate applications,
/// measure, reset, barrier, `//` comments). Classical control flow and
/// gate definitions are rejected.
QuantumCircuit parse_circuit(const std::string& text,
                             const GateRegistry& registry = GateRegistry::standard());

/// Parses the JSON circuit format:
/// {"num_qubits":N,"num_clbits":M,"instructions":[{"name","qubits","params","clbits"}]}.
QuantumCircuit circuit_from_json(const std::string& text,
                                 const GateRegistry& registry = GateRegistry::standard());

/// parse(serialize(c)) is structurally equal to c, and re-serializing the
/// parsed circuit reproduces the text byte for byte.
std::string serialize_circuit(const QuantumCircuit& c, CircuitFormat format);

}  // namespace laymat
