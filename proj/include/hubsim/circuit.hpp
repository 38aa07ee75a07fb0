#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

namespace hubsim {

enum class GateKind { X, SX, H, RX, RZ, CNOT, CZ, SWAP, RZZ, BARRIER };

const char* kind_name(GateKind kind);
GateKind kind_from_name(const std::string& name);

// One circuit operation. q1 is -1 for single-qubit gates; theta is meaningful
// only for RX/RZ/RZZ. BARRIER spans all qubits and carries no unitary.
struct Gate {
    GateKind kind = GateKind::BARRIER;
    int q0 = -1;
    int q1 = -1;
    double theta = 0.0;

    static Gate x(int q) { return {GateKind::X, q, -1, 0.0}; }
    static Gate sx(int q) { return {GateKind::SX, q, -1, 0.0}; }
    static Gate h(int q) { return {GateKind::H, q, -1, 0.0}; }
    static Gate rx(int q, double theta) { return {GateKind::RX, q, -1, theta}; }
    static Gate rz(int q, double theta) { return {GateKind::RZ, q, -1, theta}; }
    static Gate cnot(int control, int target) { return {GateKind::CNOT, control, target, 0.0}; }
    static Gate cz(int a, int b) { return {GateKind::CZ, a, b, 0.0}; }
    static Gate swap(int a, int b) { return {GateKind::SWAP, a, b, 0.0}; }
    static Gate rzz(int a, int b, double theta) { return {GateKind::RZZ, a, b, theta}; }
    static Gate barrier() { return {GateKind::BARRIER, -1, -1, 0.0}; }

    bool is_barrier() const { return kind == GateKind::BARRIER; }
    bool is_two_qubit() const {
        return kind == GateKind::CNOT || kind == GateKind::CZ || kind == GateKind::SWAP ||
               kind == GateKind::RZZ;
    }
    bool has_angle() const {
        return kind == GateKind::RX || kind == GateKind::RZ || kind == GateKind::RZZ;
    }
};

// Ordered gate list on a fixed number of qubits.
class QuantumCircuit {
public:
    explicit QuantumCircuit(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    const std::vector<Gate>& gates() const { return gates_; }
    std::size_t size() const { return gates_.size(); }

    void append(const Gate& gate);  // validates qubit indices
    void append_circuit(const QuantumCircuit& other);
    // Embeds `other` with other's qubit k acting on qubit_map[k].
    void append_circuit(const QuantumCircuit& other, const std::vector<int>& qubit_map);
    void barrier() { gates_.push_back(Gate::barrier()); }

    std::string to_text() const;
    static QuantumCircuit from_text(const std::string& text);
    nlohmann::json to_json() const;
    static QuantumCircuit from_json(const nlohmann::json& j);

private:
    int num_qubits_;
    std::vector<Gate> gates_;
};

// Number of layers under as-soon-as-possible scheduling: a gate occupies the
// earliest layer after every layer already using one of its qubits. BARRIER
// occupies no layer but forces later gates past all layers seen so far.
int depth(const QuantumCircuit& circuit);

// Depth counting only layers that contain at least one gate accepted by the
// filter (layering itself is still computed from all gates).
int depth(const QuantumCircuit& circuit, const std::function<bool(const Gate&)>& filter);

int two_qubit_depth(const QuantumCircuit& circuit);

struct DepthReport {
    int total_depth = 0;
    int twoq_depth = 0;
    std::map<std::string, long> counts;  // per gate kind, barriers excluded
    long total_gates = 0;
    long twoq_gates = 0;

    nlohmann::json to_json() const;
    static DepthReport from_json(const nlohmann::json& j);
};

DepthReport gate_counts(const QuantumCircuit& circuit);

// Rewrites onto the hardware basis {X, SX, RX, RZ, CZ, RZZ}:
//   H    -> RZ(pi/2) SX RZ(pi/2)            (up to global phase)
//   CNOT -> H(target) CZ H(target)
//   SWAP -> three CNOTs
// Barriers are dropped. The result equals the input up to global phase.
QuantumCircuit decompose_to_basis(const QuantumCircuit& circuit);

// Dense unitary of the whole circuit; guarded to num_qubits <= 10.
Eigen::MatrixXcd circuit_unitary(const QuantumCircuit& circuit);

// Unitary matrix of a single gate. Two-qubit matrices are indexed by
// (bit of q0) + 2*(bit of q1). Throws for BARRIER.
Eigen::Matrix2cd gate_matrix_1q(const Gate& gate);
Eigen::Matrix4cd gate_matrix_2q(const Gate& gate);

}  // namespace hubsim
