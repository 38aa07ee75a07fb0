#pragma once

#include <array>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hubsim/circuit.hpp"
#include "hubsim/model.hpp"
#include "hubsim/pauli.hpp"

namespace hubsim {

// One SVD truncation event. eps is the discarded squared-singular-value
// weight divided by the total (the pre-truncation spectrum is kept so the
// ratio can be recomputed and audited).
struct TruncationRecord {
    long gate_index = -1;  // position of the gate in the applied circuit
    int link = 0;          // bond to the right of this site index
    double eps = 0.0;
    int chi = 1;  // retained bond dimension
    std::vector<double> singular_values;  // full pre-truncation spectrum
};

struct TruncationLog {
    std::vector<TruncationRecord> records;
    double cumulative_discarded = 0.0;  // sum of eps over records
    int max_chi = 1;
    double max_eps = 0.0;

    void add(TruncationRecord record);
    // CSV "step,link,eps,chi"; step is the gate index.
    void to_csv(const std::string& path) const;
};

// Matrix-product state with physical dimension 2 per qubit. Site tensors are
// stored as a pair of (left bond x right bond) matrices, one per physical
// value. Sites left of the orthogonality center are left-canonical, sites
// right of it right-canonical.
class MpsState {
public:
    MpsState(const BasisState& basis, int chi_max, double cutoff);

    int num_qubits() const { return num_qubits_; }
    int chi_max() const { return chi_max_; }
    double cutoff() const { return cutoff_; }
    int center() const { return center_; }

    // Bond dimension to the right of `site` (1 at the right boundary).
    int bond_dim(int site) const;
    int max_bond_dim() const;
    double norm() const;

    // 1-qubit gates are exact; adjacent 2-qubit gates contract, apply, and
    // SVD-truncate (cutoff first, chi_max cap second). Non-adjacent 2-qubit
    // gates are rejected.
    void apply_gate(const Gate& gate, TruncationLog* log = nullptr, long gate_index = -1);
    void apply_circuit(const QuantumCircuit& circuit, TruncationLog* log = nullptr);

    double expectation(const PauliTermSum& observable) const;

    Eigen::VectorXcd to_statevector() const;  // guarded to 20 qubits

private:
    void move_center_to(int site);
    void move_center_right();
    void move_center_left();

    int num_qubits_;
    int chi_max_;
    double cutoff_;
    int center_ = 0;
    std::vector<std::array<Eigen::MatrixXcd, 2>> site_;
};

MpsState mps_from_basis(const BasisState& basis, int chi_max, double cutoff);
std::pair<MpsState, TruncationLog> apply_circuit_mps(MpsState m, const QuantumCircuit& circuit);
double expectation_mps(const MpsState& m, const PauliTermSum& observable);

}  // namespace hubsim
