#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hubsim/circuit.hpp"
#include "hubsim/model.hpp"
#include "hubsim/pauli.hpp"
#include "hubsim/rng.hpp"

namespace hubsim {

// Per-qubit asymmetric readout flip channel: a sampled bit b is recorded as
// 1-b with probability p01 (true 0 read as 1) or p10 (true 1 read as 0).
struct ReadoutError {
    double p01 = 0.0;
    double p10 = 0.0;

    bool enabled() const { return p01 > 0.0 || p10 > 0.0; }
};

// Dense statevector on N qubits; qubit 0 is the least significant bit of the
// amplitude index.
class StateVector {
public:
    explicit StateVector(int num_qubits);  // |0...0>
    static StateVector init_basis(const BasisState& state);

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<std::complex<double>>& amplitudes() const { return amps_; }
    std::complex<double>& amp(uint64_t index) { return amps_[index]; }

    void apply_gate(const Gate& gate);
    void apply_circuit(const QuantumCircuit& circuit);

    // Sum_k c_k <s|P_k|s>. Throws if the imaginary residue exceeds 1e-10
    // (a Hermitian observable cannot produce one).
    double expectation(const PauliTermSum& observable) const;

    double norm() const;

    // Multinomial draw from |amplitude|^2, then the optional flip channel per
    // bit. Deterministic in the rng state.
    std::map<uint64_t, uint64_t> sample_counts(uint64_t shots, CounterRng& rng,
                                               const ReadoutError& readout = {}) const;
    // Single shot; cheaper than sample_counts for trajectory estimators.
    uint64_t sample_one(CounterRng& rng, const ReadoutError& readout = {}) const;

    // Raw little-endian float64 (re, im) pairs; guarded to N <= 20.
    void dump_amplitudes(const std::string& path) const;
    // CSV "bitstring,count" (qubit 0 first in the string), sorted by index.
    static void write_histogram_csv(const std::map<uint64_t, uint64_t>& counts, int num_qubits,
                                    const std::string& path);

private:
    int num_qubits_;
    std::vector<std::complex<double>> amps_;
};

}  // namespace hubsim
