#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "hubsim/pauli.hpp"
#include "hubsim/statevector.hpp"

namespace hubsim {

// Matrix-free Hermitian action of a Pauli-term sum: each term is compiled to a
// bit flip mask plus a sign/phase rule, so H|v> costs one pass per term.
class SparseHamiltonian {
public:
    explicit SparseHamiltonian(const PauliTermSum& hamiltonian);

    int num_qubits() const { return num_qubits_; }
    // Aggregated coefficient of the identity string (energy shift).
    double identity_shift() const { return shift_; }

    // out = H * in (identity shift included). Arrays of length 2^N.
    void matvec(const std::complex<double>* in, std::complex<double>* out) const;
    StateVector matvec(const StateVector& v) const;

    // out = (H - shift) * in; the traceless part that drives dynamics.
    void matvec_traceless(const std::complex<double>* in, std::complex<double>* out) const;

    // Sum of |coefficients| of the traceless part; upper bound on the spectral
    // radius, used to seed the substep size.
    double coefficient_norm() const { return norm1_; }

private:
    struct CompiledTerm {
        std::complex<double> factor;  // coeff * i^{number of Y letters}
        uint64_t flip = 0;            // X|Y positions
        uint64_t sign_mask = 0;       // Y|Z positions: (-1)^{popcount(i & mask)}
    };

    int num_qubits_ = 0;
    double shift_ = 0.0;
    double norm1_ = 0.0;
    std::vector<CompiledTerm> terms_;
};

double energy_expectation(const SparseHamiltonian& h, const StateVector& psi);

struct EvolveOptions {
    double tol = 1e-10;    // total error budget over the full interval
    int krylov_dim = 30;
    int max_substeps = 100000;
};

// psi(tau) = exp(-i * H_traceless * tau) psi0 via Lanczos with adaptive
// substepping; the identity shift only contributes a global phase and is
// dropped. Result is renormalized to unit norm. Throws std::runtime_error
// when the a-posteriori error estimate cannot be brought under tolerance.
StateVector evolve_exact(const SparseHamiltonian& h, const StateVector& psi0, double tau,
                         const EvolveOptions& options = {});

StateVector evolve_exact(const SparseHamiltonian& h, const StateVector& psi0, double tau,
                         double tol);

}  // namespace hubsim
