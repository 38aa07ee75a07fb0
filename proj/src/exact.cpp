#include "hubsim/exact.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace hubsim {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

}  // namespace

SparseHamiltonian::SparseHamiltonian(const PauliTermSum& hamiltonian)
    : num_qubits_(static_cast<int>(hamiltonian.num_qubits())) {
    if (num_qubits_ < 1 || num_qubits_ > 30) {
        throw std::invalid_argument("hamiltonian width out of range");
    }
    PauliTermSum canonical = hamiltonian;
    canonical.canonicalize();
    for (const PauliTerm& term : canonical.terms()) {
        const uint64_t xm = pauli_mask(term.letters, 'X');
        const uint64_t ym = pauli_mask(term.letters, 'Y');
        const uint64_t zm = pauli_mask(term.letters, 'Z');
        if ((xm | ym | zm) == 0) {
            shift_ += term.coeff;
            continue;
        }
        std::complex<double> phase = 1.0;
        switch (std::popcount(ym) & 3) {
            case 0: phase = 1.0; break;
            case 1: phase = kI; break;
            case 2: phase = -1.0; break;
            case 3: phase = -kI; break;
        }
        terms_.push_back({term.coeff * phase, xm | ym, ym | zm});
        norm1_ += std::abs(term.coeff);
    }
}

void SparseHamiltonian::matvec_traceless(const std::complex<double>* in,
                                         std::complex<double>* out) const {
    const uint64_t dim = uint64_t(1) << num_qubits_;
    for (uint64_t i = 0; i < dim; ++i) out[i] = 0.0;
    for (const CompiledTerm& term : terms_) {
        if (term.flip == 0) {
            const double c = term.factor.real();  // no Y/X letters: factor is real
            for (uint64_t i = 0; i < dim; ++i) {
                out[i] += (std::popcount(i & term.sign_mask) & 1) ? -c * in[i] : c * in[i];
            }
        } else {
            const std::complex<double> c = term.factor;
            for (uint64_t i = 0; i < dim; ++i) {
                const std::complex<double> v =
                    (std::popcount(i & term.sign_mask) & 1) ? -c * in[i] : c * in[i];
                out[i ^ term.flip] += v;
            }
        }
    }
}

void SparseHamiltonian::matvec(const std::complex<double>* in, std::complex<double>* out) const {
    matvec_traceless(in, out);
    if (shift_ != 0.0) {
        const uint64_t dim = uint64_t(1) << num_qubits_;
        for (uint64_t i = 0; i < dim; ++i) out[i] += shift_ * in[i];
    }
}

StateVector SparseHamiltonian::matvec(const StateVector& v) const {
    if (v.num_qubits() != num_qubits_) {
        throw std::invalid_argument("state width does not match hamiltonian width");
    }
    StateVector out(num_qubits_);
    matvec(v.amplitudes().data(), &out.amp(0));
    return out;
}

double energy_expectation(const SparseHamiltonian& h, const StateVector& psi) {
    const StateVector hv = h.matvec(psi);
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        acc += std::conj(psi.amplitudes()[i]) * hv.amplitudes()[i];
    }
    return acc.real();
}

namespace {

using Cvec = std::vector<std::complex<double>>;

double vec_norm(const Cvec& v) {
    double n2 = 0.0;
    for (const auto& a : v) n2 += std::norm(a);
    return std::sqrt(n2);
}

// One Lanczos-approximated step exp(-i h_step H) v. Returns false when the
// a-posteriori error estimate exceeds budget (caller halves the step). The
// Krylov basis is stored; for a happy breakdown the result is exact.
bool lanczos_step(const SparseHamiltonian& h, const Cvec& v, double h_step, double budget,
                  int krylov_dim, Cvec& result, double* error_estimate) {
    const std::size_t dim = v.size();
    std::vector<Cvec> basis;
    basis.reserve(krylov_dim);
    basis.push_back(v);

    std::vector<double> alpha, beta;  // tridiagonal T
    Cvec w(dim);
    bool breakdown = false;
    const double breakdown_eps = 1e-13;

    for (int k = 0; k < krylov_dim; ++k) {
        h.matvec_traceless(basis[k].data(), w.data());
        std::complex<double> a = 0.0;
        for (std::size_t i = 0; i < dim; ++i) a += std::conj(basis[k][i]) * w[i];
        alpha.push_back(a.real());
        for (std::size_t i = 0; i < dim; ++i) w[i] -= a.real() * basis[k][i];
        if (k > 0) {
            const double b_prev = beta[k - 1];
            for (std::size_t i = 0; i < dim; ++i) w[i] -= b_prev * basis[k - 1][i];
        }
        const double b = vec_norm(w);
        if (b < breakdown_eps) {
            breakdown = true;
            break;
        }
        if (k + 1 == krylov_dim) break;  // basis full; b feeds the error estimate
        beta.push_back(b);
        Cvec next(dim);
        for (std::size_t i = 0; i < dim; ++i) next[i] = w[i] / b;
        basis.push_back(std::move(next));
    }

    const int m = static_cast<int>(basis.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (int k = 0; k < m; ++k) {
        t(k, k) = alpha[k];
        if (k + 1 < m) t(k, k + 1) = t(k + 1, k) = beta[k];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(t);
    const Eigen::VectorXd evals = eig.eigenvalues();
    const Eigen::MatrixXd evecs = eig.eigenvectors();
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(m);
    for (int k = 0; k < m; ++k) {
        std::complex<double> acc = 0.0;
        for (int l = 0; l < m; ++l) {
            acc += evecs(k, l) * std::exp(-kI * (h_step * evals(l))) * evecs(0, l);
        }
        y(k) = acc;
    }

    double err = 0.0;
    if (!breakdown) {
        // Residual of the Krylov approximation is carried by the first
        // neglected basis vector, weighted by |y_m| and the step.
        const double b_last = alpha.size() == beta.size() + 1 && m == krylov_dim
                                  ? vec_norm(w)
                                  : (beta.empty() ? 0.0 : beta.back());
        err = std::abs(h_step) * b_last * std::abs(y(m - 1));
    }
    if (error_estimate) *error_estimate = err;
    if (!breakdown && err > budget) return false;

    result.assign(dim, {0.0, 0.0});
    for (int k = 0; k < m; ++k) {
        const std::complex<double> yk = y(k);
        const Cvec& bk = basis[k];
        for (std::size_t i = 0; i < dim; ++i) result[i] += yk * bk[i];
    }
    return true;
}

}  // namespace

StateVector evolve_exact(const SparseHamiltonian& h, const StateVector& psi0, double tau,
                         const EvolveOptions& options) {
    if (psi0.num_qubits() != h.num_qubits()) {
        throw std::invalid_argument("state width does not match hamiltonian width");
    }
    if (!std::isfinite(tau)) throw std::invalid_argument("evolution time must be finite");
    StateVector psi = psi0;
    if (tau == 0.0) return psi;

    Cvec current(psi.amplitudes().begin(), psi.amplitudes().end());
    const double total = std::abs(tau);
    const double direction = tau < 0.0 ? -1.0 : 1.0;
    double remaining = total;
    // Seed the substep so the Krylov space can resolve ~ h*||H|| oscillations.
    double h_step =
        std::min(total, 0.5 * options.krylov_dim / std::max(1.0, h.coefficient_norm()));
    int substeps = 0;
    Cvec next;

    while (remaining > 1e-15 * total) {
        if (++substeps > options.max_substeps) {
            throw std::runtime_error("krylov evolution failed: substep budget exhausted");
        }
        h_step = std::min(h_step, remaining);
        const double budget = options.tol * (h_step / total);
        double err = 0.0;
        if (lanczos_step(h, current, direction * h_step, budget, options.krylov_dim, next, &err)) {
            current.swap(next);
            remaining -= h_step;
            // Renormalize: the Krylov step is unitary only up to the estimate.
            const double n = vec_norm(current);
            if (n < 0.5) throw std::runtime_error("krylov evolution failed: norm collapsed");
            for (auto& a : current) a /= n;
            if (err < budget / 100.0 && h_step < remaining) h_step *= 2.0;
        } else {
            h_step /= 2.0;
            if (h_step < 1e-12 * total) {
                throw std::runtime_error(
                    "krylov evolution failed: step underflow without meeting tolerance");
            }
        }
    }

    for (std::size_t i = 0; i < current.size(); ++i) psi.amp(i) = current[i];
    return psi;
}

StateVector evolve_exact(const SparseHamiltonian& h, const StateVector& psi0, double tau,
                         double tol) {
    EvolveOptions options;
    options.tol = tol;
    return evolve_exact(h, psi0, tau, options);
}

}  // namespace hubsim
