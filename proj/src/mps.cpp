#include "hubsim/mps.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#ifdef HUBSIM_HAVE_LAPACKE
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>
#else
#include <Eigen/SVD>
#endif

namespace hubsim {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// Thin SVD a = u * diag(s) * vdag with k = min(rows, cols) columns kept.
void thin_svd(const Eigen::MatrixXcd& a, Eigen::MatrixXcd& u, Eigen::VectorXd& s,
              Eigen::MatrixXcd& vdag) {
    const int rows = static_cast<int>(a.rows());
    const int cols = static_cast<int>(a.cols());
    const int k = std::min(rows, cols);
#ifdef HUBSIM_HAVE_LAPACKE
    Eigen::MatrixXcd work = a;
    u.resize(rows, k);
    s.resize(k);
    vdag.resize(k, cols);
    const int info =
        LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'S', rows, cols, work.data(), rows, s.data(), u.data(),
                       rows, vdag.data(), k);
    if (info == 0) return;
    // Rare non-convergence: fall through to the dense Jacobi path.
#endif
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    u = svd.matrixU();
    s = svd.singularValues();
    vdag = svd.matrixV().adjoint();
}

// Retained rank under "cutoff first, cap second": the smallest rank whose
// discarded weight fraction stays within cutoff, then clamped to chi_max.
int choose_rank(const Eigen::VectorXd& s, double cutoff, int chi_max, double* eps_out) {
    const int n = static_cast<int>(s.size());
    const double total = s.squaredNorm();
    if (total <= 0.0) {
        *eps_out = 0.0;
        return 1;
    }
    int keep = n;
    double discarded = 0.0;
    while (keep > 1) {
        const double w = s(keep - 1) * s(keep - 1);
        if (discarded + w > cutoff * total) break;
        discarded += w;
        --keep;
    }
    while (keep > chi_max) {
        --keep;
        discarded += s(keep) * s(keep);
    }
    *eps_out = discarded / total;
    return keep;
}

}  // namespace

void TruncationLog::add(TruncationRecord record) {
    cumulative_discarded += record.eps;
    max_chi = std::max(max_chi, record.chi);
    max_eps = std::max(max_eps, record.eps);
    records.push_back(std::move(record));
}

void TruncationLog::to_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out.precision(17);
    out << "step,link,eps,chi\n";
    for (const auto& r : records) {
        out << r.gate_index << "," << r.link << "," << r.eps << "," << r.chi << "\n";
    }
}

MpsState::MpsState(const BasisState& basis, int chi_max, double cutoff)
    : num_qubits_(static_cast<int>(basis.num_qubits())), chi_max_(chi_max), cutoff_(cutoff) {
    if (num_qubits_ < 1) throw std::invalid_argument("mps needs at least one qubit");
    if (chi_max_ < 1) throw std::invalid_argument("chi_max must be >= 1");
    if (cutoff_ < 0.0 || cutoff_ >= 1.0) throw std::invalid_argument("cutoff must be in [0, 1)");
    site_.resize(num_qubits_);
    for (int k = 0; k < num_qubits_; ++k) {
        site_[k][0] = Eigen::MatrixXcd::Zero(1, 1);
        site_[k][1] = Eigen::MatrixXcd::Zero(1, 1);
        site_[k][basis.bits[k] ? 1 : 0](0, 0) = 1.0;
    }
    center_ = 0;
}

int MpsState::bond_dim(int site) const {
    if (site < 0 || site >= num_qubits_) throw std::invalid_argument("site out of range");
    return static_cast<int>(site_[site][0].cols());
}

int MpsState::max_bond_dim() const {
    int chi = 1;
    for (int k = 0; k < num_qubits_; ++k) chi = std::max(chi, bond_dim(k));
    return chi;
}

void MpsState::move_center_right() {
    const int c = center_;
    auto& a = site_[c];
    const int rows = static_cast<int>(a[0].rows());
    const int cols = static_cast<int>(a[0].cols());
    Eigen::MatrixXcd m(2 * rows, cols);
    m.topRows(rows) = a[0];
    m.bottomRows(rows) = a[1];
    const int k = std::min(2 * rows, cols);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
    const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(2 * rows, k);
    const Eigen::MatrixXcd r =
        qr.matrixQR().topRows(k).triangularView<Eigen::Upper>().toDenseMatrix();
    a[0] = q.topRows(rows);
    a[1] = q.bottomRows(rows);
    auto& b = site_[c + 1];
    b[0] = r * b[0];
    b[1] = r * b[1];
    center_ = c + 1;
}

void MpsState::move_center_left() {
    const int c = center_;
    auto& a = site_[c];
    const int rows = static_cast<int>(a[0].rows());
    const int cols = static_cast<int>(a[0].cols());
    Eigen::MatrixXcd m(rows, 2 * cols);
    m.leftCols(cols) = a[0];
    m.rightCols(cols) = a[1];
    // m = l * q with q having orthonormal rows, via QR of the adjoint.
    const Eigen::MatrixXcd mh = m.adjoint();
    const int k = std::min(2 * cols, rows);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(mh);
    const Eigen::MatrixXcd qt = qr.householderQ() * Eigen::MatrixXcd::Identity(2 * cols, k);
    const Eigen::MatrixXcd rt =
        qr.matrixQR().topRows(k).triangularView<Eigen::Upper>().toDenseMatrix();
    const Eigen::MatrixXcd q = qt.adjoint();   // k x 2cols
    const Eigen::MatrixXcd l = rt.adjoint();   // rows x k
    a[0] = q.leftCols(cols);
    a[1] = q.rightCols(cols);
    auto& b = site_[c - 1];
    b[0] = b[0] * l;
    b[1] = b[1] * l;
    center_ = c - 1;
}

void MpsState::move_center_to(int site) {
    while (center_ < site) move_center_right();
    while (center_ > site) move_center_left();
}

void MpsState::apply_gate(const Gate& gate, TruncationLog* log, long gate_index) {
    if (gate.is_barrier()) return;
    if (gate.q0 < 0 || gate.q0 >= num_qubits_ ||
        (gate.is_two_qubit() && (gate.q1 < 0 || gate.q1 >= num_qubits_))) {
        throw std::invalid_argument("gate qubit out of range");
    }
    if (!gate.is_two_qubit()) {
        const Eigen::Matrix2cd g = gate_matrix_1q(gate);
        auto& a = site_[gate.q0];
        const Eigen::MatrixXcd a0 = a[0], a1 = a[1];
        a[0] = g(0, 0) * a0 + g(0, 1) * a1;
        a[1] = g(1, 0) * a0 + g(1, 1) * a1;
        return;
    }

    const int lo = std::min(gate.q0, gate.q1);
    const int hi = std::max(gate.q0, gate.q1);
    if (hi != lo + 1) {
        throw std::invalid_argument("two-qubit gate on non-adjacent qubits (mps backend)");
    }
    if (center_ < lo) move_center_to(lo);
    if (center_ > hi) move_center_to(hi);

    auto& a = site_[lo];
    auto& b = site_[hi];
    const int chi_l = static_cast<int>(a[0].rows());
    const int chi_r = static_cast<int>(b[0].cols());

    Eigen::MatrixXcd theta(2 * chi_l, 2 * chi_r);
    for (int s1 = 0; s1 < 2; ++s1) {
        for (int s2 = 0; s2 < 2; ++s2) {
            theta.block(s1 * chi_l, s2 * chi_r, chi_l, chi_r) = a[s1] * b[s2];
        }
    }

    const Eigen::Matrix4cd g = gate_matrix_2q(gate);
    // gate_matrix_2q indexes by (bit q0) + 2*(bit q1); remap onto (lo, hi).
    const auto gate_index_of = [&](int s_lo, int s_hi) {
        return gate.q0 == lo ? s_lo + 2 * s_hi : s_hi + 2 * s_lo;
    };
    Eigen::MatrixXcd theta2 = Eigen::MatrixXcd::Zero(2 * chi_l, 2 * chi_r);
    for (int s1p = 0; s1p < 2; ++s1p) {
        for (int s2p = 0; s2p < 2; ++s2p) {
            for (int s1 = 0; s1 < 2; ++s1) {
                for (int s2 = 0; s2 < 2; ++s2) {
                    const std::complex<double> c = g(gate_index_of(s1p, s2p), gate_index_of(s1, s2));
                    if (c == 0.0) continue;
                    theta2.block(s1p * chi_l, s2p * chi_r, chi_l, chi_r) +=
                        c * theta.block(s1 * chi_l, s2 * chi_r, chi_l, chi_r);
                }
            }
        }
    }

    Eigen::MatrixXcd u, vdag;
    Eigen::VectorXd s;
    thin_svd(theta2, u, s, vdag);
    double eps = 0.0;
    const int keep = choose_rank(s, cutoff_, chi_max_, &eps);
    const double total = s.squaredNorm();
    const double kept = total - eps * total;

    TruncationRecord record;
    record.gate_index = gate_index;
    record.link = lo;
    record.eps = eps;
    record.chi = keep;
    record.singular_values.assign(s.data(), s.data() + s.size());

    // Renormalize the kept spectrum so the state norm is unchanged.
    const double scale = kept > 0.0 ? std::sqrt(total / kept) : 1.0;
    const Eigen::VectorXd s_kept = s.head(keep) * scale;
    const Eigen::MatrixXcd sv = s_kept.asDiagonal() * vdag.topRows(keep);

    a[0] = u.block(0, 0, chi_l, keep);
    a[1] = u.block(chi_l, 0, chi_l, keep);
    b[0] = sv.block(0, 0, keep, chi_r);
    b[1] = sv.block(0, chi_r, keep, chi_r);
    center_ = hi;

    if (log) log->add(std::move(record));
}

void MpsState::apply_circuit(const QuantumCircuit& circuit, TruncationLog* log) {
    if (circuit.num_qubits() != num_qubits_) {
        throw std::invalid_argument("circuit width does not match mps width");
    }
    long index = 0;
    for (const Gate& gate : circuit.gates()) {
        apply_gate(gate, log, index);
        ++index;
    }
}

namespace {

// E' = sum_{s',s} O[s',s] A[s']^dag E A[s] for one site; O addressed by letter.
Eigen::MatrixXcd transfer(const Eigen::MatrixXcd& e, const std::array<Eigen::MatrixXcd, 2>& a,
                          char letter) {
    switch (letter) {
        case 'I': return a[0].adjoint() * e * a[0] + a[1].adjoint() * e * a[1];
        case 'Z': return a[0].adjoint() * e * a[0] - a[1].adjoint() * e * a[1];
        case 'X': return a[0].adjoint() * e * a[1] + a[1].adjoint() * e * a[0];
        case 'Y': return kI * (a[1].adjoint() * e * a[0] - a[0].adjoint() * e * a[1]);
        default: throw std::invalid_argument("bad pauli letter");
    }
}

}  // namespace

double MpsState::expectation(const PauliTermSum& observable) const {
    if (observable.num_qubits() != static_cast<std::size_t>(num_qubits_)) {
        throw std::invalid_argument("observable width does not match mps width");
    }
    // Cached identity environments make each term cost only its support span.
    std::vector<Eigen::MatrixXcd> lenv(num_qubits_ + 1), renv(num_qubits_ + 1);
    lenv[0] = Eigen::MatrixXcd::Ones(1, 1);
    for (int k = 0; k < num_qubits_; ++k) lenv[k + 1] = transfer(lenv[k], site_[k], 'I');
    renv[num_qubits_] = Eigen::MatrixXcd::Ones(1, 1);
    for (int k = num_qubits_ - 1; k >= 0; --k) {
        renv[k] = site_[k][0].conjugate() * renv[k + 1] * site_[k][0].transpose() +
                  site_[k][1].conjugate() * renv[k + 1] * site_[k][1].transpose();
    }
    const double norm2 = lenv[num_qubits_](0, 0).real();

    std::complex<double> totalv = 0.0;
    for (const PauliTerm& term : observable.terms()) {
        int first = -1, last = -1;
        for (int k = 0; k < num_qubits_; ++k) {
            if (term.letters[k] != 'I') {
                if (first < 0) first = k;
                last = k;
            }
        }
        if (first < 0) {
            totalv += term.coeff * norm2;
            continue;
        }
        Eigen::MatrixXcd e = lenv[first];
        for (int k = first; k <= last; ++k) e = transfer(e, site_[k], term.letters[k]);
        totalv += term.coeff * (e.array() * renv[last + 1].array()).sum();
    }
    if (std::abs(totalv.imag()) > 1e-10) {
        throw std::runtime_error("mps expectation has imaginary residue; observable not Hermitian?");
    }
    return totalv.real();
}

double MpsState::norm() const {
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Ones(1, 1);
    for (int k = 0; k < num_qubits_; ++k) e = transfer(e, site_[k], 'I');
    return std::sqrt(std::max(0.0, e(0, 0).real()));
}

Eigen::VectorXcd MpsState::to_statevector() const {
    if (num_qubits_ > 16) throw std::invalid_argument("mps contraction limited to 16 qubits");
    // w rows enumerate the bit prefix (qubit 0 = least significant bit).
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Ones(1, 1);
    for (int k = 0; k < num_qubits_; ++k) {
        const auto& a = site_[k];
        const long rows = w.rows();
        Eigen::MatrixXcd next(2 * rows, a[0].cols());
        for (long i = 0; i < rows; ++i) {
            next.row(i) = w.row(i) * a[0];
            next.row(rows + i) = w.row(i) * a[1];
        }
        w = std::move(next);
    }
    return w.col(0);
}

MpsState mps_from_basis(const BasisState& basis, int chi_max, double cutoff) {
    return MpsState(basis, chi_max, cutoff);
}

std::pair<MpsState, TruncationLog> apply_circuit_mps(MpsState m, const QuantumCircuit& circuit) {
    TruncationLog log;
    m.apply_circuit(circuit, &log);
    return {std::move(m), std::move(log)};
}

double expectation_mps(const MpsState& m, const PauliTermSum& observable) {
    return m.expectation(observable);
}

}  // namespace hubsim
