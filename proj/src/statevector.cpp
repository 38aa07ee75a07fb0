#include "hubsim/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace hubsim {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

}  // namespace

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > 30) {
        throw std::invalid_argument("statevector width out of range");
    }
    amps_.assign(std::size_t(1) << num_qubits, {0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector StateVector::init_basis(const BasisState& state) {
    StateVector sv(static_cast<int>(state.num_qubits()));
    sv.amps_[0] = 0.0;
    sv.amps_[state.index()] = 1.0;
    return sv;
}

void StateVector::apply_gate(const Gate& gate) {
    if (gate.is_barrier()) return;
    if (gate.q0 < 0 || gate.q0 >= num_qubits_ ||
        (gate.is_two_qubit() && (gate.q1 < 0 || gate.q1 >= num_qubits_))) {
        throw std::invalid_argument("gate qubit out of range");
    }
    const std::size_t dim = amps_.size();
    const uint64_t m0 = uint64_t(1) << gate.q0;

    switch (gate.kind) {
        case GateKind::X: {
            for (uint64_t i = 0; i < dim; ++i) {
                if (!(i & m0)) std::swap(amps_[i], amps_[i | m0]);
            }
            return;
        }
        case GateKind::RZ: {
            const std::complex<double> e0 = std::exp(-kI * (gate.theta / 2.0));
            const std::complex<double> e1 = std::exp(kI * (gate.theta / 2.0));
            for (uint64_t i = 0; i < dim; ++i) amps_[i] *= (i & m0) ? e1 : e0;
            return;
        }
        case GateKind::SX:
        case GateKind::H:
        case GateKind::RX: {
            const Eigen::Matrix2cd g = gate_matrix_1q(gate);
            const std::complex<double> g00 = g(0, 0), g01 = g(0, 1), g10 = g(1, 0), g11 = g(1, 1);
            for (uint64_t i = 0; i < dim; ++i) {
                if (i & m0) continue;
                const std::complex<double> a0 = amps_[i];
                const std::complex<double> a1 = amps_[i | m0];
                amps_[i] = g00 * a0 + g01 * a1;
                amps_[i | m0] = g10 * a0 + g11 * a1;
            }
            return;
        }
        case GateKind::CZ: {
            const uint64_t m1 = uint64_t(1) << gate.q1;
            const uint64_t both = m0 | m1;
            for (uint64_t i = 0; i < dim; ++i) {
                if ((i & both) == both) amps_[i] = -amps_[i];
            }
            return;
        }
        case GateKind::CNOT: {
            const uint64_t mt = uint64_t(1) << gate.q1;  // target
            for (uint64_t i = 0; i < dim; ++i) {
                if ((i & m0) && !(i & mt)) std::swap(amps_[i], amps_[i | mt]);
            }
            return;
        }
        case GateKind::SWAP: {
            const uint64_t m1 = uint64_t(1) << gate.q1;
            for (uint64_t i = 0; i < dim; ++i) {
                if ((i & m0) && !(i & m1)) std::swap(amps_[i], amps_[(i ^ m0) | m1]);
            }
            return;
        }
        case GateKind::RZZ: {
            const uint64_t m1 = uint64_t(1) << gate.q1;
            const std::complex<double> e_same = std::exp(-kI * (gate.theta / 2.0));
            const std::complex<double> e_diff = std::exp(kI * (gate.theta / 2.0));
            for (uint64_t i = 0; i < dim; ++i) {
                const bool b0 = i & m0, b1 = i & m1;
                amps_[i] *= (b0 == b1) ? e_same : e_diff;
            }
            return;
        }
        case GateKind::BARRIER:
            return;
    }
}

void StateVector::apply_circuit(const QuantumCircuit& circuit) {
    if (circuit.num_qubits() != num_qubits_) {
        throw std::invalid_argument("circuit width does not match state width");
    }
    for (const Gate& gate : circuit.gates()) apply_gate(gate);
}

double StateVector::expectation(const PauliTermSum& observable) const {
    if (observable.num_qubits() != static_cast<std::size_t>(num_qubits_)) {
        throw std::invalid_argument("observable width does not match state width");
    }
    const std::size_t dim = amps_.size();
    std::complex<double> total = 0.0;
    for (const PauliTerm& term : observable.terms()) {
        const uint64_t xm = pauli_mask(term.letters, 'X');
        const uint64_t ym = pauli_mask(term.letters, 'Y');
        const uint64_t zm = pauli_mask(term.letters, 'Z');
        const uint64_t flip = xm | ym;
        const uint64_t sign_mask = ym | zm;
        std::complex<double> acc = 0.0;
        if (flip == 0) {
            double real_acc = 0.0;
            for (uint64_t i = 0; i < dim; ++i) {
                const double p = std::norm(amps_[i]);
                real_acc += (std::popcount(i & sign_mask) & 1) ? -p : p;
            }
            acc = real_acc;
        } else {
            // P|i> = i^{nY} (-1)^{|i & (ym|zm)|} |i ^ flip>
            std::complex<double> phase = 1.0;
            switch (std::popcount(ym) & 3) {
                case 0: phase = 1.0; break;
                case 1: phase = kI; break;
                case 2: phase = -1.0; break;
                case 3: phase = -kI; break;
            }
            for (uint64_t i = 0; i < dim; ++i) {
                const std::complex<double> v =
                    (std::popcount(i & sign_mask) & 1) ? -amps_[i] : amps_[i];
                acc += std::conj(amps_[i ^ flip]) * v;
            }
            acc *= phase;
        }
        total += term.coeff * acc;
    }
    if (std::abs(total.imag()) > 1e-10) {
        throw std::runtime_error("expectation has imaginary residue " +
                                 std::to_string(total.imag()) + "; observable not Hermitian?");
    }
    return total.real();
}

double StateVector::norm() const {
    double n2 = 0.0;
    for (const auto& a : amps_) n2 += std::norm(a);
    return std::sqrt(n2);
}

namespace {

uint64_t apply_readout_flips(uint64_t bits, int num_qubits, const ReadoutError& readout,
                             CounterRng& rng) {
    if (!readout.enabled()) return bits;
    for (int q = 0; q < num_qubits; ++q) {
        const bool one = bits & (uint64_t(1) << q);
        const double p = one ? readout.p10 : readout.p01;
        if (p > 0.0 && rng.bernoulli(p)) bits ^= uint64_t(1) << q;
    }
    return bits;
}

}  // namespace

std::map<uint64_t, uint64_t> StateVector::sample_counts(uint64_t shots, CounterRng& rng,
                                                        const ReadoutError& readout) const {
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    // Sorted uniforms let one cumulative scan of |a|^2 resolve every shot
    // without materializing a prefix array.
    std::vector<double> draws(shots);
    for (auto& u : draws) u = rng.uniform();
    std::sort(draws.begin(), draws.end());
    std::map<uint64_t, uint64_t> counts;
    double cum = 0.0;
    std::size_t next = 0;
    for (uint64_t i = 0; i < amps_.size() && next < draws.size(); ++i) {
        cum += std::norm(amps_[i]);
        while (next < draws.size() && draws[next] < cum) {
            ++counts[apply_readout_flips(i, num_qubits_, readout, rng)];
            ++next;
        }
    }
    // Guard against cum < 1 from rounding: dump remaining shots in the last
    // nonzero bin.
    if (next < draws.size()) {
        uint64_t last = amps_.size() - 1;
        while (last > 0 && std::norm(amps_[last]) == 0.0) --last;
        for (; next < draws.size(); ++next) {
            ++counts[apply_readout_flips(last, num_qubits_, readout, rng)];
        }
    }
    return counts;
}

uint64_t StateVector::sample_one(CounterRng& rng, const ReadoutError& readout) const {
    const double u = rng.uniform();
    double cum = 0.0;
    uint64_t drawn = amps_.size() - 1;
    for (uint64_t i = 0; i < amps_.size(); ++i) {
        cum += std::norm(amps_[i]);
        if (u < cum) {
            drawn = i;
            break;
        }
    }
    return apply_readout_flips(drawn, num_qubits_, readout, rng);
}

void StateVector::dump_amplitudes(const std::string& path) const {
    if (num_qubits_ > 20) throw std::invalid_argument("amplitude dump limited to 20 qubits");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    static_assert(sizeof(std::complex<double>) == 16);
    out.write(reinterpret_cast<const char*>(amps_.data()),
              static_cast<std::streamsize>(amps_.size() * sizeof(std::complex<double>)));
}

void StateVector::write_histogram_csv(const std::map<uint64_t, uint64_t>& counts, int num_qubits,
                                      const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << "bitstring,count\n";
    for (const auto& [index, count] : counts) {
        std::string bits(num_qubits, '0');
        for (int q = 0; q < num_qubits; ++q) {
            if (index & (uint64_t(1) << q)) bits[q] = '1';
        }
        out << bits << "," << count << "\n";
    }
}

}  // namespace hubsim
