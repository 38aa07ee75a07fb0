#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "hubsim/circuit.hpp"
#include "hubsim/rng.hpp"
#include "hubsim/trotter.hpp"
#include "oracles.hpp"

using hubsim::CounterRng;
using hubsim::Gate;
using hubsim::GateKind;
using hubsim::QuantumCircuit;

TEST_SUITE("circuit") {

TEST_CASE("append validates qubits and angles") {
    QuantumCircuit c(2);
    CHECK_THROWS_AS(c.append(Gate::x(2)), std::invalid_argument);
    CHECK_THROWS_AS(c.append(Gate::cz(0, 5)), std::invalid_argument);
    CHECK_THROWS_AS(c.append(Gate::cz(1, 1)), std::invalid_argument);
    CHECK_THROWS_AS(c.append(Gate::rz(0, std::nan(""))), std::invalid_argument);
    CHECK_NOTHROW(c.append(Gate::rzz(0, 1, 0.5)));
    CHECK_THROWS_AS(QuantumCircuit(0), std::invalid_argument);
}

TEST_CASE("depth of the empty circuit is zero") {
    QuantumCircuit c(3);
    CHECK(hubsim::depth(c) == 0);
    CHECK(hubsim::two_qubit_depth(c) == 0);
    const auto report = hubsim::gate_counts(c);
    CHECK(report.total_depth == 0);
    CHECK(report.twoq_depth == 0);
    CHECK(report.total_gates == 0);
    CHECK(report.twoq_gates == 0);
}

TEST_CASE("parallel single-qubit gates pack into one layer") {
    QuantumCircuit c(2);
    c.append(Gate::rz(0, 0.1));
    c.append(Gate::rz(1, 0.2));
    c.append(Gate::cnot(0, 1));
    CHECK(hubsim::depth(c) == 2);
    CHECK(hubsim::two_qubit_depth(c) == 1);
}

TEST_CASE("hopping gadget occupies seven columns") {
    const QuantumCircuit g = hubsim::u_t_gadget(0.37);
    CHECK(hubsim::depth(g) == 7);
}

TEST_CASE("interaction gadget occupies four columns") {
    const QuantumCircuit g = hubsim::u_U_gadget(0.81);
    CHECK(hubsim::depth(g) == 4);
}

TEST_CASE("barrier forces a fresh layer without counting itself") {
    QuantumCircuit a(2);
    a.append(Gate::rz(0, 0.1));
    a.barrier();
    a.append(Gate::rz(1, 0.2));
    CHECK(hubsim::depth(a) == 2);  // without the barrier these would share a layer

    QuantumCircuit b(2);
    b.append(Gate::rz(0, 0.1));
    b.append(Gate::rz(1, 0.2));
    CHECK(hubsim::depth(b) == 1);

    QuantumCircuit empty_with_barrier(2);
    empty_with_barrier.barrier();
    CHECK(hubsim::depth(empty_with_barrier) == 0);
}

TEST_CASE("depth ignores gates on fresh disjoint qubits at layer one") {
    CounterRng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        QuantumCircuit c = oracle::random_circuit(3, 12, rng, false);
        const int base = hubsim::depth(c);
        // re-stage the same gate list on a wider register plus one untouched gate
        QuantumCircuit wide(4);
        wide.append(Gate::x(3));
        for (const Gate& g : c.gates()) wide.append(g);
        CHECK(hubsim::depth(wide) == std::max(base, 1));
    }
}

TEST_CASE("filtered depth counts only layers containing matching gates") {
    QuantumCircuit c(2);
    c.append(Gate::rz(0, 0.3));
    c.append(Gate::cz(0, 1));
    c.append(Gate::rz(1, 0.4));
    c.append(Gate::cz(0, 1));
    const int cz_layers =
        hubsim::depth(c, [](const Gate& g) { return g.kind == GateKind::CZ; });
    CHECK(cz_layers == 2);
    CHECK(hubsim::depth(c) == 4);
}

TEST_CASE("gate_counts bookkeeping") {
    QuantumCircuit c(3);
    c.append(Gate::swap(0, 1));
    const auto swap_only = hubsim::gate_counts(c);
    CHECK(swap_only.total_depth == 1);
    CHECK(swap_only.twoq_depth == 1);
    CHECK(swap_only.counts.at("swap") == 1);
    CHECK(swap_only.total_gates == 1);
    CHECK(swap_only.twoq_gates == 1);

    c.append(Gate::x(2));
    c.barrier();
    c.append(Gate::rz(0, 1.0));
    const auto mixed = hubsim::gate_counts(c);
    CHECK(mixed.total_gates == 3);  // barrier excluded
    CHECK(mixed.counts.at("x") == 1);
    CHECK(mixed.counts.at("rz") == 1);
    CHECK(mixed.counts.count("barrier") == 0);
    CHECK(mixed.twoq_depth <= mixed.total_depth);
}

TEST_CASE("gate_counts total matches list length excluding barriers") {
    CounterRng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        QuantumCircuit c = oracle::random_circuit(4, 30, rng, false);
        std::size_t barriers = 2;
        c.barrier();
        c.barrier();
        const auto report = hubsim::gate_counts(c);
        CHECK(report.total_gates == c.size() - barriers);
        std::size_t from_counts = 0;
        for (const auto& [kind, n] : report.counts) from_counts += n;
        CHECK(from_counts == report.total_gates);
    }
}

TEST_CASE("unitary of elementary gates") {
    QuantumCircuit empty(1);
    CHECK(oracle::phase_distance(hubsim::circuit_unitary(empty),
                                 oracle::Mat::Identity(2, 2)) < 1e-14);

    QuantumCircuit x(1);
    x.append(Gate::x(0));
    oracle::Mat xm(2, 2);
    xm << 0, 1, 1, 0;
    CHECK((hubsim::circuit_unitary(x) - xm).cwiseAbs().maxCoeff() < 1e-14);

    QuantumCircuit cz(2);
    cz.append(Gate::cz(0, 1));
    oracle::Mat czm = oracle::Mat::Identity(4, 4);
    czm(3, 3) = -1.0;
    CHECK((hubsim::circuit_unitary(cz) - czm).cwiseAbs().maxCoeff() < 1e-14);

    // RZZ(theta) = diag(e^{-i t/2}, e^{i t/2}, e^{i t/2}, e^{-i t/2})
    const double theta = 0.7;
    QuantumCircuit rzz(2);
    rzz.append(Gate::rzz(0, 1, theta));
    oracle::Mat expect = oracle::Mat::Zero(4, 4);
    const std::complex<double> minus = std::exp(std::complex<double>(0, -theta / 2));
    const std::complex<double> plus = std::exp(std::complex<double>(0, theta / 2));
    expect.diagonal() << minus, plus, plus, minus;
    CHECK((hubsim::circuit_unitary(rzz) - expect).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("circuit_unitary is unitary for random circuits") {
    CounterRng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const QuantumCircuit c = oracle::random_circuit(3, 25, rng, false);
        const oracle::Mat u = hubsim::circuit_unitary(c);
        const oracle::Mat gram = u.adjoint() * u;
        CHECK((gram - oracle::Mat::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("circuit_unitary rejects wide circuits") {
    QuantumCircuit c(11);
    CHECK_THROWS_AS(hubsim::circuit_unitary(c), std::invalid_argument);
}

TEST_CASE("basis decomposition emits only hardware gates") {
    CounterRng rng(47);
    for (int trial = 0; trial < 20; ++trial) {
        const QuantumCircuit c = oracle::random_circuit(4, 20, rng, false);
        const QuantumCircuit d = hubsim::decompose_to_basis(c);
        for (const Gate& g : d.gates()) {
            const bool ok = g.kind == GateKind::X || g.kind == GateKind::SX ||
                            g.kind == GateKind::RX || g.kind == GateKind::RZ ||
                            g.kind == GateKind::CZ || g.kind == GateKind::RZZ;
            CHECK(ok);
        }
    }
}

TEST_CASE("basis decomposition preserves the unitary up to global phase") {
    CounterRng rng(53);
    for (int trial = 0; trial < 100; ++trial) {
        const QuantumCircuit c = oracle::random_circuit(4, 18, rng, false);
        const QuantumCircuit d = hubsim::decompose_to_basis(c);
        CHECK(oracle::phase_distance(hubsim::circuit_unitary(d), hubsim::circuit_unitary(c)) <
              1e-10);
    }
}

TEST_CASE("swap decomposition checked against the dense matrix") {
    QuantumCircuit c(2);
    c.append(Gate::swap(0, 1));
    const QuantumCircuit d = hubsim::decompose_to_basis(c);
    oracle::Mat swap_m = oracle::Mat::Identity(4, 4);
    swap_m.row(1).swap(swap_m.row(2));
    CHECK(oracle::phase_distance(hubsim::circuit_unitary(d), swap_m) < 1e-12);
    for (const Gate& g : d.gates()) CHECK(g.kind != GateKind::SWAP);
}

TEST_CASE("rz passes through decomposition untouched") {
    QuantumCircuit c(1);
    c.append(Gate::rz(0, 0.9));
    const QuantumCircuit d = hubsim::decompose_to_basis(c);
    REQUIRE(d.size() == 1);
    CHECK(d.gates()[0].kind == GateKind::RZ);
    CHECK(d.gates()[0].theta == doctest::Approx(0.9));
}

TEST_CASE("text round trip") {
    CounterRng rng(61);
    QuantumCircuit c = oracle::random_circuit(4, 25, rng, false);
    c.barrier();
    c.append(Gate::rz(2, -0.25));
    const std::string text = c.to_text();
    const QuantumCircuit back = QuantumCircuit::from_text(text);
    REQUIRE(back.size() == c.size());
    REQUIRE(back.num_qubits() == c.num_qubits());
    for (std::size_t i = 0; i < c.size(); ++i) {
        CHECK(back.gates()[i].kind == c.gates()[i].kind);
        CHECK(back.gates()[i].q0 == c.gates()[i].q0);
        CHECK(back.gates()[i].q1 == c.gates()[i].q1);
        CHECK(back.gates()[i].theta == doctest::Approx(c.gates()[i].theta).epsilon(1e-15));
    }
}

TEST_CASE("json round trip preserves unitary exactly") {
    CounterRng rng(67);
    const QuantumCircuit c = oracle::random_circuit(3, 15, rng, false);
    const QuantumCircuit back = QuantumCircuit::from_json(c.to_json());
    CHECK((hubsim::circuit_unitary(back) - hubsim::circuit_unitary(c)).cwiseAbs().maxCoeff() <
          1e-14);
}

TEST_CASE("from_text rejects malformed input") {
    CHECK_THROWS_AS(QuantumCircuit::from_text("qubits 2\nwobble 0\n"), std::invalid_argument);
    CHECK_THROWS_AS(QuantumCircuit::from_text("cz 0 1\n"), std::invalid_argument);
}

TEST_CASE("append_circuit with a qubit map relocates gates") {
    QuantumCircuit inner(2);
    inner.append(Gate::cz(0, 1));
    inner.append(Gate::rz(1, 0.5));
    QuantumCircuit outer(4);
    outer.append_circuit(inner, {2, 3});
    REQUIRE(outer.size() == 2);
    CHECK(outer.gates()[0].q0 == 2);
    CHECK(outer.gates()[0].q1 == 3);
    CHECK(outer.gates()[1].q0 == 3);
}

}  // TEST_SUITE
