#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "hubsim/circuit.hpp"
#include "hubsim/model.hpp"
#include "hubsim/trotter.hpp"
#include "oracles.hpp"

using hubsim::Gate;
using hubsim::GateKind;
using hubsim::HubbardParams;
using hubsim::QuantumCircuit;
using hubsim::TrotterOrder;
using hubsim::TrotterPlan;

namespace {

HubbardParams small_params(std::size_t L, double t, double U, double mu_up = 0.0,
                           double mu_down = 0.0) {
    HubbardParams p;
    p.num_sites = L;
    p.hopping = t;
    p.interaction = U;
    p.mu_up = mu_up;
    p.mu_down = mu_down;
    return p;
}

// exp(-i tau H) for the model, dense.
oracle::Mat exact_step(const HubbardParams& p, double tau) {
    return oracle::evolve_dense(oracle::dense_operator(hubsim::build_hamiltonian(p)), tau);
}

}  // namespace

TEST_SUITE("trotter") {

TEST_CASE("plan validation and derived angles") {
    TrotterPlan plan;
    plan.params = small_params(3, 1.5, 2.0, 0.3, 0.4);
    plan.steps = 4;
    plan.dt = 0.25;
    CHECK_NOTHROW(plan.validate());
    CHECK(plan.theta_t() == doctest::Approx(1.5 * 0.25));
    CHECK(plan.theta_U() == doctest::Approx(2.0 * 0.25));
    CHECK(plan.beta_up() == doctest::Approx(0.3 * 0.25));
    CHECK(plan.beta_down() == doctest::Approx(0.4 * 0.25));
    CHECK(plan.total_time() == doctest::Approx(1.0));

    plan.steps = 0;
    CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
    plan.steps = 1;
    plan.dt = 0.0;
    CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
}

TEST_CASE("hopping gadget at zero angle is the identity") {
    const QuantumCircuit g = hubsim::u_t_gadget(0.0);
    CHECK(oracle::phase_distance(hubsim::circuit_unitary(g), oracle::Mat::Identity(4, 4)) <
          1e-12);
}

TEST_CASE("hopping gadget at quarter turn performs a full hop") {
    const QuantumCircuit g = hubsim::u_t_gadget(std::numbers::pi / 2.0);
    const oracle::Mat u = hubsim::circuit_unitary(g);
    // |01> (qubit 0 occupied, index 1) maps to |10> (index 2) up to phase
    CHECK(std::abs(std::abs(u(2, 1)) - 1.0) < 1e-12);
    CHECK(std::abs(u(1, 1)) < 1e-12);
    CHECK(std::abs(std::abs(u(1, 2)) - 1.0) < 1e-12);
    // occupation sectors 0 and 2 are untouched
    CHECK(std::abs(std::abs(u(0, 0)) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(u(3, 3)) - 1.0) < 1e-12);
}

TEST_CASE("hopping gadget equals the two-site exponential") {
    // generator (XX + YY)/2 with angle sign fixed against e^{-iH dt} for
    // coefficient -t/2
    for (double theta : {0.37, -0.8, 1.9}) {
        CAPTURE(theta);
        hubsim::PauliTermSum gen(2);
        gen.add(-0.5, "XX");
        gen.add(-0.5, "YY");
        const oracle::Mat expected = oracle::evolve_dense(oracle::dense_operator(gen), theta);
        const oracle::Mat actual = hubsim::circuit_unitary(hubsim::u_t_gadget(theta));
        CHECK(oracle::phase_distance(actual, expected) < 1e-12);
    }
}

TEST_CASE("hopping gadget uses the printed gate sequence") {
    const QuantumCircuit g = hubsim::u_t_gadget(0.37);
    REQUIRE(g.size() == 9);
    CHECK(g.gates()[0].kind == GateKind::CNOT);
    CHECK(g.gates()[3].kind == GateKind::CNOT);
    CHECK(g.gates()[6].kind == GateKind::CNOT);
    CHECK(hubsim::depth(g) == 7);
    int rx = 0;
    for (const Gate& gate : g.gates())
        if (gate.kind == GateKind::RX) ++rx;
    CHECK(rx == 2);
}

TEST_CASE("interaction gadget is diagonal with the density-density phases") {
    for (double theta : {0.0, 0.81, -1.3}) {
        CAPTURE(theta);
        hubsim::PauliTermSum gen(2);
        gen.add(0.25, "ZZ");
        gen.add(-0.25, "ZI");
        gen.add(-0.25, "IZ");
        const oracle::Mat expected = oracle::evolve_dense(oracle::dense_operator(gen), theta);
        const oracle::Mat actual = hubsim::circuit_unitary(hubsim::u_U_gadget(theta));
        CHECK(oracle::phase_distance(actual, expected) < 1e-12);
    }
}

TEST_CASE("interaction gadget: doubly occupied pair picks up the full phase") {
    const double theta = 0.81;
    const oracle::Mat u = hubsim::circuit_unitary(hubsim::u_U_gadget(theta));
    // off-diagonal must vanish
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) CHECK(std::abs(u(i, j)) < 1e-13);
    // relative phase of |11> against |00> is e^{-i theta}
    const std::complex<double> rel = u(3, 3) / u(0, 0);
    CHECK(std::abs(rel - std::exp(std::complex<double>(0.0, -theta))) < 1e-12);
    // singly occupied states carry no interaction phase
    CHECK(std::abs(u(1, 1) / u(0, 0) - 1.0) < 1e-12);
    CHECK(std::abs(u(2, 2) / u(0, 0) - 1.0) < 1e-12);
}

TEST_CASE("interaction gadget composes additively") {
    const double a = 0.45, b = -1.2;
    QuantumCircuit both(2);
    both.append_circuit(hubsim::u_U_gadget(a));
    both.append_circuit(hubsim::u_U_gadget(b));
    CHECK(oracle::phase_distance(hubsim::circuit_unitary(both),
                                 hubsim::circuit_unitary(hubsim::u_U_gadget(a + b))) < 1e-12);
}

TEST_CASE("chemical gadget applies the density phases per species") {
    const double bu = 0.3, bd = -0.7;
    const oracle::Mat u = hubsim::circuit_unitary(hubsim::u_mu_gadget(bu, bd));
    // generator beta_up n_0 + beta_down n_1 with n = (I - Z)/2
    hubsim::PauliTermSum gen(2);
    gen.add(0.5 * bu + 0.5 * bd, "II");
    gen.add(-0.5 * bu, "ZI");
    gen.add(-0.5 * bd, "IZ");
    const oracle::Mat expected = oracle::evolve_dense(oracle::dense_operator(gen), 1.0);
    CHECK(oracle::phase_distance(u, expected) < 1e-12);

    CHECK(oracle::phase_distance(hubsim::circuit_unitary(hubsim::u_mu_gadget(0.0, 0.0)),
                                 oracle::Mat::Identity(4, 4)) < 1e-13);
}

TEST_CASE("hopping layer swap placement") {
    const QuantumCircuit l1 = hubsim::hopping_layer(4, 0.3, hubsim::HoppingLayer::layer1);
    std::vector<std::pair<int, int>> swaps1;
    for (const Gate& g : l1.gates())
        if (g.kind == GateKind::SWAP) swaps1.emplace_back(g.q0, g.q1);
    // leading and trailing swap rails on (1,2) and (5,6)
    REQUIRE(swaps1.size() == 4);
    CHECK(swaps1[0] == std::make_pair(1, 2));
    CHECK(swaps1[1] == std::make_pair(5, 6));
    CHECK(swaps1[2] == std::make_pair(1, 2));
    CHECK(swaps1[3] == std::make_pair(5, 6));

    const QuantumCircuit l2 = hubsim::hopping_layer(4, 0.3, hubsim::HoppingLayer::layer2);
    std::vector<std::pair<int, int>> swaps2;
    for (const Gate& g : l2.gates())
        if (g.kind == GateKind::SWAP) swaps2.emplace_back(g.q0, g.q1);
    REQUIRE(swaps2.size() == 2);
    CHECK(swaps2[0] == std::make_pair(3, 4));
    CHECK(swaps2[1] == std::make_pair(3, 4));
}

TEST_CASE("two-site chain: layer1 carries both hops, layer2 none") {
    const QuantumCircuit l1 = hubsim::hopping_layer(2, 0.3, hubsim::HoppingLayer::layer1);
    int swaps = 0, hops = 0;
    for (const Gate& g : l1.gates()) {
        if (g.kind == GateKind::SWAP) ++swaps;
        if (g.kind == GateKind::CNOT) ++hops;  // three CNOTs per hopping gadget
    }
    CHECK(swaps == 2);
    CHECK(hops == 6);  // two gadgets

    const QuantumCircuit l2 = hubsim::hopping_layer(2, 0.3, hubsim::HoppingLayer::layer2);
    for (const Gate& g : l2.gates()) CHECK(g.kind != GateKind::CNOT);
}

TEST_CASE("combined hopping layers approximate the hopping evolution") {
    // error vs the exact hopping exponential must shrink ~4x when dt halves
    const HubbardParams p = small_params(3, 1.0, 0.0);
    auto layer_error = [&](double dt) {
        QuantumCircuit c(6);
        c.append_circuit(hubsim::hopping_layer(3, dt, hubsim::HoppingLayer::layer1));
        c.append_circuit(hubsim::hopping_layer(3, dt, hubsim::HoppingLayer::layer2));
        const oracle::Mat u = hubsim::circuit_unitary(c);
        return oracle::phase_distance(u, exact_step(p, dt));
    };
    const double e1 = layer_error(0.2);
    const double e2 = layer_error(0.1);
    CHECK(e1 / e2 > 3.0);
    CHECK(e1 / e2 < 5.0);
    CHECK(e2 < 0.01);
}

TEST_CASE("every two-qubit gate acts on adjacent wires") {
    for (auto order : {TrotterOrder::first, TrotterOrder::second, TrotterOrder::second_optimized}) {
        for (std::size_t L : {2, 3, 5, 8}) {
            CAPTURE(hubsim::order_name(order));
            CAPTURE(L);
            TrotterPlan plan;
            plan.order = order;
            plan.params = small_params(L, 1.0, 1.0, 0.2, 0.1);
            plan.steps = 2;
            plan.dt = 0.4;
            const QuantumCircuit c = hubsim::build_trotter_circuit(plan);
            for (const Gate& g : c.gates()) {
                if (g.is_two_qubit()) CHECK(std::abs(g.q0 - g.q1) == 1);
            }
        }
    }
}

TEST_CASE("first-order depth figures") {
    for (std::size_t L : {4, 10, 52}) {
        CAPTURE(L);
        for (int r : {1, 2, 3}) {
            TrotterPlan plan;
            plan.params = small_params(L, 1.0, 1.0);
            plan.order = TrotterOrder::first;
            plan.steps = r;
            plan.dt = 0.5;
            CHECK(hubsim::depth(hubsim::build_trotter_circuit(plan)) == 23 * r);
        }
    }
}

TEST_CASE("second-order and optimized depth figures") {
    for (std::size_t L : {4, 10}) {
        CAPTURE(L);
        for (int r : {1, 2, 4}) {
            TrotterPlan plan;
            plan.params = small_params(L, 1.0, 1.0);
            plan.dt = 0.5;
            plan.steps = r;
            plan.order = TrotterOrder::second;
            CHECK(hubsim::depth(hubsim::build_trotter_circuit(plan)) == 46 * r);
            plan.order = TrotterOrder::second_optimized;
            CHECK(hubsim::depth(hubsim::build_trotter_circuit(plan)) == 33 * r + 4);
        }
    }
}

TEST_CASE("depth is independent of chain length") {
    for (auto order : {TrotterOrder::first, TrotterOrder::second, TrotterOrder::second_optimized}) {
        TrotterPlan plan;
        plan.order = order;
        plan.dt = 0.3;
        plan.steps = 2;
        plan.params = small_params(2, 1.0, 1.0);
        int reference = -1;
        for (std::size_t L = 3; L <= 64; L += 7) {
            plan.params.num_sites = L;
            const int d = hubsim::depth(hubsim::build_trotter_circuit(plan));
            if (reference < 0) reference = d;
            CHECK(d == reference);
        }
    }
}

TEST_CASE("first-order step approximates the full evolution") {
    const HubbardParams p = small_params(2, 1.0, 1.0);
    auto step_error = [&](double dt) {
        TrotterPlan plan;
        plan.params = p;
        plan.order = TrotterOrder::first;
        plan.steps = 1;
        plan.dt = dt;
        const oracle::Mat u = hubsim::circuit_unitary(hubsim::build_trotter_circuit(plan));
        return oracle::phase_distance(u, exact_step(p, dt));
    };
    CHECK(step_error(0.1) < 5e-3);
    const double ratio = step_error(0.2) / step_error(0.1);
    CHECK(ratio > 2.9);  // second-order local error: halving dt quarters it
    CHECK(ratio < 5.1);
}

TEST_CASE("optimized second order equals plain second order") {
    TrotterPlan plan;
    plan.params = small_params(3, 1.1, 0.7, 0.23, -0.31);
    plan.dt = 0.37;
    plan.steps = 3;
    plan.order = TrotterOrder::second;
    const oracle::Mat u2 = hubsim::circuit_unitary(hubsim::build_trotter_circuit(plan));
    plan.order = TrotterOrder::second_optimized;
    const oracle::Mat uo = hubsim::circuit_unitary(hubsim::build_trotter_circuit(plan));
    CHECK(oracle::phase_distance(uo, u2) < 1e-10);
}

TEST_CASE("global error exponents match the advertised orders") {
    const HubbardParams p = small_params(3, 1.0, 1.0);
    const double tau = 1.0;
    const oracle::Mat exact = exact_step(p, tau);
    auto global_error = [&](TrotterOrder order, double dt) {
        TrotterPlan plan;
        plan.params = p;
        plan.order = order;
        plan.dt = dt;
        plan.steps = static_cast<int>(std::lround(tau / dt));
        return oracle::phase_distance(hubsim::circuit_unitary(hubsim::build_trotter_circuit(plan)),
                                      exact);
    };
    auto fitted_exponent = [&](TrotterOrder order) {
        const double dts[3] = {0.2, 0.1, 0.05};
        double xs[3], ys[3];
        for (int i = 0; i < 3; ++i) {
            xs[i] = std::log(dts[i]);
            ys[i] = std::log(global_error(order, dts[i]));
        }
        // least-squares slope through three points
        const double mx = (xs[0] + xs[1] + xs[2]) / 3.0;
        const double my = (ys[0] + ys[1] + ys[2]) / 3.0;
        double num = 0.0, den = 0.0;
        for (int i = 0; i < 3; ++i) {
            num += (xs[i] - mx) * (ys[i] - my);
            den += (xs[i] - mx) * (xs[i] - mx);
        }
        return num / den;
    };
    CHECK(std::abs(fitted_exponent(TrotterOrder::first) - 1.0) < 0.2);
    CHECK(std::abs(fitted_exponent(TrotterOrder::second) - 2.0) < 0.2);
    CHECK(std::abs(fitted_exponent(TrotterOrder::second_optimized) - 2.0) < 0.2);
}

TEST_CASE("state preparation is one layer of X gates") {
    const QuantumCircuit prep = hubsim::neel_preparation(4);
    CHECK(hubsim::depth(prep) == 1);
    for (const Gate& g : prep.gates()) CHECK(g.kind == GateKind::X);
    // target pattern 1001 1001: X on qubits 0,3,4,7
    std::vector<int> targets;
    for (const Gate& g : prep.gates()) targets.push_back(g.q0);
    CHECK(targets == std::vector<int>{0, 3, 4, 7});
}

TEST_CASE("plan with preparation prepends the X layer") {
    TrotterPlan plan;
    plan.params = small_params(2, 1.0, 1.0);
    plan.steps = 1;
    plan.dt = 0.2;
    plan.prepare_neel = true;
    const QuantumCircuit c = hubsim::build_trotter_circuit(plan);
    REQUIRE(c.size() > 2);
    CHECK(c.gates()[0].kind == GateKind::X);
    CHECK(c.gates()[0].q0 == 0);
    CHECK(c.gates()[1].kind == GateKind::X);
    CHECK(c.gates()[1].q0 == 3);
}

}  // TEST_SUITE
