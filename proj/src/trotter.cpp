#include "hubsim/trotter.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace hubsim {

const char* order_name(TrotterOrder order) {
    switch (order) {
        case TrotterOrder::first: return "first";
        case TrotterOrder::second: return "second";
        case TrotterOrder::second_optimized: return "second-optimized";
    }
    throw std::invalid_argument("unknown trotter order");
}

TrotterOrder order_from_name(const std::string& name) {
    if (name == "first") return TrotterOrder::first;
    if (name == "second") return TrotterOrder::second;
    if (name == "second-optimized") return TrotterOrder::second_optimized;
    throw std::invalid_argument("unknown trotter order '" + name + "'");
}

void TrotterPlan::validate() const {
    params.validate();
    if (steps < 1) throw std::invalid_argument("trotter steps must be >= 1");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("trotter dt must be positive");
}

QuantumCircuit u_t_gadget(double theta) {
    QuantumCircuit g(2);
    g.append(Gate::cnot(1, 0));
    g.append(Gate::h(1));
    g.append(Gate::rz(1, -theta + M_PI / 2.0));
    g.append(Gate::cnot(1, 0));
    g.append(Gate::rz(0, theta));
    g.append(Gate::h(1));
    g.append(Gate::cnot(1, 0));
    g.append(Gate::rx(0, M_PI / 2.0));
    g.append(Gate::rx(1, -M_PI / 2.0));
    return g;
}

QuantumCircuit u_U_gadget(double theta) {
    QuantumCircuit g(2);
    g.append(Gate::rz(0, -theta / 2.0));
    g.append(Gate::rz(1, -theta / 2.0));
    g.append(Gate::cnot(0, 1));
    g.append(Gate::rz(1, theta / 2.0));
    g.append(Gate::cnot(0, 1));
    return g;
}

QuantumCircuit u_mu_gadget(double beta_up, double beta_down) {
    QuantumCircuit g(2);
    g.append(Gate::rz(0, -beta_up));
    g.append(Gate::rz(1, -beta_down));
    return g;
}

namespace {

// SWAP positions (2j+1, 2j+2) of one layer, clipped at the boundary.
std::set<int> layer_swaps(std::size_t L, HoppingLayer which) {
    const std::size_t parity = which == HoppingLayer::layer1 ? 0 : 1;
    std::set<int> swaps;  // keyed by the lower qubit 2j+1
    for (std::size_t j = parity; j < L; j += 2) {
        if (2 * j + 2 < 2 * L) swaps.insert(static_cast<int>(2 * j + 1));
    }
    return swaps;
}

void append_layer(QuantumCircuit& circuit, std::size_t L, double theta, HoppingLayer which) {
    const std::set<int> swaps = layer_swaps(L, which);
    if (swaps.empty()) return;
    const QuantumCircuit gadget = u_t_gadget(theta);
    for (int a : swaps) circuit.append(Gate::swap(a, a + 1));
    for (std::size_t j = 0; j < L; ++j) {
        const int a = static_cast<int>(2 * j);
        // The gadget on (2j, 2j+1) couples an inter-site bond only when one of
        // this layer's SWAPs borders it; otherwise it would act within a site.
        const bool up_bond = swaps.count(a + 1) != 0 && j + 1 < L;
        const bool down_bond = swaps.count(a - 1) != 0;
        if (up_bond || down_bond) circuit.append_circuit(gadget, {a, a + 1});
    }
    for (int a : swaps) circuit.append(Gate::swap(a, a + 1));
}

void append_mu_column(QuantumCircuit& circuit, std::size_t L, double beta_up, double beta_down) {
    const QuantumCircuit gadget = u_mu_gadget(beta_up, beta_down);
    for (std::size_t j = 0; j < L; ++j) {
        circuit.append_circuit(gadget, {static_cast<int>(2 * j), static_cast<int>(2 * j + 1)});
    }
}

void append_interaction_column(QuantumCircuit& circuit, std::size_t L, double theta) {
    const QuantumCircuit gadget = u_U_gadget(theta);
    for (std::size_t j = 0; j < L; ++j) {
        circuit.append_circuit(gadget, {static_cast<int>(2 * j), static_cast<int>(2 * j + 1)});
    }
}

// Appends `block` followed by a barrier so macro-layers occupy disjoint column
// ranges; ASAP layering then reproduces the published depth bookkeeping.
template <typename F>
void macro_layer(QuantumCircuit& circuit, F&& append_block) {
    const std::size_t before = circuit.size();
    append_block(circuit);
    if (circuit.size() > before) circuit.barrier();
}

void maybe_prepare(QuantumCircuit& circuit, const TrotterPlan& plan) {
    if (!plan.prepare_neel) return;
    macro_layer(circuit, [&](QuantumCircuit& c) {
        const BasisState neel = neel_state(plan.params.num_sites);
        for (std::size_t k = 0; k < neel.bits.size(); ++k) {
            if (neel.bits[k]) c.append(Gate::x(static_cast<int>(k)));
        }
    });
}

}  // namespace

QuantumCircuit hopping_layer(std::size_t num_sites, double theta, HoppingLayer which) {
    if (num_sites < 1) throw std::invalid_argument("need at least one site");
    QuantumCircuit circuit(static_cast<int>(2 * num_sites));
    append_layer(circuit, num_sites, theta, which);
    return circuit;
}

QuantumCircuit neel_preparation(std::size_t num_sites) {
    const BasisState neel = neel_state(num_sites);
    QuantumCircuit circuit(static_cast<int>(2 * num_sites));
    for (std::size_t k = 0; k < neel.bits.size(); ++k) {
        if (neel.bits[k]) circuit.append(Gate::x(static_cast<int>(k)));
    }
    return circuit;
}

QuantumCircuit first_order_circuit(const TrotterPlan& plan) {
    plan.validate();
    const std::size_t L = plan.params.num_sites;
    QuantumCircuit circuit(static_cast<int>(2 * L));
    maybe_prepare(circuit, plan);
    for (int step = 0; step < plan.steps; ++step) {
        macro_layer(circuit, [&](QuantumCircuit& c) {
            append_mu_column(c, L, plan.beta_up(), plan.beta_down());
        });
        macro_layer(circuit,
                    [&](QuantumCircuit& c) { append_interaction_column(c, L, plan.theta_U()); });
        macro_layer(circuit, [&](QuantumCircuit& c) {
            append_layer(c, L, plan.theta_t(), HoppingLayer::layer1);
        });
        macro_layer(circuit, [&](QuantumCircuit& c) {
            append_layer(c, L, plan.theta_t(), HoppingLayer::layer2);
        });
    }
    return circuit;
}

QuantumCircuit second_order_circuit(const TrotterPlan& plan) {
    plan.validate();
    const std::size_t L = plan.params.num_sites;
    QuantumCircuit circuit(static_cast<int>(2 * L));
    maybe_prepare(circuit, plan);
    const double half_t = plan.theta_t() / 2.0;
    for (int step = 0; step < plan.steps; ++step) {
        macro_layer(circuit,
                    [&](QuantumCircuit& c) { append_interaction_column(c, L, plan.theta_U() / 2.0); });
        macro_layer(circuit, [&](QuantumCircuit& c) {
            append_mu_column(c, L, plan.beta_up() / 2.0, plan.beta_down() / 2.0);
        });
        macro_layer(circuit, [&](QuantumCircuit& c) { append_layer(c, L, half_t, HoppingLayer::layer1); });
        macro_layer(circuit, [&](QuantumCircuit& c) { append_layer(c, L, half_t, HoppingLayer::layer2); });
        macro_layer(circuit, [&](QuantumCircuit& c) { append_layer(c, L, half_t, HoppingLayer::layer2); });
        macro_layer(circuit, [&](QuantumCircuit& c) { append_layer(c, L, half_t, HoppingLayer::layer1); });
        macro_layer(circuit, [&](QuantumCircuit& c) {
            append_mu_column(c, L, plan.beta_up() / 2.0, plan.beta_down() / 2.0);
        });
        macro_layer(circuit,
                    [&](QuantumCircuit& c) { append_interaction_column(c, L, plan.theta_U() / 2.0); });
    }
    return circuit;
}

QuantumCircuit optimized_second_order_circuit(const TrotterPlan& plan) {
    plan.validate();
    const std::size_t L = plan.params.num_sites;
    QuantumCircuit circuit(static_cast<int>(2 * L));
    maybe_prepare(circuit, plan);
    const double half_t = plan.theta_t() / 2.0;
    // Inner block of one step: the two half-angle layer2 halves fuse into one
    // full-angle layer2; neighbouring U_U halves fuse across step boundaries.
    const auto inner_block = [&](QuantumCircuit& c) {
        macro_layer(c, [&](QuantumCircuit& cc) {
            append_mu_column(cc, L, plan.beta_up() / 2.0, plan.beta_down() / 2.0);
        });
        macro_layer(c, [&](QuantumCircuit& cc) { append_layer(cc, L, half_t, HoppingLayer::layer1); });
        macro_layer(c,
                    [&](QuantumCircuit& cc) { append_layer(cc, L, plan.theta_t(), HoppingLayer::layer2); });
        macro_layer(c, [&](QuantumCircuit& cc) { append_layer(cc, L, half_t, HoppingLayer::layer1); });
        macro_layer(c, [&](QuantumCircuit& cc) {
            append_mu_column(cc, L, plan.beta_up() / 2.0, plan.beta_down() / 2.0);
        });
    };
    macro_layer(circuit,
                [&](QuantumCircuit& c) { append_interaction_column(c, L, plan.theta_U() / 2.0); });
    inner_block(circuit);
    for (int step = 1; step < plan.steps; ++step) {
        macro_layer(circuit,
                    [&](QuantumCircuit& c) { append_interaction_column(c, L, plan.theta_U()); });
        inner_block(circuit);
    }
    macro_layer(circuit,
                [&](QuantumCircuit& c) { append_interaction_column(c, L, plan.theta_U() / 2.0); });
    return circuit;
}

QuantumCircuit build_trotter_circuit(const TrotterPlan& plan) {
    switch (plan.order) {
        case TrotterOrder::first: return first_order_circuit(plan);
        case TrotterOrder::second: return second_order_circuit(plan);
        case TrotterOrder::second_optimized: return optimized_second_order_circuit(plan);
    }
    throw std::invalid_argument("unknown trotter order");
}

}  // namespace hubsim
