#pragma once

#include "hubsim/circuit.hpp"
#include "hubsim/model.hpp"

namespace hubsim {

enum class TrotterOrder { first, second, second_optimized };

const char* order_name(TrotterOrder order);
TrotterOrder order_from_name(const std::string& name);

// Product-formula plan: r steps of size dt (hbar = 1, so angles are
// theta_t = t*dt, theta_U = U*dt, beta = mu*dt).
struct TrotterPlan {
    TrotterOrder order = TrotterOrder::first;
    int steps = 1;
    double dt = 0.1;
    HubbardParams params;
    bool prepare_neel = false;

    double total_time() const { return steps * dt; }
    double theta_t() const { return params.hopping * dt; }
    double theta_U() const { return params.interaction * dt; }
    double beta_up() const { return params.mu_up * dt; }
    double beta_down() const { return params.mu_down * dt; }

    void validate() const;  // throws std::invalid_argument
};

// Hopping gadget on an adjacent pair (qubit 0 = even member, qubit 1 = odd):
// equals exp(+i (theta/2) (XX + YY)) up to global phase, which is the step
// generated by a -t/2 (XX + YY) bond over time dt with theta = t*dt.
// The gate sequence follows the published diagram; the theta-dependent RZ
// angles carry the opposite sign, fixed once numerically against the
// matrix exponential (the structural pi/2 offsets are unchanged).
QuantumCircuit u_t_gadget(double theta);

// Interaction gadget on (even, odd) of one site: exp(-i (theta/4) (ZZ - ZI - IZ))
// up to global phase; same sign convention note as u_t_gadget.
QuantumCircuit u_U_gadget(double theta);

// Chemical-potential column on one site pair: RZ(-beta_up) on the even qubit,
// RZ(-beta_down) on the odd one; equals exp(-i beta n) per qubit up to phase.
QuantumCircuit u_mu_gadget(double beta_up, double beta_down);

enum class HoppingLayer { layer1 = 1, layer2 = 2 };

// One SWAP-sandwiched hopping layer on 2L qubits: SWAPs at (2j+1, 2j+2) for
// even j (layer1) or odd j (layer2), clipped at the boundary; then u_t on every
// site pair (2j, 2j+1) adjacent to one of this layer's SWAPs (each such gadget
// reaches exactly one inter-site bond through the SWAPs); then the SWAPs again.
QuantumCircuit hopping_layer(std::size_t num_sites, double theta, HoppingLayer which);

// r repetitions of [U_mu | U_U | layer1 | layer2]; a barrier after each
// macro-layer keeps the published column structure (single step depth 23).
QuantumCircuit first_order_circuit(const TrotterPlan& plan);

// r repetitions of the palindromic step
// [U_U/2 | U_mu/2 | L1/2 | L2/2 | L2/2 | L1/2 | U_mu/2 | U_U/2] (depth 46).
QuantumCircuit second_order_circuit(const TrotterPlan& plan);

// Merged form: U_U/2 at both ends, full U_U between steps, and inside each
// step the two half-angle layer2 applications fused into one full-angle
// layer2 (total depth 33r + 4). Unitary-equal to second_order_circuit.
QuantumCircuit optimized_second_order_circuit(const TrotterPlan& plan);

// Dispatch on plan.order.
QuantumCircuit build_trotter_circuit(const TrotterPlan& plan);

// X column writing the alternating half-filled pattern onto |0...0>.
QuantumCircuit neel_preparation(std::size_t num_sites);

}  // namespace hubsim
