#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hubsim/circuit.hpp"
#include "hubsim/pauli.hpp"
#include "hubsim/rng.hpp"

// Independent dense-linear-algebra routes used to adjudicate the library's
// fast paths. Everything here is brute force on purpose: different code,
// different conventions source (built straight from definitions), small sizes.
namespace oracle {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

Eigen::Matrix2cd pauli_matrix_1q(char letter);

// Dense operator with qubit k addressing bit k of the row/column index.
Mat pauli_string_matrix(const std::string& letters);
Mat dense_operator(const hubsim::PauliTermSum& sum);

// Fermionic annihilation operator under the species-local mapping: spin-up
// modes sit on even qubits with Z strings over the earlier even qubits,
// spin-down modes on odd qubits with strings over the earlier odd qubits.
// Kronecker-product construction.
Mat annihilation_dense(std::size_t num_sites, std::size_t site, bool spin_down);

// Same operator built by occupation-number bit rules (clear the target bit,
// sign = parity of the string bits); used to cross-check the kron route and
// to assemble Hamiltonians cheaply.
Mat annihilation_bits(std::size_t num_sites, std::size_t site, bool spin_down);

// Dense chain Hamiltonian assembled from ladder-operator bit rules:
//   -t sum_{j,a} (c+_{j,a} c_{j+1,a} + h.c.) + U sum_j n_{j,up} n_{j,down}
//   + sum_{j,a} mu_a n_{j,a}
Mat jw_hubbard_dense(std::size_t num_sites, double t, double U, double mu_up, double mu_down);

// exp(-i tau h) for Hermitian h via full eigendecomposition.
Mat evolve_dense(const Mat& h, double tau);

// max entrywise |a - phase * b| minimized over unit-modulus phase.
double phase_distance(const Mat& a, const Mat& b);
double phase_distance(const Vec& a, const Vec& b);

// Random circuit for property tests; basis_only restricts to the hardware set
// {X, SX, RX, RZ, CZ} (so twirling applies), otherwise all gate kinds appear.
// adjacent_only keeps two-qubit gates on neighbouring wires.
hubsim::QuantumCircuit random_circuit(int num_qubits, int num_gates, hubsim::CounterRng& rng,
                                      bool basis_only, bool adjacent_only = false);

}  // namespace oracle
