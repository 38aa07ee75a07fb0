#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hubsim/pauli.hpp"

namespace hubsim {

// 1D chain of L sites, open boundaries, one spin-up and one spin-down mode per
// site. Site j maps to qubits 2j (up) and 2j+1 (down), so num_qubits = 2L.
// Occupation n = (I - Z)/2: bit value 1 means occupied.
struct HubbardParams {
    std::size_t num_sites = 2;
    double hopping = 1.0;       // t
    double interaction = 0.0;   // U
    double mu_up = 0.0;
    double mu_down = 0.0;

    std::size_t num_qubits() const { return 2 * num_sites; }
    void validate() const;  // throws std::invalid_argument
};

// Qubit Hamiltonian of the chain:
//   hopping      -t/2 (XX + YY) on (2j, 2j+2) and (2j+1, 2j+3), j = 0..L-2
//   interaction  U/4 (II + ZZ - ZI - IZ) on (2j, 2j+1) per site
//   chemical     mu_s/2 (I - Z) on each qubit of spin s
// Identity terms are retained; strip them with without_identity() if only the
// dynamics matter.
PauliTermSum build_hamiltonian(const HubbardParams& params);

// Staggered magnetization 1/(4L) sum_j (-1)^j (Z_{2j+1} - Z_{2j}).
PauliTermSum neel_operator(std::size_t num_sites);

// Total particle number 1/2 sum_k (I - Z_k) over all 2L qubits.
PauliTermSum total_number_operator(std::size_t num_sites);

// Total z magnetization 1/4 sum_j (Z_{2j+1} - Z_{2j}).
PauliTermSum total_sz_operator(std::size_t num_sites);

enum class SpinAxis { x, y };

// Single-site transverse spin with its fermionic-string prefix:
//   S^x_j = 1/4 Z_0 .. Z_{2j-1} (X_{2j} X_{2j+1} + Y_{2j} Y_{2j+1})
//   S^y_j = 1/4 Z_0 .. Z_{2j-1} (X_{2j} Y_{2j+1} - Y_{2j} X_{2j+1})
// The Z prefix is empty for j = 0.
PauliTermSum site_spin_xy_operator(std::size_t num_sites, std::size_t site, SpinAxis axis);

// Computational basis state on n qubits; bits[k] is the value of qubit k.
struct BasisState {
    std::vector<uint8_t> bits;

    std::size_t num_qubits() const { return bits.size(); }
    uint64_t index() const;        // sum bits[k] << k; requires <= 64 qubits
    std::string bit_string() const;  // qubit 0 first

    nlohmann::json to_json() const;
    static BasisState from_json(const nlohmann::json& j);
};

BasisState zeros_state(std::size_t num_qubits);

// Alternating half-filled pattern: even sites host a spin-up particle, odd
// sites a spin-down one, i.e. bits 1001 1001 ... over (up,down) qubit pairs.
BasisState neel_state(std::size_t num_sites);

}  // namespace hubsim
