#include "hubsim/model.hpp"

#include <cmath>
#include <stdexcept>

namespace hubsim {

void HubbardParams::validate() const {
    if (num_sites < 1) throw std::invalid_argument("need at least one site");
    if (!std::isfinite(hopping) || !std::isfinite(interaction) || !std::isfinite(mu_up) ||
        !std::isfinite(mu_down)) {
        throw std::invalid_argument("model parameters must be finite");
    }
}

PauliTermSum build_hamiltonian(const HubbardParams& params) {
    params.validate();
    const std::size_t L = params.num_sites;
    PauliTermSum h(2 * L);

    // Hopping -t/2 (XX + YY) between neighbouring sites, per spin species.
    const double t_half = -params.hopping / 2.0;
    for (std::size_t j = 0; j + 1 < L; ++j) {
        for (std::size_t spin = 0; spin < 2; ++spin) {
            const std::size_t a = 2 * j + spin;
            const std::size_t b = 2 * (j + 1) + spin;
            h.add_at(t_half, {{a, 'X'}, {b, 'X'}});
            h.add_at(t_half, {{a, 'Y'}, {b, 'Y'}});
        }
    }

    // On-site interaction U n_up n_down = U/4 (II + ZZ - ZI - IZ).
    const double u_quarter = params.interaction / 4.0;
    for (std::size_t j = 0; j < L; ++j) {
        const std::size_t up = 2 * j;
        const std::size_t down = 2 * j + 1;
        h.add(u_quarter, std::string(2 * L, 'I'));
        h.add_at(u_quarter, {{up, 'Z'}, {down, 'Z'}});
        h.add_at(-u_quarter, {{up, 'Z'}});
        h.add_at(-u_quarter, {{down, 'Z'}});
    }

    // Chemical potential mu_s n = mu_s/2 (I - Z) per qubit.
    for (std::size_t j = 0; j < L; ++j) {
        for (std::size_t spin = 0; spin < 2; ++spin) {
            const double mu = spin == 0 ? params.mu_up : params.mu_down;
            if (mu == 0.0) continue;
            h.add(mu / 2.0, std::string(2 * L, 'I'));
            h.add_at(-mu / 2.0, {{2 * j + spin, 'Z'}});
        }
    }

    h.canonicalize();
    return h;
}

PauliTermSum neel_operator(std::size_t num_sites) {
    if (num_sites < 1) throw std::invalid_argument("need at least one site");
    PauliTermSum obs(2 * num_sites);
    const double w = 1.0 / (4.0 * static_cast<double>(num_sites));
    for (std::size_t j = 0; j < num_sites; ++j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        obs.add_at(sign * w, {{2 * j + 1, 'Z'}});
        obs.add_at(-sign * w, {{2 * j, 'Z'}});
    }
    obs.canonicalize();
    return obs;
}

PauliTermSum total_number_operator(std::size_t num_sites) {
    if (num_sites < 1) throw std::invalid_argument("need at least one site");
    PauliTermSum obs(2 * num_sites);
    for (std::size_t k = 0; k < 2 * num_sites; ++k) {
        obs.add(0.5, std::string(2 * num_sites, 'I'));
        obs.add_at(-0.5, {{k, 'Z'}});
    }
    obs.canonicalize();
    return obs;
}

PauliTermSum total_sz_operator(std::size_t num_sites) {
    if (num_sites < 1) throw std::invalid_argument("need at least one site");
    PauliTermSum obs(2 * num_sites);
    for (std::size_t j = 0; j < num_sites; ++j) {
        obs.add_at(0.25, {{2 * j + 1, 'Z'}});
        obs.add_at(-0.25, {{2 * j, 'Z'}});
    }
    obs.canonicalize();
    return obs;
}

PauliTermSum site_spin_xy_operator(std::size_t num_sites, std::size_t site, SpinAxis axis) {
    if (num_sites < 1) throw std::invalid_argument("need at least one site");
    if (site >= num_sites) throw std::invalid_argument("site index out of range");
    PauliTermSum obs(2 * num_sites);
    std::string first(2 * num_sites, 'I');
    for (std::size_t k = 0; k < 2 * site; ++k) first[k] = 'Z';
    std::string second = first;
    if (axis == SpinAxis::x) {
        first[2 * site] = 'X';
        first[2 * site + 1] = 'X';
        second[2 * site] = 'Y';
        second[2 * site + 1] = 'Y';
        obs.add(0.25, first);
        obs.add(0.25, second);
    } else {
        first[2 * site] = 'X';
        first[2 * site + 1] = 'Y';
        second[2 * site] = 'Y';
        second[2 * site + 1] = 'X';
        obs.add(0.25, first);
        obs.add(-0.25, second);
    }
    obs.canonicalize();
    return obs;
}

uint64_t BasisState::index() const {
    if (bits.size() > 64) throw std::invalid_argument("index() supports at most 64 qubits");
    uint64_t idx = 0;
    for (std::size_t k = 0; k < bits.size(); ++k) {
        if (bits[k]) idx |= uint64_t(1) << k;
    }
    return idx;
}

std::string BasisState::bit_string() const {
    std::string s(bits.size(), '0');
    for (std::size_t k = 0; k < bits.size(); ++k) s[k] = bits[k] ? '1' : '0';
    return s;
}

nlohmann::json BasisState::to_json() const { return {{"bits", bit_string()}}; }

BasisState BasisState::from_json(const nlohmann::json& j) {
    const auto s = j.at("bits").get<std::string>();
    BasisState state;
    state.bits.reserve(s.size());
    for (char c : s) {
        if (c != '0' && c != '1') throw std::invalid_argument("bit string must be 0/1");
        state.bits.push_back(c == '1' ? 1 : 0);
    }
    return state;
}

BasisState zeros_state(std::size_t num_qubits) {
    BasisState state;
    state.bits.assign(num_qubits, 0);
    return state;
}

BasisState neel_state(std::size_t num_sites) {
    if (num_sites < 1) throw std::invalid_argument("need at least one site");
    BasisState state = zeros_state(2 * num_sites);
    for (std::size_t j = 0; j < num_sites; ++j) {
        if (j % 2 == 0) {
            state.bits[2 * j] = 1;  // spin-up occupied on even sites
        } else {
            state.bits[2 * j + 1] = 1;  // spin-down occupied on odd sites
        }
    }
    return state;
}

}  // namespace hubsim
