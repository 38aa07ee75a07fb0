#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hubsim/circuit.hpp"
#include "hubsim/pauli.hpp"
#include "hubsim/rng.hpp"
#include "hubsim/statevector.hpp"

#include "json.hpp"

namespace hubsim {

// Stochastic Pauli noise: a uniform non-identity two-qubit Pauli with
// probability p2 after each CZ, a uniform X/Y/Z with probability p1 after each
// physical single-qubit gate (X, SX, RX; RZ is virtual and error-free), and an
// asymmetric readout flip channel. coherent_rz adds a deterministic RZ
// over-rotation on both qubits after every CZ (the structured error that
// twirling is meant to randomize).
struct NoiseModel {
    double p2 = 0.0;
    double p1 = 0.0;
    double p01 = 0.0;
    double p10 = 0.0;
    double coherent_rz = 0.0;
    uint64_t seed = 0;

    void validate() const;  // throws std::invalid_argument
    ReadoutError readout() const { return {p01, p10}; }
    bool any_noise() const {
        return p2 > 0.0 || p1 > 0.0 || p01 > 0.0 || p10 > 0.0 || coherent_rz != 0.0;
    }

    nlohmann::json to_json() const;
    static NoiseModel from_json(const nlohmann::json& j);
};

// Gate durations (arbitrary units) for idle-window computation.
struct DdSchedule {
    double dur_rz = 0.0;  // virtual
    double dur_1q = 1.0;  // X, SX, RX
    double dur_2q = 2.0;  // CZ, RZZ, CNOT
    double dur_h = 2.0;
    double dur_swap = 6.0;

    double duration(const Gate& gate) const;

    nlohmann::json to_json() const;
    static DdSchedule from_json(const nlohmann::json& j);
};

struct DdReport {
    long windows_filled = 0;
    long windows_skipped = 0;  // shorter than two X durations
};

enum class ZneFit { linear, quadratic, exponential };

const char* zne_fit_name(ZneFit fit);
ZneFit zne_fit_from_name(const std::string& name);

struct MitigationPlan {
    int trex_samples = 10;
    int twirl_instances = 10;
    std::vector<int> zne_factors = {1, 3, 5};
    ZneFit zne_fit = ZneFit::linear;
    bool dd_enabled = true;
    DdSchedule dd_schedule;

    void validate() const;  // factors odd, ascending, starting at 1; counts >= 1

    nlohmann::json to_json() const;
    static MitigationPlan from_json(const nlohmann::json& j);
};

// One CZ twirl: Paulis at positions (before q0, before q1, after q0, after q1)
// with (after0 x after1) CZ (before0 x before1) = CZ up to global phase.
struct TwirlQuad {
    char before0, before1, after0, after1;
};

// The 16 valid quadruples, found once by brute force over all 256 candidates.
const std::vector<TwirlQuad>& cz_twirl_set();

// Monte-Carlo estimate of <o> on c applied to |0...0>: per trajectory, Pauli
// errors are sampled after gates per the noise model and one readout-flipped
// bitstring is drawn. Terms with X/Y letters are measured through appended
// basis-rotation gates, grouped by rotation pattern (shots split per group).
double noisy_expectation(const QuantumCircuit& circuit, const PauliTermSum& observable,
                         const NoiseModel& noise, uint64_t shots, uint64_t seed);

// `instances` copies of `circuit` with every CZ wrapped in a random twirl
// quadruple (inserted as basis gates: Z = RZ(pi), Y = X then RZ(pi)). Each
// instance is unitary-equal to the input up to global phase. Requires a
// basis circuit whose only two-qubit gate is CZ.
std::vector<QuantumCircuit> pauli_twirl(const QuantumCircuit& circuit, int instances,
                                        uint64_t seed);

// Readout-twirled estimate of a Z-diagonal observable: per sample, a uniform
// flip mask is drawn, X gates are appended on masked qubits, and the mask is
// XORed back into measured bitstrings; sample estimates are averaged.
double apply_trex(const QuantumCircuit& circuit, const PauliTermSum& observable_diagonal,
                  int samples, uint64_t shots, const NoiseModel& noise, uint64_t seed);

// X pairs at the 1/4 and 3/4 points of every idle window of at least two X
// durations (windows computed from the timed ASAP schedule). Logical unitary
// is unchanged.
QuantumCircuit insert_dd(const QuantumCircuit& circuit, const DdSchedule& schedule,
                         DdReport* report = nullptr);

// Every CZ replaced by `factor` CZs (odd factor; CZ is self-inverse).
QuantumCircuit fold_cz(const QuantumCircuit& circuit, int factor);

struct ZneResult {
    double value = 0.0;  // extrapolated to noise scale 0
    std::vector<int> factors;
    std::vector<double> raw;                      // per-factor twirl-averaged estimates
    std::vector<std::vector<double>> per_twirl;   // [factor][instance]
    bool fit_ok = true;
    std::string fit_kind;
    std::string note;                             // fallback/diagnostic message
    std::vector<double> coefficients;             // fitted model parameters

    nlohmann::json to_json() const;
};

// Twirling + TREX estimation at every fold factor, then extrapolation to zero
// noise with the plan's fit model.
ZneResult zne_estimate(const QuantumCircuit& circuit, const PauliTermSum& observable,
                       const NoiseModel& noise, const MitigationPlan& plan, uint64_t shots,
                       uint64_t seed);

struct MitigatedValue {
    double value = 0.0;
    ZneResult zne;
    DdReport dd;
    nlohmann::json diagnostics;
};

// Full pipeline: decompose to basis, insert DD per plan, then zne_estimate
// (which runs the twirl instances, per-instance folds, and TREX estimation).
MitigatedValue mitigated_pipeline(const QuantumCircuit& circuit, const PauliTermSum& observable,
                                  const NoiseModel& noise, const MitigationPlan& plan,
                                  uint64_t shots, uint64_t seed);

// Test instrumentation: the coherent CZ over-rotation written out as explicit
// RZ gates, for exact (trajectory-free) evaluation of structured errors.
QuantumCircuit with_coherent_cz_error(const QuantumCircuit& circuit, double epsilon);

}  // namespace hubsim
