#include "hubsim/mitigation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace hubsim {

namespace {

constexpr double kPi = std::numbers::pi;

// Disjoint split tags so no two stochastic stages share a stream.
constexpr uint64_t kTagTwirl = 0x7477726cULL;
constexpr uint64_t kTagTrexMask = 0x6d61736bULL;
constexpr uint64_t kTagTrajectory = 0x7472616aULL;
constexpr uint64_t kTagGroup = 0x67727570ULL;

}  // namespace

void NoiseModel::validate() const {
    auto probability = [](double p, const char* name) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument(std::string("noise model: ") + name +
                                        " must lie in [0, 1]");
        }
    };
    probability(p2, "p2");
    probability(p1, "p1");
    probability(p01, "p01");
    probability(p10, "p10");
    if (!std::isfinite(coherent_rz)) {
        throw std::invalid_argument("noise model: coherent_rz must be finite");
    }
}

nlohmann::json NoiseModel::to_json() const {
    return nlohmann::json{{"p2", p2},   {"p1", p1},
                          {"p01", p01}, {"p10", p10},
                          {"coherent_rz", coherent_rz}, {"seed", seed}};
}

NoiseModel NoiseModel::from_json(const nlohmann::json& j) {
    NoiseModel m;
    m.p2 = j.value("p2", 0.0);
    m.p1 = j.value("p1", 0.0);
    m.p01 = j.value("p01", 0.0);
    m.p10 = j.value("p10", 0.0);
    m.coherent_rz = j.value("coherent_rz", 0.0);
    m.seed = j.value("seed", static_cast<uint64_t>(0));
    m.validate();
    return m;
}

double DdSchedule::duration(const Gate& gate) const {
    switch (gate.kind) {
        case GateKind::BARRIER: return 0.0;
        case GateKind::RZ: return dur_rz;
        case GateKind::X:
        case GateKind::SX:
        case GateKind::RX: return dur_1q;
        case GateKind::H: return dur_h;
        case GateKind::CZ:
        case GateKind::CNOT:
        case GateKind::RZZ: return dur_2q;
        case GateKind::SWAP: return dur_swap;
    }
    throw std::logic_error("unknown gate kind in duration table");
}

nlohmann::json DdSchedule::to_json() const {
    return nlohmann::json{{"dur_rz", dur_rz}, {"dur_1q", dur_1q}, {"dur_2q", dur_2q},
                          {"dur_h", dur_h},   {"dur_swap", dur_swap}};
}

DdSchedule DdSchedule::from_json(const nlohmann::json& j) {
    DdSchedule s;
    s.dur_rz = j.value("dur_rz", 0.0);
    s.dur_1q = j.value("dur_1q", 1.0);
    s.dur_2q = j.value("dur_2q", 2.0);
    s.dur_h = j.value("dur_h", 2.0);
    s.dur_swap = j.value("dur_swap", 6.0);
    return s;
}

const char* zne_fit_name(ZneFit fit) {
    switch (fit) {
        case ZneFit::linear: return "linear";
        case ZneFit::quadratic: return "quadratic";
        case ZneFit::exponential: return "exponential";
    }
    throw std::logic_error("unknown zne fit kind");
}

ZneFit zne_fit_from_name(const std::string& name) {
    if (name == "linear") return ZneFit::linear;
    if (name == "quadratic") return ZneFit::quadratic;
    if (name == "exponential") return ZneFit::exponential;
    throw std::invalid_argument("unknown zne fit kind: " + name);
}

void MitigationPlan::validate() const {
    if (trex_samples < 1) throw std::invalid_argument("mitigation plan: trex_samples >= 1");
    if (twirl_instances < 1) {
        throw std::invalid_argument("mitigation plan: twirl_instances >= 1");
    }
    if (zne_factors.empty() || zne_factors.front() != 1) {
        throw std::invalid_argument("mitigation plan: zne_factors must start at 1");
    }
    for (std::size_t i = 0; i < zne_factors.size(); ++i) {
        if (zne_factors[i] % 2 != 1) {
            throw std::invalid_argument("mitigation plan: zne_factors must be odd");
        }
        if (i > 0 && zne_factors[i] <= zne_factors[i - 1]) {
            throw std::invalid_argument("mitigation plan: zne_factors must be ascending");
        }
    }
}

nlohmann::json MitigationPlan::to_json() const {
    return nlohmann::json{{"trex_samples", trex_samples},
                          {"twirl_instances", twirl_instances},
                          {"zne_factors", zne_factors},
                          {"zne_fit", zne_fit_name(zne_fit)},
                          {"dd_enabled", dd_enabled},
                          {"dd_schedule", dd_schedule.to_json()}};
}

MitigationPlan MitigationPlan::from_json(const nlohmann::json& j) {
    MitigationPlan p;
    p.trex_samples = j.value("trex_samples", 10);
    p.twirl_instances = j.value("twirl_instances", 10);
    p.zne_factors = j.value("zne_factors", std::vector<int>{1, 3, 5});
    p.zne_fit = zne_fit_from_name(j.value("zne_fit", std::string("linear")));
    p.dd_enabled = j.value("dd_enabled", true);
    if (j.contains("dd_schedule")) p.dd_schedule = DdSchedule::from_json(j.at("dd_schedule"));
    p.validate();
    return p;
}

namespace {

Eigen::Matrix2cd pauli_matrix(char letter) {
    const std::complex<double> i(0.0, 1.0);
    Eigen::Matrix2cd m;
    switch (letter) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, -i, i, 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: throw std::logic_error("bad pauli letter");
    }
    return m;
}

// index = bit(q0) + 2*bit(q1), matching the statevector layout.
Eigen::Matrix4cd kron_q0_q1(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd m;
    for (int i1 = 0; i1 < 2; ++i1)
        for (int i0 = 0; i0 < 2; ++i0)
            for (int j1 = 0; j1 < 2; ++j1)
                for (int j0 = 0; j0 < 2; ++j0)
                    m(i0 + 2 * i1, j0 + 2 * j1) = a(i0, j0) * b(i1, j1);
    return m;
}

bool equal_up_to_phase(const Eigen::Matrix4cd& a, const Eigen::Matrix4cd& b) {
    int bi = 0, bj = 0;
    double best = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (std::abs(a(i, j)) > best) {
                best = std::abs(a(i, j));
                bi = i;
                bj = j;
            }
    if (best < 1e-12) return b.norm() < 1e-12;
    const std::complex<double> phase = b(bi, bj) / a(bi, bj);
    if (std::abs(std::abs(phase) - 1.0) > 1e-9) return false;
    return (b - phase * a).norm() < 1e-9;
}

}  // namespace

const std::vector<TwirlQuad>& cz_twirl_set() {
    static const std::vector<TwirlQuad> set = [] {
        const char letters[4] = {'I', 'X', 'Y', 'Z'};
        Eigen::Matrix4cd cz = Eigen::Matrix4cd::Identity();
        cz(3, 3) = -1.0;
        std::vector<TwirlQuad> quads;
        for (char b0 : letters)
            for (char b1 : letters)
                for (char a0 : letters)
                    for (char a1 : letters) {
                        const Eigen::Matrix4cd lhs =
                            kron_q0_q1(pauli_matrix(a0), pauli_matrix(a1)) * cz *
                            kron_q0_q1(pauli_matrix(b0), pauli_matrix(b1));
                        if (equal_up_to_phase(cz, lhs)) quads.push_back({b0, b1, a0, a1});
                    }
        if (quads.size() != 16) throw std::logic_error("cz twirl enumeration must yield 16 quads");
        return quads;
    }();
    return set;
}

namespace {

// Twirl Paulis in the physical basis: X is native, Z = RZ(pi) up to global
// phase, and RZ(pi) * X = Y exactly, so Y is emitted as X followed by RZ(pi).
void append_twirl_pauli(QuantumCircuit& c, int qubit, char letter) {
    switch (letter) {
        case 'I': break;
        case 'X': c.append(Gate::x(qubit)); break;
        case 'Y':
            c.append(Gate::x(qubit));
            c.append(Gate::rz(qubit, kPi));
            break;
        case 'Z': c.append(Gate::rz(qubit, kPi)); break;
        default: throw std::logic_error("bad twirl letter");
    }
}

}  // namespace

std::vector<QuantumCircuit> pauli_twirl(const QuantumCircuit& circuit, int instances,
                                        uint64_t seed) {
    if (instances < 1) throw std::invalid_argument("pauli_twirl: instances >= 1");
    for (const Gate& g : circuit.gates()) {
        if (g.is_two_qubit() && g.kind != GateKind::CZ) {
            throw std::invalid_argument(
                "pauli_twirl requires a basis circuit whose only two-qubit gate is CZ");
        }
    }
    const auto& quads = cz_twirl_set();
    CounterRng master = CounterRng(seed).split(kTagTwirl);
    std::vector<QuantumCircuit> out;
    out.reserve(static_cast<std::size_t>(instances));
    for (int inst = 0; inst < instances; ++inst) {
        CounterRng rng = master.split(static_cast<uint64_t>(inst));
        QuantumCircuit t(circuit.num_qubits());
        for (const Gate& g : circuit.gates()) {
            if (g.kind == GateKind::CZ) {
                const TwirlQuad& q = quads[rng.below(quads.size())];
                append_twirl_pauli(t, g.q0, q.before0);
                append_twirl_pauli(t, g.q1, q.before1);
                t.append(g);
                append_twirl_pauli(t, g.q0, q.after0);
                append_twirl_pauli(t, g.q1, q.after1);
            } else {
                t.append(g);
            }
        }
        out.push_back(std::move(t));
    }
    return out;
}

QuantumCircuit fold_cz(const QuantumCircuit& circuit, int factor) {
    if (factor < 1 || factor % 2 == 0) {
        throw std::invalid_argument("fold_cz: factor must be odd and >= 1");
    }
    QuantumCircuit out(circuit.num_qubits());
    for (const Gate& g : circuit.gates()) {
        if (g.kind == GateKind::CZ) {
            for (int k = 0; k < factor; ++k) out.append(g);
        } else {
            out.append(g);
        }
    }
    return out;
}

QuantumCircuit insert_dd(const QuantumCircuit& circuit, const DdSchedule& schedule,
                         DdReport* report) {
    if (report != nullptr) *report = DdReport{};
    const double x_dur = schedule.dur_1q;
    QuantumCircuit out(circuit.num_qubits());
    std::vector<double> avail(static_cast<std::size_t>(circuit.num_qubits()), 0.0);

    auto fill_window = [&](int qubit, double length) {
        // Two pi pulses per window (an X pair is the identity); windows too
        // short for both pulses are left open and counted.
        if (length >= 2.0 * x_dur && x_dur > 0.0) {
            out.append(Gate::x(qubit));
            out.append(Gate::x(qubit));
            if (report != nullptr) ++report->windows_filled;
        } else if (length > 0.0) {
            if (report != nullptr) ++report->windows_skipped;
        }
    };

    for (const Gate& g : circuit.gates()) {
        if (g.is_barrier()) {
            // A barrier synchronizes every wire; the padding it forces has no
            // per-qubit gate boundaries, so it is not treated as idle time.
            double t = 0.0;
            for (double a : avail) t = std::max(t, a);
            std::fill(avail.begin(), avail.end(), t);
            out.append(g);
            continue;
        }
        double start = avail[static_cast<std::size_t>(g.q0)];
        if (g.is_two_qubit()) start = std::max(start, avail[static_cast<std::size_t>(g.q1)]);
        fill_window(g.q0, start - avail[static_cast<std::size_t>(g.q0)]);
        if (g.is_two_qubit()) fill_window(g.q1, start - avail[static_cast<std::size_t>(g.q1)]);
        out.append(g);
        const double end = start + schedule.duration(g);
        avail[static_cast<std::size_t>(g.q0)] = end;
        if (g.is_two_qubit()) avail[static_cast<std::size_t>(g.q1)] = end;
    }
    double total = 0.0;
    for (double a : avail) total = std::max(total, a);
    for (int q = 0; q < circuit.num_qubits(); ++q) {
        fill_window(q, total - avail[static_cast<std::size_t>(q)]);
    }
    return out;
}

namespace {

struct CompiledTerm {
    double coeff;
    uint64_t support;  // non-identity positions, measured as a Z product
};

struct MeasGroup {
    uint64_t xmask = 0;
    uint64_t ymask = 0;
    std::vector<CompiledTerm> terms;
};

double eval_bits(const std::vector<CompiledTerm>& terms, uint64_t bits) {
    double v = 0.0;
    for (const CompiledTerm& t : terms) {
        v += (std::popcount(bits & t.support) & 1) ? -t.coeff : t.coeff;
    }
    return v;
}

// Groups the non-identity terms by the basis rotation they need; returns the
// identity offset separately.
std::vector<MeasGroup> group_terms(const PauliTermSum& observable, double* offset) {
    *offset = 0.0;
    std::map<std::pair<uint64_t, uint64_t>, MeasGroup> groups;
    for (const PauliTerm& term : observable.terms()) {
        const uint64_t xm = pauli_mask(term.letters, 'X');
        const uint64_t ym = pauli_mask(term.letters, 'Y');
        const uint64_t zm = pauli_mask(term.letters, 'Z');
        if ((xm | ym | zm) == 0) {
            *offset += term.coeff;
            continue;
        }
        MeasGroup& g = groups[{xm, ym}];
        g.xmask = xm;
        g.ymask = ym;
        g.terms.push_back({term.coeff, xm | ym | zm});
    }
    std::vector<MeasGroup> out;
    out.reserve(groups.size());
    for (auto& [key, g] : groups) out.push_back(std::move(g));
    return out;
}

// Maps the group's X letters to Z via H and Y letters via RZ(-pi/2) then H.
void append_measurement_rotations(QuantumCircuit& c, const MeasGroup& g) {
    for (int q = 0; q < c.num_qubits(); ++q) {
        const uint64_t bit = uint64_t{1} << q;
        if (g.ymask & bit) {
            c.append(Gate::rz(q, -kPi / 2.0));
            c.append(Gate::h(q));
        } else if (g.xmask & bit) {
            c.append(Gate::h(q));
        }
    }
}

void apply_single_pauli(StateVector& state, int qubit, int which) {
    // which: 1=X, 2=Y, 3=Z; Y as X then RZ(pi) (exact), Z as RZ(pi) (phase).
    switch (which) {
        case 1: state.apply_gate(Gate::x(qubit)); break;
        case 2:
            state.apply_gate(Gate::x(qubit));
            state.apply_gate(Gate::rz(qubit, kPi));
            break;
        case 3: state.apply_gate(Gate::rz(qubit, kPi)); break;
        default: throw std::logic_error("bad pauli index");
    }
}

// One shot: evolve |0..0> through the circuit with sampled Pauli errors, then
// draw a readout-flipped bitstring. RZ is virtual and error-free; every other
// single-qubit gate takes the p1 channel. The p2 channel follows every
// two-qubit gate (spec'd for CZ; applied uniformly so undecomposed inputs are
// not silently noise-free), the coherent over-rotation only CZ.
uint64_t run_noisy_trajectory(const QuantumCircuit& circuit, const NoiseModel& noise,
                              CounterRng& rng) {
    StateVector state(circuit.num_qubits());
    for (const Gate& g : circuit.gates()) {
        if (g.is_barrier()) continue;
        state.apply_gate(g);
        if (g.is_two_qubit()) {
            if (g.kind == GateKind::CZ && noise.coherent_rz != 0.0) {
                state.apply_gate(Gate::rz(g.q0, noise.coherent_rz));
                state.apply_gate(Gate::rz(g.q1, noise.coherent_rz));
            }
            if (noise.p2 > 0.0 && rng.bernoulli(noise.p2)) {
                const int k = 1 + static_cast<int>(rng.below(15));
                if (k & 3) apply_single_pauli(state, g.q0, k & 3);
                if (k >> 2) apply_single_pauli(state, g.q1, k >> 2);
            }
        } else if (g.kind != GateKind::RZ) {
            if (noise.p1 > 0.0 && rng.bernoulli(noise.p1)) {
                apply_single_pauli(state, g.q0, 1 + static_cast<int>(rng.below(3)));
            }
        }
    }
    const ReadoutError readout = noise.readout();
    return state.sample_one(rng, readout);
}

}  // namespace

double noisy_expectation(const QuantumCircuit& circuit, const PauliTermSum& observable,
                         const NoiseModel& noise, uint64_t shots, uint64_t seed) {
    noise.validate();
    if (shots < 1) throw std::invalid_argument("noisy_expectation: shots >= 1");
    if (observable.num_qubits() != static_cast<std::size_t>(circuit.num_qubits())) {
        throw std::invalid_argument("noisy_expectation: qubit count mismatch");
    }
    double offset = 0.0;
    const std::vector<MeasGroup> groups = group_terms(observable, &offset);
    if (groups.empty()) return offset;

    CounterRng master = CounterRng(seed).split(noise.seed);
    const uint64_t per_group = std::max<uint64_t>(1, shots / groups.size());
    double total = offset;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const MeasGroup& group = groups[gi];
        QuantumCircuit measured = circuit;
        append_measurement_rotations(measured, group);
        CounterRng group_rng = master.split(kTagGroup).split(gi);
        double acc = 0.0;
        for (uint64_t t = 0; t < per_group; ++t) {
            CounterRng traj = group_rng.split(kTagTrajectory).split(t);
            const uint64_t bits = run_noisy_trajectory(measured, noise, traj);
            acc += eval_bits(group.terms, bits);
        }
        total += acc / static_cast<double>(per_group);
    }
    return total;
}

double apply_trex(const QuantumCircuit& circuit, const PauliTermSum& observable_diagonal,
                  int samples, uint64_t shots, const NoiseModel& noise, uint64_t seed) {
    noise.validate();
    if (samples < 1) throw std::invalid_argument("apply_trex: samples >= 1");
    if (shots < 1) throw std::invalid_argument("apply_trex: shots >= 1");
    if (!observable_diagonal.is_z_diagonal()) {
        throw std::invalid_argument("apply_trex requires a Z-diagonal observable");
    }
    if (observable_diagonal.num_qubits() != static_cast<std::size_t>(circuit.num_qubits())) {
        throw std::invalid_argument("apply_trex: qubit count mismatch");
    }
    double offset = 0.0;
    std::vector<CompiledTerm> terms;
    for (const PauliTerm& term : observable_diagonal.terms()) {
        const uint64_t zm = pauli_mask(term.letters, 'Z');
        if (zm == 0) {
            offset += term.coeff;
        } else {
            terms.push_back({term.coeff, zm});
        }
    }
    if (terms.empty()) return offset;

    const int n = circuit.num_qubits();
    const uint64_t qubit_mask = (n >= 64) ? ~uint64_t{0} : ((uint64_t{1} << n) - 1);
    CounterRng master = CounterRng(seed).split(noise.seed);
    const uint64_t per_sample = std::max<uint64_t>(1, shots / static_cast<uint64_t>(samples));
    double mean_of_samples = 0.0;
    for (int s = 0; s < samples; ++s) {
        CounterRng sample_rng = master.split(kTagTrexMask).split(static_cast<uint64_t>(s));
        const uint64_t mask = sample_rng.next_u64() & qubit_mask;
        QuantumCircuit flipped = circuit;
        for (int q = 0; q < n; ++q) {
            if (mask & (uint64_t{1} << q)) flipped.append(Gate::x(q));
        }
        double acc = 0.0;
        for (uint64_t t = 0; t < per_sample; ++t) {
            CounterRng traj = sample_rng.split(kTagTrajectory).split(t);
            const uint64_t bits = run_noisy_trajectory(flipped, noise, traj) ^ mask;
            acc += eval_bits(terms, bits);
        }
        mean_of_samples += acc / static_cast<double>(per_sample);
    }
    return offset + mean_of_samples / static_cast<double>(samples);
}

namespace {

struct FitOutcome {
    double value = 0.0;
    bool ok = true;
    std::string note;
    std::vector<double> coefficients;
};

// Least-squares polynomial a0 + a1 k (+ a2 k^2); evaluated at k = 0 the
// intercept is the extrapolated value.
FitOutcome fit_polynomial(const std::vector<int>& ks, const std::vector<double>& ys, int degree) {
    const int n = static_cast<int>(ks.size());
    const int cols = degree + 1;
    Eigen::MatrixXd a(n, cols);
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) {
        double p = 1.0;
        for (int j = 0; j < cols; ++j) {
            a(i, j) = p;
            p *= static_cast<double>(ks[static_cast<std::size_t>(i)]);
        }
        b(i) = ys[static_cast<std::size_t>(i)];
    }
    const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
    FitOutcome out;
    out.value = c(0);
    out.coefficients.assign(c.data(), c.data() + c.size());
    return out;
}

// y = a * exp(b k), fitted log-linearly; requires all values to share a sign.
FitOutcome fit_exponential(const std::vector<int>& ks, const std::vector<double>& ys) {
    bool all_pos = true, all_neg = true;
    for (double y : ys) {
        if (y <= 0.0) all_pos = false;
        if (y >= 0.0) all_neg = false;
    }
    if (!all_pos && !all_neg) {
        FitOutcome out = fit_polynomial(ks, ys, 1);
        out.ok = false;
        out.note = "exponential fit degenerate (mixed-sign points); linear fallback used";
        return out;
    }
    const double sign = all_pos ? 1.0 : -1.0;
    std::vector<double> logs(ys.size());
    for (std::size_t i = 0; i < ys.size(); ++i) logs[i] = std::log(std::abs(ys[i]));
    FitOutcome lin = fit_polynomial(ks, logs, 1);
    FitOutcome out;
    out.value = sign * std::exp(lin.coefficients[0]);
    out.coefficients = {out.value, lin.coefficients[1]};
    return out;
}

}  // namespace

nlohmann::json ZneResult::to_json() const {
    return nlohmann::json{{"value", value},
                          {"factors", factors},
                          {"raw", raw},
                          {"per_twirl", per_twirl},
                          {"fit_ok", fit_ok},
                          {"fit_kind", fit_kind},
                          {"note", note},
                          {"coefficients", coefficients}};
}

ZneResult zne_estimate(const QuantumCircuit& circuit, const PauliTermSum& observable,
                       const NoiseModel& noise, const MitigationPlan& plan, uint64_t shots,
                       uint64_t seed) {
    plan.validate();
    noise.validate();
    const std::vector<QuantumCircuit> twirled = pauli_twirl(circuit, plan.twirl_instances, seed);

    ZneResult result;
    result.factors = plan.zne_factors;
    result.fit_kind = zne_fit_name(plan.zne_fit);
    result.per_twirl.resize(plan.zne_factors.size());
    result.raw.resize(plan.zne_factors.size());

    const bool diagonal = observable.is_z_diagonal();
    CounterRng master(seed);
    for (std::size_t fi = 0; fi < plan.zne_factors.size(); ++fi) {
        const int factor = plan.zne_factors[fi];
        double mean = 0.0;
        result.per_twirl[fi].resize(twirled.size());
        for (std::size_t ti = 0; ti < twirled.size(); ++ti) {
            const QuantumCircuit folded = fold_cz(twirled[ti], factor);
            const uint64_t sub_seed = master.split(fi * 1000003 + ti).next_u64();
            // TREX needs a diagonal observable; otherwise fall back to the
            // grouped rotated-basis estimator (readout stays untwirled).
            const double v = diagonal
                                 ? apply_trex(folded, observable, plan.trex_samples, shots,
                                              noise, sub_seed)
                                 : noisy_expectation(folded, observable, noise, shots, sub_seed);
            result.per_twirl[fi][ti] = v;
            mean += v;
        }
        result.raw[fi] = mean / static_cast<double>(twirled.size());
    }
    if (!diagonal) result.note = "observable not Z-diagonal; TREX skipped";

    if (result.factors.size() == 1) {
        result.value = result.raw[0];
        result.coefficients = {result.raw[0]};
        if (!result.note.empty()) result.note += "; ";
        result.note += "single factor: raw estimate, no extrapolation";
        return result;
    }
    FitOutcome fit;
    switch (plan.zne_fit) {
        case ZneFit::linear: fit = fit_polynomial(result.factors, result.raw, 1); break;
        case ZneFit::quadratic:
            if (result.factors.size() < 3) {
                fit = fit_polynomial(result.factors, result.raw, 1);
                fit.ok = false;
                fit.note = "quadratic fit needs >= 3 factors; linear fallback used";
            } else {
                fit = fit_polynomial(result.factors, result.raw, 2);
            }
            break;
        case ZneFit::exponential: fit = fit_exponential(result.factors, result.raw); break;
    }
    result.value = fit.value;
    result.fit_ok = fit.ok;
    result.coefficients = fit.coefficients;
    if (!fit.note.empty()) {
        if (!result.note.empty()) result.note += "; ";
        result.note += fit.note;
    }
    return result;
}

MitigatedValue mitigated_pipeline(const QuantumCircuit& circuit, const PauliTermSum& observable,
                                  const NoiseModel& noise, const MitigationPlan& plan,
                                  uint64_t shots, uint64_t seed) {
    plan.validate();
    noise.validate();
    QuantumCircuit basis = decompose_to_basis(circuit);
    MitigatedValue out;
    if (plan.dd_enabled) {
        basis = insert_dd(basis, plan.dd_schedule, &out.dd);
    }
    out.zne = zne_estimate(basis, observable, noise, plan, shots, seed);
    out.value = out.zne.value;
    out.diagnostics = nlohmann::json{{"zne", out.zne.to_json()},
                                     {"dd_windows_filled", out.dd.windows_filled},
                                     {"dd_windows_skipped", out.dd.windows_skipped},
                                     {"shots", shots},
                                     {"seed", seed},
                                     {"noise", noise.to_json()},
                                     {"plan", plan.to_json()}};
    return out;
}

QuantumCircuit with_coherent_cz_error(const QuantumCircuit& circuit, double epsilon) {
    QuantumCircuit out(circuit.num_qubits());
    for (const Gate& g : circuit.gates()) {
        out.append(g);
        if (g.kind == GateKind::CZ && epsilon != 0.0) {
            out.append(Gate::rz(g.q0, epsilon));
            out.append(Gate::rz(g.q1, epsilon));
        }
    }
    return out;
}

}  // namespace hubsim
