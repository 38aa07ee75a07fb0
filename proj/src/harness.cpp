#include "hubsim/harness.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <set>
#include <sstream>

#include "hubsim/exact.hpp"
#include "hubsim/mps.hpp"
#include "hubsim/rng.hpp"
#include "hubsim/statevector.hpp"

namespace hubsim {

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::statevector: return "statevector";
        case Backend::exact: return "exact";
        case Backend::mps: return "mps";
        case Backend::noisy: return "noisy";
    }
    throw std::logic_error("unknown backend");
}

Backend backend_from_name(const std::string& name) {
    if (name == "statevector") return Backend::statevector;
    if (name == "exact") return Backend::exact;
    if (name == "mps") return Backend::mps;
    if (name == "noisy") return Backend::noisy;
    throw ConfigError("unknown backend: " + name);
}

const char* observable_name(ObservableKind o) {
    switch (o) {
        case ObservableKind::neel: return "neel";
        case ObservableKind::ntot: return "ntot";
        case ObservableKind::sz: return "sz";
    }
    throw std::logic_error("unknown observable");
}

ObservableKind observable_from_name(const std::string& name) {
    if (name == "neel") return ObservableKind::neel;
    if (name == "ntot") return ObservableKind::ntot;
    if (name == "sz") return ObservableKind::sz;
    throw ConfigError("unknown observable: " + name);
}

nlohmann::json MpsConfig::to_json() const {
    return nlohmann::json{{"chi_max", chi_max}, {"cutoff", cutoff}};
}

MpsConfig MpsConfig::from_json(const nlohmann::json& j) {
    MpsConfig c;
    c.chi_max = j.value("chi_max", 64);
    c.cutoff = j.value("cutoff", 1e-12);
    return c;
}

void ExperimentConfig::validate() const {
    if (schema_version != 1) {
        throw ConfigError("unsupported schema_version " + std::to_string(schema_version));
    }
    try {
        model.validate();
        noise.validate();
        mitigation.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (r_min < 1 || r_max < r_min) throw ConfigError("require 1 <= r_min <= r_max");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive and finite");
    if (instances < 1) throw ConfigError("instances must be >= 1");
    if (shots < 1) throw ConfigError("shots must be >= 1");
    if (mps.chi_max < 1) throw ConfigError("mps.chi_max must be >= 1");
    if (!(mps.cutoff >= 0.0 && mps.cutoff < 1.0)) throw ConfigError("mps.cutoff in [0, 1)");
    if (output_dir.empty()) throw ConfigError("output_dir must be non-empty");
}

nlohmann::json ExperimentConfig::to_json() const {
    return nlohmann::json{
        {"schema_version", schema_version},
        {"model",
         {{"num_sites", model.num_sites},
          {"hopping", model.hopping},
          {"interaction", model.interaction},
          {"mu_up", model.mu_up},
          {"mu_down", model.mu_down}}},
        {"order", order_name(order)},
        {"r_min", r_min},
        {"r_max", r_max},
        {"dt", dt},
        {"backend", backend_name(backend)},
        {"observable", observable_name(observable)},
        {"instances", instances},
        {"shots", shots},
        {"seed", seed},
        {"mps", mps.to_json()},
        {"noise", noise.to_json()},
        {"mitigation", mitigation.to_json()},
        {"mitigation_enabled", mitigation_enabled},
        {"output_dir", output_dir},
        {"timing_in_files", timing_in_files}};
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    static const std::set<std::string> known = {
        "schema_version", "model",     "order",     "r_min",
        "r_max",          "dt",        "backend",   "observable",
        "instances",      "shots",     "seed",      "mps",
        "noise",          "mitigation", "mitigation_enabled", "output_dir",
        "timing_in_files"};
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& item : j.items()) {
        if (known.find(item.key()) == known.end()) {
            throw ConfigError("unknown config key: " + item.key());
        }
    }
    ExperimentConfig c;
    try {
        c.schema_version = j.value("schema_version", 1);
        if (j.contains("model")) {
            const nlohmann::json& m = j.at("model");
            static const std::set<std::string> model_keys = {"num_sites", "hopping",
                                                             "interaction", "mu_up", "mu_down"};
            for (const auto& item : m.items()) {
                if (model_keys.find(item.key()) == model_keys.end()) {
                    throw ConfigError("unknown model key: " + item.key());
                }
            }
            c.model.num_sites = m.value("num_sites", static_cast<std::size_t>(2));
            c.model.hopping = m.value("hopping", 1.0);
            c.model.interaction = m.value("interaction", 0.0);
            c.model.mu_up = m.value("mu_up", 0.0);
            c.model.mu_down = m.value("mu_down", 0.0);
        }
        c.order = order_from_name(j.value("order", std::string("first")));
        c.r_min = j.value("r_min", 1);
        c.r_max = j.value("r_max", 10);
        c.dt = j.value("dt", 0.5);
        c.backend = backend_from_name(j.value("backend", std::string("statevector")));
        c.observable = observable_from_name(j.value("observable", std::string("neel")));
        c.instances = j.value("instances", 5);
        c.shots = j.value("shots", static_cast<uint64_t>(4096));
        c.seed = j.value("seed", static_cast<uint64_t>(1));
        if (j.contains("mps")) c.mps = MpsConfig::from_json(j.at("mps"));
        if (j.contains("noise")) c.noise = NoiseModel::from_json(j.at("noise"));
        if (j.contains("mitigation")) c.mitigation = MitigationPlan::from_json(j.at("mitigation"));
        c.mitigation_enabled = j.value("mitigation_enabled", true);
        c.output_dir = j.value("output_dir", std::string("out"));
        c.timing_in_files = j.value("timing_in_files", false);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config parse failure: ") + e.what());
    }
    c.validate();
    return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return from_json(j);
}

void ExperimentConfig::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write config file: " + path);
    out << to_json().dump(2) << "\n";
}

ExperimentConfig ExperimentConfig::preset(const std::string& name) {
    if (name == "paper-L10") {
        ExperimentConfig c;
        c.model = HubbardParams{10, 1.0, 1.0, 0.0, 0.0};
        c.order = TrotterOrder::first;
        c.r_min = 1;
        c.r_max = 10;
        c.dt = 0.5;
        c.backend = Backend::statevector;
        c.observable = ObservableKind::neel;
        return c;
    }
    throw ConfigError("unknown preset: " + name);
}

nlohmann::json ExperimentPoint::to_json(bool timing) const {
    return nlohmann::json{{"r", r},
                          {"tau", tau},
                          {"value", value},
                          {"spread", spread},
                          {"instances", instances},
                          {"depth", depth.to_json()},
                          {"diagnostics", diagnostics},
                          {"wall_seconds", timing ? wall_seconds : 0.0}};
}

ExperimentPoint ExperimentPoint::from_json(const nlohmann::json& j) {
    ExperimentPoint p;
    p.r = j.value("r", 0);
    p.tau = j.value("tau", 0.0);
    p.value = j.value("value", 0.0);
    p.spread = j.value("spread", 0.0);
    p.instances = j.value("instances", 1);
    if (j.contains("depth")) p.depth = DepthReport::from_json(j.at("depth"));
    if (j.contains("diagnostics")) p.diagnostics = j.at("diagnostics");
    p.wall_seconds = j.value("wall_seconds", 0.0);
    return p;
}

nlohmann::json ResultSet::to_json() const {
    nlohmann::json pts = nlohmann::json::array();
    for (const ExperimentPoint& p : points) pts.push_back(p.to_json(config.timing_in_files));
    return nlohmann::json{{"schema_version", config.schema_version},
                          {"config", config.to_json()},
                          {"points", pts}};
}

std::string ResultSet::to_bytes() const { return to_json().dump(2) + "\n"; }

ResultSet ResultSet::from_json(const nlohmann::json& j) {
    ResultSet rs;
    if (!j.contains("config")) throw ConfigError("result set missing config section");
    rs.config = ExperimentConfig::from_json(j.at("config"));
    for (const nlohmann::json& p : j.value("points", nlohmann::json::array())) {
        rs.points.push_back(ExperimentPoint::from_json(p));
    }
    return rs;
}

ResultSet ResultSet::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open result file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("result file is not valid JSON: ") + e.what());
    }
    return from_json(j);
}

void ResultSet::save(const std::string& dir) const {
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir + "/results.json");
        if (!out) throw ConfigError("cannot write results to " + dir);
        out << to_bytes();
    }
    // Wall times live in their own file so results.json stays reproducible.
    nlohmann::json timings = nlohmann::json::array();
    for (const ExperimentPoint& p : points) {
        timings.push_back({{"r", p.r}, {"wall_seconds", p.wall_seconds}});
    }
    std::ofstream tout(dir + "/timings.json");
    tout << timings.dump(2) << "\n";
}

void check_capabilities(const ExperimentConfig& config) {
    const std::size_t n = config.model.num_qubits();
    if ((config.backend == Backend::statevector || config.backend == Backend::noisy) &&
        n > static_cast<std::size_t>(kMaxStatevectorQubits)) {
        throw CapabilityError("statevector backend capped at " +
                              std::to_string(kMaxStatevectorQubits) + " qubits; requested " +
                              std::to_string(n));
    }
    if (config.backend == Backend::exact && n > static_cast<std::size_t>(kMaxExactQubits)) {
        throw CapabilityError("exact backend capped at " + std::to_string(kMaxExactQubits) +
                              " qubits; requested " + std::to_string(n));
    }
}

std::string resolved_output_dir(const ExperimentConfig& config) {
    if (const char* env = std::getenv("HUBSIM_OUTDIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return config.output_dir;
}

int resolved_workers() {
    if (const char* env = std::getenv("HUBSIM_WORKERS"); env != nullptr && *env != '\0') {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1;
}

namespace {

PauliTermSum select_observable(const ExperimentConfig& config) {
    switch (config.observable) {
        case ObservableKind::neel: return neel_operator(config.model.num_sites);
        case ObservableKind::ntot: return total_number_operator(config.model.num_sites);
        case ObservableKind::sz: return total_sz_operator(config.model.num_sites);
    }
    throw std::logic_error("unknown observable");
}

double sample_stddev(const std::vector<double>& xs, double mean) {
    if (xs.size() < 2) return 0.0;
    double acc = 0.0;
    for (double x : xs) acc += (x - mean) * (x - mean);
    return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

}  // namespace

ResultSet run_sweep(const ExperimentConfig& config) {
    config.validate();
    check_capabilities(config);
    const std::string outdir = resolved_output_dir(config);
    const PauliTermSum observable = select_observable(config);
    const BasisState initial = neel_state(config.model.num_sites);

    // The exact backend evolves the full Hamiltonian once per point; build it
    // up front. Trotter backends rebuild the circuit per r.
    std::optional<SparseHamiltonian> hamiltonian;
    if (config.backend == Backend::exact) {
        hamiltonian.emplace(build_hamiltonian(config.model));
    }

    ResultSet results;
    results.config = config;
    for (int r = config.r_min; r <= config.r_max; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        ExperimentPoint point;
        point.r = r;
        point.tau = r * config.dt;
        point.diagnostics = nlohmann::json::object();

        TrotterPlan plan;
        plan.order = config.order;
        plan.steps = r;
        plan.dt = config.dt;
        plan.params = config.model;
        plan.prepare_neel = false;
        point.depth = gate_counts(build_trotter_circuit(plan));

        switch (config.backend) {
            case Backend::statevector: {
                StateVector state = StateVector::init_basis(initial);
                state.apply_circuit(build_trotter_circuit(plan));
                point.value = state.expectation(observable);
                point.instances = 1;  // deterministic: repeats collapse
                break;
            }
            case Backend::exact: {
                try {
                    StateVector psi0 = StateVector::init_basis(initial);
                    StateVector psi = evolve_exact(*hamiltonian, psi0, point.tau);
                    point.value = psi.expectation(observable);
                } catch (const std::runtime_error& e) {
                    throw NumericalError(e.what());
                }
                point.instances = 1;
                break;
            }
            case Backend::mps: {
                MpsState m = mps_from_basis(initial, config.mps.chi_max, config.mps.cutoff);
                auto [evolved, log] = apply_circuit_mps(std::move(m), build_trotter_circuit(plan));
                point.value = expectation_mps(evolved, observable);
                point.instances = 1;
                const std::string trunc_name = "truncation_r" + std::to_string(r) + ".csv";
                std::filesystem::create_directories(outdir);
                log.to_csv(outdir + "/" + trunc_name);
                point.diagnostics = nlohmann::json{
                    {"max_link_dim", evolved.max_bond_dim()},
                    {"log_max_chi", log.max_chi},
                    {"max_trunc_err", log.max_eps},
                    {"cumulative_discarded", log.cumulative_discarded},
                    {"truncation_records", log.records.size()},
                    {"truncation_file", trunc_name}};
                break;
            }
            case Backend::noisy: {
                // Noisy runs start from |0..0> with the preparation in-circuit
                // so state prep sees the same error channels as the dynamics.
                plan.prepare_neel = true;
                const QuantumCircuit circuit = build_trotter_circuit(plan);
                CounterRng master(config.seed);
                std::vector<double> values;
                values.reserve(static_cast<std::size_t>(config.instances));
                nlohmann::json instance_diags = nlohmann::json::array();
                for (int inst = 0; inst < config.instances; ++inst) {
                    const uint64_t sub_seed =
                        master.split(static_cast<uint64_t>(r)).split(static_cast<uint64_t>(inst))
                            .next_u64();
                    if (config.mitigation_enabled) {
                        MitigatedValue mv = mitigated_pipeline(circuit, observable, config.noise,
                                                               config.mitigation, config.shots,
                                                               sub_seed);
                        values.push_back(mv.value);
                        instance_diags.push_back(
                            {{"instance", inst},
                             {"value", mv.value},
                             {"zne_raw", mv.zne.raw},
                             {"zne_factors", mv.zne.factors},
                             {"fit_ok", mv.zne.fit_ok},
                             {"note", mv.zne.note},
                             {"dd_windows_filled", mv.dd.windows_filled}});
                    } else {
                        const double v = noisy_expectation(decompose_to_basis(circuit), observable,
                                                           config.noise, config.shots, sub_seed);
                        values.push_back(v);
                        instance_diags.push_back({{"instance", inst}, {"value", v}});
                    }
                }
                double mean = 0.0;
                for (double v : values) mean += v;
                mean /= static_cast<double>(values.size());
                point.value = mean;
                point.spread = sample_stddev(values, mean);
                point.instances = config.instances;
                point.diagnostics = nlohmann::json{{"instances", instance_diags}};
                break;
            }
        }
        point.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        results.points.push_back(std::move(point));
    }
    return results;
}

nlohmann::json DepthTable::to_json() const {
    nlohmann::json rows_json = nlohmann::json::array();
    for (const DepthRow& row : rows) {
        rows_json.push_back({{"r", row.r},
                             {"first_depth", row.first_depth},
                             {"second_depth", row.second_depth},
                             {"optimized_depth", row.optimized_depth},
                             {"first_cz", row.first_cz},
                             {"second_cz", row.second_cz},
                             {"optimized_cz", row.optimized_cz}});
    }
    return nlohmann::json{{"num_sites", num_sites}, {"rows", rows_json}};
}

std::string DepthTable::to_csv() const {
    std::ostringstream out;
    out << "r,first_depth,second_depth,optimized_depth,first_cz,second_cz,optimized_cz\n";
    for (const DepthRow& row : rows) {
        out << row.r << ',' << row.first_depth << ',' << row.second_depth << ','
            << row.optimized_depth << ',' << row.first_cz << ',' << row.second_cz << ','
            << row.optimized_cz << '\n';
    }
    return out.str();
}

DepthTable depth_report(const ExperimentConfig& config) {
    config.validate();
    const std::array<TrotterOrder, 3> orders = {TrotterOrder::first, TrotterOrder::second,
                                                TrotterOrder::second_optimized};

    auto depth_at = [](TrotterOrder order, int r, std::size_t sites) {
        TrotterPlan plan;
        plan.order = order;
        plan.steps = r;
        plan.dt = 0.5;
        plan.params.num_sites = sites;
        plan.params.hopping = 1.0;
        plan.params.interaction = 1.0;
        return depth(build_trotter_circuit(plan));
    };

    DepthTable table;
    table.num_sites = config.model.num_sites;
    for (int r = config.r_min; r <= config.r_max; ++r) {
        DepthRow row;
        row.r = r;
        std::array<int, 3> depths{};
        std::array<long, 3> czs{};
        for (std::size_t oi = 0; oi < orders.size(); ++oi) {
            // The paper-convention depth must not depend on chain length
            // (checked at two lengths >= 3, where both hopping layers exist).
            const int d4 = depth_at(orders[oi], r, 4);
            const int d7 = depth_at(orders[oi], r, 7);
            if (d4 != d7) {
                throw NumericalError("depth is chain-length dependent for order " +
                                     std::string(order_name(orders[oi])));
            }
            TrotterPlan plan;
            plan.order = orders[oi];
            plan.steps = r;
            plan.dt = config.dt;
            plan.params = config.model;
            const QuantumCircuit c = build_trotter_circuit(plan);
            depths[oi] = depth(c);
            if (config.model.num_sites >= 3 && depths[oi] != d4) {
                throw NumericalError("depth at configured length disagrees with reference");
            }
            const DepthReport basis_counts = gate_counts(decompose_to_basis(c));
            const auto it = basis_counts.counts.find("cz");
            czs[oi] = (it == basis_counts.counts.end()) ? 0 : it->second;
        }
        row.first_depth = depths[0];
        row.second_depth = depths[1];
        row.optimized_depth = depths[2];
        row.first_cz = czs[0];
        row.second_cz = czs[1];
        row.optimized_cz = czs[2];
        table.rows.push_back(row);
    }
    return table;
}

PlotKind plot_kind_from_name(const std::string& name) {
    if (name == "neel-vs-time") return PlotKind::neel_vs_time;
    if (name == "depth-vs-r") return PlotKind::depth_vs_r;
    if (name == "mps-diagnostics") return PlotKind::mps_diagnostics;
    throw ConfigError("unknown plot kind: " + name);
}

namespace {

std::string format_double(double v) {
    std::ostringstream out;
    out << std::setprecision(17) << v;
    return out.str();
}

}  // namespace

std::vector<std::string> emit_plot_data(const ResultSet& results, PlotKind kind,
                                        const std::string& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::string> written;
    switch (kind) {
        case PlotKind::neel_vs_time: {
            const bool stochastic = results.config.backend == Backend::noisy;
            const std::string path = dir + "/neel_vs_time_" +
                                     backend_name(results.config.backend) + ".csv";
            std::ofstream out(path);
            out << (stochastic ? "tau,value,stddev\n" : "tau,value\n");
            for (const ExperimentPoint& p : results.points) {
                out << format_double(p.tau) << ',' << format_double(p.value);
                if (stochastic) out << ',' << format_double(p.spread);
                out << '\n';
            }
            written.push_back(path);
            break;
        }
        case PlotKind::depth_vs_r: {
            const DepthTable table = depth_report(results.config);
            const std::array<std::pair<std::string, int DepthRow::*>, 3> curves = {
                std::make_pair(std::string("first"), &DepthRow::first_depth),
                std::make_pair(std::string("second"), &DepthRow::second_depth),
                std::make_pair(std::string("optimized"), &DepthRow::optimized_depth)};
            const std::array<long DepthRow::*, 3> cz_members = {
                &DepthRow::first_cz, &DepthRow::second_cz, &DepthRow::optimized_cz};
            for (std::size_t i = 0; i < curves.size(); ++i) {
                const std::string path = dir + "/depth_vs_r_" + curves[i].first + ".csv";
                std::ofstream out(path);
                out << "r,depth,cz_count\n";
                for (const DepthRow& row : table.rows) {
                    out << row.r << ',' << row.*(curves[i].second) << ',' << row.*(cz_members[i])
                        << '\n';
                }
                written.push_back(path);
            }
            break;
        }
        case PlotKind::mps_diagnostics: {
            if (results.config.backend != Backend::mps) {
                throw ConfigError("mps-diagnostics requires an mps-backend result set");
            }
            const std::string path = dir + "/mps_diagnostics.csv";
            std::ofstream out(path);
            out << "tau,max_link_dim,max_trunc_err,sweep_seconds\n";
            for (const ExperimentPoint& p : results.points) {
                const double secs = results.config.timing_in_files ? p.wall_seconds : 0.0;
                out << format_double(p.tau) << ','
                    << p.diagnostics.value("max_link_dim", 0) << ','
                    << format_double(p.diagnostics.value("max_trunc_err", 0.0)) << ','
                    << format_double(secs) << '\n';
            }
            written.push_back(path);
            break;
        }
    }
    return written;
}

}  // namespace hubsim
