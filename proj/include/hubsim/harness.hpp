#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hubsim/circuit.hpp"
#include "hubsim/mitigation.hpp"
#include "hubsim/model.hpp"
#include "hubsim/trotter.hpp"

#include "json.hpp"

namespace hubsim {

// Error taxonomy mapped to CLI exit codes: config 2, capability 3, numerical 4.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CapabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Backend { statevector, exact, mps, noisy };

const char* backend_name(Backend b);
Backend backend_from_name(const std::string& name);

enum class ObservableKind { neel, ntot, sz };

const char* observable_name(ObservableKind o);
ObservableKind observable_from_name(const std::string& name);

struct MpsConfig {
    int chi_max = 64;
    double cutoff = 1e-12;

    nlohmann::json to_json() const;
    static MpsConfig from_json(const nlohmann::json& j);
};

// Full experiment description. Serialization is strict: unknown keys and
// schema-version mismatches are config errors, and parse -> serialize ->
// parse is the identity.
struct ExperimentConfig {
    int schema_version = 1;
    HubbardParams model;
    TrotterOrder order = TrotterOrder::first;
    int r_min = 1;
    int r_max = 10;
    double dt = 0.5;
    Backend backend = Backend::statevector;
    ObservableKind observable = ObservableKind::neel;
    int instances = 5;  // stochastic backends only
    uint64_t shots = 4096;
    uint64_t seed = 1;
    MpsConfig mps;
    NoiseModel noise;
    MitigationPlan mitigation;
    bool mitigation_enabled = true;
    std::string output_dir = "out";
    bool timing_in_files = false;  // keep result bytes reproducible by default

    void validate() const;  // throws ConfigError

    nlohmann::json to_json() const;
    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig load(const std::string& path);
    void save(const std::string& path) const;

    // Named parameter sets; "paper-L10" = L=10, t=1, U=1, mu=0, first order,
    // dt=0.5, r=1..10.
    static ExperimentConfig preset(const std::string& name);
};

struct ExperimentPoint {
    int r = 0;
    double tau = 0.0;
    double value = 0.0;
    double spread = 0.0;  // sample standard deviation over instances
    int instances = 1;
    DepthReport depth;
    nlohmann::json diagnostics;
    double wall_seconds = 0.0;  // serialized only when timing_in_files

    nlohmann::json to_json(bool timing_in_files) const;
    static ExperimentPoint from_json(const nlohmann::json& j);
};

struct ResultSet {
    ExperimentConfig config;
    std::vector<ExperimentPoint> points;  // ordered by r

    nlohmann::json to_json() const;
    std::string to_bytes() const;  // canonical serialization (reproducibility)
    void save(const std::string& dir) const;  // results.json + timings.json
    static ResultSet from_json(const nlohmann::json& j);
    static ResultSet load(const std::string& path);
};

// Desk-scale capability caps, enforced before any work.
constexpr int kMaxStatevectorQubits = 26;
constexpr int kMaxExactQubits = 24;

void check_capabilities(const ExperimentConfig& config);

// One point per r in [r_min, r_max]: build the circuit, evolve the chosen
// backend from the Neel state, and aggregate over instances for stochastic
// backends. Deterministic backends run once and report zero spread.
ResultSet run_sweep(const ExperimentConfig& config);

struct DepthRow {
    int r = 0;
    int first_depth = 0;
    int second_depth = 0;
    int optimized_depth = 0;
    long first_cz = 0;
    long second_cz = 0;
    long optimized_cz = 0;
};

struct DepthTable {
    std::size_t num_sites = 0;
    std::vector<DepthRow> rows;

    nlohmann::json to_json() const;
    std::string to_csv() const;
};

// Paper-convention depths and basis CZ counts for all three product orders;
// verifies the depth column is independent of chain length.
DepthTable depth_report(const ExperimentConfig& config);

enum class PlotKind { neel_vs_time, depth_vs_r, mps_diagnostics };

PlotKind plot_kind_from_name(const std::string& name);

// Tidy CSVs under `dir`; returns the written file paths.
std::vector<std::string> emit_plot_data(const ResultSet& results, PlotKind kind,
                                        const std::string& dir);

// Environment overrides: HUBSIM_OUTDIR replaces config.output_dir,
// HUBSIM_WORKERS caps the worker count (execution is sequential; the sweep is
// a pure reduction over (r, instance) keys so the value only bounds it).
std::string resolved_output_dir(const ExperimentConfig& config);
int resolved_workers();

}  // namespace hubsim
