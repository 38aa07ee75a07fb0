#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "hubsim/harness.hpp"
#include "hubsim/mps.hpp"
#include "hubsim/statevector.hpp"
#include "hubsim/trotter.hpp"

namespace {

using hubsim::ExperimentConfig;

struct ConfigSource {
    std::string config_path;
    std::string preset;
    std::string out_dir;
    std::string backend;
    std::string order;
    std::string observable;
    uint64_t seed = 0;
    bool seed_set = false;
    int r_min = 0, r_max = 0;
    std::size_t sites = 0;
    double dt = 0.0;
};

void add_config_options(CLI::App* sub, ConfigSource& src) {
    auto* cfg = sub->add_option("--config", src.config_path, "experiment config JSON file");
    sub->add_option("--preset", src.preset, "named parameter preset (e.g. paper-L10)")
        ->excludes(cfg);
    sub->add_option("--out", src.out_dir, "output directory (overrides config)");
    sub->add_option("--backend", src.backend, "backend override");
    sub->add_option("--order", src.order, "product-formula order override");
    sub->add_option("--observable", src.observable, "observable override");
    sub->add_option("--seed", src.seed, "seed override")->each([&src](const std::string&) {
        src.seed_set = true;
    });
    sub->add_option("--r-min", src.r_min, "first Trotter step count");
    sub->add_option("--r-max", src.r_max, "last Trotter step count");
    sub->add_option("--sites", src.sites, "chain length override");
    sub->add_option("--dt", src.dt, "Trotter step size override");
}

ExperimentConfig resolve_config(const ConfigSource& src) {
    ExperimentConfig cfg;
    if (!src.config_path.empty()) {
        cfg = ExperimentConfig::load(src.config_path);
    } else if (!src.preset.empty()) {
        cfg = ExperimentConfig::preset(src.preset);
    } else {
        throw hubsim::ConfigError("provide --config FILE or --preset NAME");
    }
    if (!src.out_dir.empty()) cfg.output_dir = src.out_dir;
    if (!src.backend.empty()) cfg.backend = hubsim::backend_from_name(src.backend);
    if (!src.order.empty()) {
        try {
            cfg.order = hubsim::order_from_name(src.order);
        } catch (const std::invalid_argument& e) {
            throw hubsim::ConfigError(e.what());
        }
    }
    if (!src.observable.empty()) cfg.observable = hubsim::observable_from_name(src.observable);
    if (src.seed_set) cfg.seed = src.seed;
    if (src.r_min > 0) cfg.r_min = src.r_min;
    if (src.r_max > 0) cfg.r_max = src.r_max;
    if (src.sites > 0) cfg.model.num_sites = src.sites;
    if (src.dt > 0.0) cfg.dt = src.dt;
    cfg.validate();
    return cfg;
}

int run_build(const ConfigSource& src) {
    const ExperimentConfig cfg = resolve_config(src);
    const std::string dir = hubsim::resolved_output_dir(cfg);
    std::filesystem::create_directories(dir);
    nlohmann::json manifest = nlohmann::json::array();
    for (int r = cfg.r_min; r <= cfg.r_max; ++r) {
        hubsim::TrotterPlan plan;
        plan.order = cfg.order;
        plan.steps = r;
        plan.dt = cfg.dt;
        plan.params = cfg.model;
        const hubsim::QuantumCircuit circuit = hubsim::build_trotter_circuit(plan);
        const std::string name =
            std::string("circuit_") + hubsim::order_name(cfg.order) + "_r" + std::to_string(r) +
            ".txt";
        std::ofstream out(dir + "/" + name);
        out << circuit.to_text();
        manifest.push_back({{"r", r},
                            {"file", name},
                            {"depth", hubsim::depth(circuit)},
                            {"gates", circuit.size()}});
        std::cout << name << "  depth=" << hubsim::depth(circuit) << "  gates=" << circuit.size()
                  << "\n";
    }
    std::ofstream mout(dir + "/circuits.json");
    mout << manifest.dump(2) << "\n";
    return 0;
}

int run_evolve(const ConfigSource& src) {
    const ExperimentConfig cfg = resolve_config(src);
    const hubsim::ResultSet results = hubsim::run_sweep(cfg);
    const std::string dir = hubsim::resolved_output_dir(cfg);
    results.save(dir);
    hubsim::emit_plot_data(results, hubsim::PlotKind::neel_vs_time, dir);
    for (const hubsim::ExperimentPoint& p : results.points) {
        std::cout << "r=" << p.r << "  tau=" << p.tau << "  value=" << p.value;
        if (p.instances > 1) std::cout << "  spread=" << p.spread;
        std::cout << "\n";
    }
    std::cout << "results written to " << dir << "/results.json\n";
    return 0;
}

int run_depth(const ConfigSource& src) {
    const ExperimentConfig cfg = resolve_config(src);
    const hubsim::DepthTable table = hubsim::depth_report(cfg);
    const std::string dir = hubsim::resolved_output_dir(cfg);
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir + "/depth_table.csv");
        out << table.to_csv();
    }
    {
        std::ofstream out(dir + "/depth_table.json");
        out << table.to_json().dump(2) << "\n";
    }
    std::cout << table.to_csv();
    return 0;
}

int run_mitigate(const ConfigSource& src) {
    ExperimentConfig cfg = resolve_config(src);
    cfg.backend = hubsim::Backend::noisy;
    cfg.mitigation_enabled = true;
    const hubsim::ResultSet results = hubsim::run_sweep(cfg);
    const std::string dir = hubsim::resolved_output_dir(cfg);
    results.save(dir);
    hubsim::emit_plot_data(results, hubsim::PlotKind::neel_vs_time, dir);
    for (const hubsim::ExperimentPoint& p : results.points) {
        std::cout << "r=" << p.r << "  tau=" << p.tau << "  mitigated=" << p.value
                  << "  spread=" << p.spread << "\n";
    }
    return 0;
}

int run_plotdata(const std::string& results_path, const std::string& kind,
                 const std::string& out_dir) {
    const hubsim::ResultSet results = hubsim::ResultSet::load(results_path);
    const std::string dir = out_dir.empty() ? hubsim::resolved_output_dir(results.config) : out_dir;
    const std::vector<std::string> files =
        hubsim::emit_plot_data(results, hubsim::plot_kind_from_name(kind), dir);
    for (const std::string& f : files) std::cout << f << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trotterized Fermi-Hubbard chain simulator"};
    app.require_subcommand(1);

    ConfigSource build_src, evolve_src, depth_src, mitigate_src;
    CLI::App* build = app.add_subcommand("build", "emit circuit files for each step count");
    add_config_options(build, build_src);
    CLI::App* evolve = app.add_subcommand("evolve", "run the sweep and persist results");
    add_config_options(evolve, evolve_src);
    CLI::App* depth = app.add_subcommand("depth", "depth and CZ-count table for all orders");
    add_config_options(depth, depth_src);
    CLI::App* mitigate =
        app.add_subcommand("mitigate", "noisy backend with the full mitigation pipeline");
    add_config_options(mitigate, mitigate_src);

    std::string results_path, plot_kind, plot_out;
    CLI::App* plotdata = app.add_subcommand("plotdata", "CSV plot data from a result file");
    plotdata->add_option("--results", results_path, "results.json from a previous run")
        ->required();
    plotdata
        ->add_option("--kind", plot_kind,
                     "one of: neel-vs-time, depth-vs-r, mps-diagnostics")
        ->required();
    plotdata->add_option("--out", plot_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (build->parsed()) return run_build(build_src);
        if (evolve->parsed()) return run_evolve(evolve_src);
        if (depth->parsed()) return run_depth(depth_src);
        if (mitigate->parsed()) return run_mitigate(mitigate_src);
        if (plotdata->parsed()) return run_plotdata(results_path, plot_kind, plot_out);
        std::cerr << "no subcommand given\n";
        return 2;
    } catch (const hubsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const hubsim::CapabilityError& e) {
        std::cerr << "capability error: " << e.what() << "\n";
        return 3;
    } catch (const hubsim::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
