#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "inls/config.hpp"
#include "inls/diagnostics.hpp"
#include "inls/dynamics.hpp"
#include "inls/errors.hpp"
#include "inls/ground_state.hpp"
#include "inls/verify.hpp"
#include "inls/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string preset;
    std::string out_dir;
    std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "INI config file");
    cmd->add_option("--preset", opts.preset, "named preset (see presets/)");
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--seed", opts.seed, "RNG seed for random initial data");
}

std::string preset_dir() {
    if (const char* env = std::getenv("INLS_PRESET_DIR")) return env;
    return "presets";
}

fs::path resolve_out(const CommonOpts& opts, const std::string& fallback) {
    fs::path root;
    if (!opts.out_dir.empty()) {
        root = opts.out_dir;
    } else if (const char* env = std::getenv("INLS_OUT")) {
        root = fs::path(env) / fallback;
    } else {
        root = fallback;
    }
    fs::create_directories(root);
    return root;
}

inls::RunConfig load_run_config(const CommonOpts& opts, json* echo) {
    std::string path;
    if (!opts.config_path.empty()) {
        path = opts.config_path;
    } else if (!opts.preset.empty()) {
        path = inls::resolve_preset(opts.preset, preset_dir());
    } else {
        throw inls::ConfigError("either --config or --preset is required");
    }
    const auto ini = inls::parse_ini_file(path);
    if (echo != nullptr) {
        (*echo)["config_file"] = path;
        for (const auto& [k, v] : ini) (*echo)["config"][k] = v;
    }
    return inls::config_from_ini(ini);
}

json base_summary(const CommonOpts& opts) {
    json j;
    j["version"] = inls::kVersion;
    j["seed"] = opts.seed;
    return j;
}

void write_summary(const json& j, const fs::path& dir) {
    std::ofstream out(dir / "summary.json");
    out << j.dump(2) << "\n";
}

const char* status_name(inls::RunStatus s) {
    switch (s) {
        case inls::RunStatus::completed: return "completed";
        case inls::RunStatus::blowup_detected: return "blowup_detected";
        case inls::RunStatus::horizon_exceeded: return "horizon_exceeded";
    }
    return "unknown";
}

int run_ground_state(const CommonOpts& opts) {
    json summary = base_summary(opts);
    const auto cfg = load_run_config(opts, &summary);
    const auto dir = resolve_out(opts, "ground-state");

    const auto t0 = std::chrono::steady_clock::now();
    const auto profile = inls::solve_ground_state(cfg.model, cfg.ground_state_tol);
    const auto t1 = std::chrono::steady_clock::now();

    inls::write_profile_csv(profile, (dir / "profile.csv").string());
    inls::write_profile_json(profile, (dir / "profile.json").string());
    summary["status"] = "completed";
    summary["wall_time_s"] = std::chrono::duration<double>(t1 - t0).count();
    summary["residual"] = profile.residual;
    summary["q0"] = profile.q0;
    write_summary(summary, dir);
    std::cout << "ground state converged: Q(0) = " << profile.q0
              << ", residual = " << profile.residual << "\n";
    return 0;
}

int run_evolve(const CommonOpts& opts) {
    json summary = base_summary(opts);
    const auto cfg = load_run_config(opts, &summary);
    const auto dir = resolve_out(opts, "evolve");

    const auto t0 = std::chrono::steady_clock::now();
    const auto u0 = inls::build_initial_data(cfg, opts.seed);
    const auto log = inls::evolve(u0, cfg.model, cfg.evolve);
    const auto t1 = std::chrono::steady_clock::now();

    inls::write_diagnostics_csv(log.records, cfg.evolve.diagnostics,
                                (dir / "diagnostics.csv").string());

    const auto& first = log.records.front();
    const auto& last = log.records.back();
    summary["status"] = status_name(log.status);
    summary["wall_time_s"] = std::chrono::duration<double>(t1 - t0).count();
    summary["logged_times"] = log.times.size();
    summary["final_time"] = log.times.back();
    summary["mass_drift"] = std::abs(last.mass - first.mass) / first.mass;
    summary["energy_drift"] =
        std::abs(last.energy - first.energy) / std::abs(first.energy);
    write_summary(summary, dir);
    std::cout << "evolve finished with status " << status_name(log.status) << " at t = "
              << log.times.back() << "\n";
    return log.status == inls::RunStatus::completed ? 0 : 1;
}

int run_verify(const CommonOpts& opts, const std::vector<std::string>& suites) {
    json summary = base_summary(opts);
    const auto dir = resolve_out(opts, "verify");
    const auto t0 = std::chrono::steady_clock::now();

    bool all_ok = true;
    json report = json::array();
    auto add = [&](const std::string& suite, const std::vector<inls::CheckResult>& checks) {
        json entry;
        entry["suite"] = suite;
        entry["pass"] = inls::all_pass(checks);
        for (const auto& c : checks) {
            entry["checks"].push_back(
                {{"name", c.name}, {"pass", c.pass}, {"measured", c.measured},
                 {"tolerance", c.detail}});
        }
        all_ok = all_ok && inls::all_pass(checks);
        report.push_back(entry);
        std::cout << (entry["pass"].get<bool>() ? "[PASS] " : "[FAIL] ") << suite << "\n";
    };

    for (const auto& suite : suites) {
        if (suite == "conservation" || suite == "virial-identity") {
            inls::RunConfig cfg;
            if (!opts.config_path.empty() || !opts.preset.empty()) {
                cfg = load_run_config(opts, nullptr);
            } else {
                cfg = inls::conservation_reference_config();
            }
            const auto art = inls::run_conservation_pair(cfg);
            if (suite == "conservation") add(suite, inls::criterion_conservation(art));
            else add(suite, inls::criterion_virial_identity(art));
        } else if (suite == "commutator") {
            add(suite, inls::criterion_commutator(opts.seed));
        } else if (suite == "dispersive-decay") {
            add(suite, inls::criterion_dispersive_decay());
        } else if (suite == "scaling-covariance") {
            add(suite, inls::criterion_scaling_covariance());
        } else if (suite == "convergence-order") {
            add(suite, inls::criterion_integrator_order());
        } else {
            throw inls::ConfigError("unknown verify suite: " + suite);
        }
    }

    const auto t1 = std::chrono::steady_clock::now();
    summary["status"] = all_ok ? "pass" : "fail";
    summary["wall_time_s"] = std::chrono::duration<double>(t1 - t0).count();
    summary["suites"] = report;
    write_summary(summary, dir);
    return all_ok ? 0 : 1;
}

int run_sweep(const CommonOpts& opts, const std::string& key,
              const std::vector<double>& values) {
    if (opts.config_path.empty() && opts.preset.empty())
        throw inls::ConfigError("sweep requires --config or --preset");
    const std::string path = !opts.config_path.empty()
                                 ? opts.config_path
                                 : inls::resolve_preset(opts.preset, preset_dir());
    const auto base_ini = inls::parse_ini_file(path);
    const auto dir = resolve_out(opts, "sweep");

    json summary = base_summary(opts);
    summary["config_file"] = path;
    summary["parameter"] = key;
    const auto t0 = std::chrono::steady_clock::now();

    int exit_code = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        auto ini = base_ini;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", values[i]);
        ini[key] = buf;
        const auto cfg = inls::config_from_ini(ini);
        const auto sub = dir / ("run_" + std::to_string(i));
        fs::create_directories(sub);

        const auto u0 = inls::build_initial_data(cfg, opts.seed);
        const auto log = inls::evolve(u0, cfg.model, cfg.evolve);
        inls::write_diagnostics_csv(log.records, cfg.evolve.diagnostics,
                                    (sub / "diagnostics.csv").string());
        json entry;
        entry["value"] = values[i];
        entry["dir"] = sub.string();
        entry["status"] = status_name(log.status);
        entry["final_time"] = log.times.back();
        summary["runs"].push_back(entry);
        std::cout << key << " = " << values[i] << " -> " << status_name(log.status)
                  << "\n";
        if (log.status != inls::RunStatus::completed) exit_code = 1;
    }

    const auto t1 = std::chrono::steady_clock::now();
    summary["status"] = exit_code == 0 ? "completed" : "partial";
    summary["wall_time_s"] = std::chrono::duration<double>(t1 - t0).count();
    write_summary(summary, dir);
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral workbench for the inhomogeneous NLS equation"};
    app.require_subcommand(1);

    CommonOpts gs_opts, ev_opts, vf_opts, sw_opts;
    std::vector<std::string> suites;
    std::string sweep_key;
    std::vector<double> sweep_values;

    auto* gs = app.add_subcommand("ground-state", "solve the radial ground state");
    add_common(gs, gs_opts);
    auto* ev = app.add_subcommand("evolve", "run the split-step evolution");
    add_common(ev, ev_opts);
    auto* vf = app.add_subcommand("verify", "run verification suites");
    add_common(vf, vf_opts);
    vf->add_option("--suite", suites,
                   "conservation | virial-identity | commutator | dispersive-decay | "
                   "scaling-covariance | convergence-order")
        ->required();
    auto* sw = app.add_subcommand("sweep", "evolve over a parameter ladder");
    add_common(sw, sw_opts);
    sw->add_option("--param", sweep_key, "INI key to sweep, e.g. initial.amplitude")
        ->required();
    sw->add_option("--values", sweep_values, "values for the swept key")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gs->parsed()) return run_ground_state(gs_opts);
        if (ev->parsed()) return run_evolve(ev_opts);
        if (vf->parsed()) return run_verify(vf_opts, suites);
        if (sw->parsed()) return run_sweep(sw_opts, sweep_key, sweep_values);
    } catch (const inls::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const inls::ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
