// squidqnd command-line front end.
//
// Every command reads one config file and writes deterministic artifacts into
// the output directory (--out, then $SQUIDQND_OUT_DIR, then output.dir).
// Exit codes: 0 ok, 1 usage, 2 config error, 3 numerical failure, 4 validation failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "squidqnd/artifacts.hpp"
#include "squidqnd/config.hpp"
#include "squidqnd/constants.hpp"
#include "squidqnd/errors.hpp"
#include "squidqnd/output.hpp"
#include "squidqnd/report.hpp"
#include "squidqnd/sweep.hpp"
#include "squidqnd/validate.hpp"
#include "squidqnd/version.hpp"

namespace {

using namespace squidqnd;
namespace fs = std::filesystem;

enum Exit : int { kOk = 0, kUsage = 1, kConfig = 2, kNumerical = 3, kValidation = 4 };

struct Globals {
    std::string config_path;
    std::string out_dir;
    unsigned threads = 1;
    bool quiet = false;
};

void progress(const Globals& g, const std::string& msg) {
    if (!g.quiet) std::cerr << "[squidqnd] " << msg << "\n";
}

std::string out_path(const Globals& g, const RunConfig& cfg, const std::string& name) {
    const std::string dir = g.out_dir.empty() ? cfg.output.dir : g.out_dir;
    return (fs::path(dir) / name).string();
}

void emit(const Globals& g, const RunConfig& cfg, const std::string& command, const std::string& name,
          const CsvTable& table) {
    const std::string path = out_path(g, cfg, name);
    write_file(path, render_csv(header_lines(cfg, command), table));
    progress(g, "wrote " + path);
}

CsvTable report_summary(const FeasibilityReport& r) {
    CsvTable t;
    t.columns = {"quantity", "value"};
    auto add = [&](const std::string& k, double v) { t.rows.push_back({k, format_number(v)}); };
    if (r.circuit) {
        add("beta_L", r.circuit->beta_L);
        add("beta_C", r.circuit->beta_C);
        add("E0_J", r.circuit->E0);
    }
    if (r.two_level) {
        add("eta_over_E0", r.two_level->eta);
        add("delta_over_E0", r.two_level->delta);
        add("delta_over_h_Hz", r.two_level->delta_over_h());
    }
    if (r.couplings) {
        add("lambda_m", r.couplings->lambda_m);
        add("lambda_e", r.couplings->lambda_e);
        add("Omega_04_over_2pi_Hz", r.couplings->Omega_04.si() / constants::two_pi);
        add("Omega_22_over_2pi_Hz", r.couplings->Omega_22.si() / constants::two_pi);
    }
    if (r.metrics) {
        add("N_e_crit", r.metrics->N_e_crit);
        add("tau_m_s", r.metrics->tau_m.si());
        add("t0_s", r.metrics->t0.si());
        add("zeta", r.metrics->zeta);
        add("zeta_max", r.metrics->zeta_max);
        add("zeta_max_engineering", r.metrics->zeta_max_engineering);
        add("adiabaticity_ratio", r.metrics->adiabaticity_ratio);
    }
    return t;
}

int cmd_report(const Globals& g, const RunConfig& cfg) {
    progress(g, "running feasibility pipeline");
    const FeasibilityReport r = feasibility_report(cfg.device, to_report_options(cfg));
    if (cfg.output.json) {
        const std::string path = out_path(g, cfg, "report.json");
        write_file(path, render_report_json(r, cfg));
        progress(g, "wrote " + path);
    }
    if (cfg.output.csv) emit(g, cfg, "report", "report.csv", report_summary(r));
    for (const auto& w : r.warnings) progress(g, "warning: " + w);
    if (!g.quiet) {
        for (const auto& row : report_summary(r).rows) std::cout << row[0] << " = " << row[1] << "\n";
    }
    for (const auto& e : r.errors) std::cerr << "error [" << to_string(e.kind) << "] " << e.module << ": " << e.message << "\n";
    if (r.errors.empty()) return kOk;
    for (const auto& e : r.errors)
        if (e.kind != ErrorKind::InvalidArgument && e.kind != ErrorKind::Config) return kNumerical;
    return kConfig;
}

int cmd_sweep(const Globals& g, const RunConfig& cfg) {
    if (cfg.sweep.parameter.empty()) throw Error(ErrorKind::Config, "config", "sweep command needs a sweep block");
    progress(g, "sweeping " + cfg.sweep.parameter + " over " + std::to_string(cfg.sweep.points) + " points");
    const SweepResult result = run_sweep(cfg, g.threads, [&](std::size_t done, std::size_t total) {
        progress(g, "row " + std::to_string(done) + "/" + std::to_string(total));
    });
    const CsvTable table = sweep_table(result);
    if (cfg.output.csv) emit(g, cfg, "sweep", "sweep.csv", table);
    if (cfg.output.json) {
        nlohmann::ordered_json j;
        j["_meta"] = {{"tool", kToolName}, {"version", kVersion}, {"command", "sweep"},
                      {"config", cfg.resolved_lines()}};
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& row : table.rows) {
            nlohmann::ordered_json r;
            for (std::size_t i = 0; i < table.columns.size(); ++i) r[table.columns[i]] = row[i];
            rows.push_back(r);
        }
        j["rows"] = rows;
        const std::string path = out_path(g, cfg, "sweep.json");
        write_file(path, j.dump(2) + "\n");
        progress(g, "wrote " + path);
    }
    return kOk;
}

int cmd_spectrum(const Globals& g, const RunConfig& cfg) {
    progress(g, "solving loop spectrum");
    const SpectrumArtifacts a = spectrum_artifacts(cfg);
    emit(g, cfg, "spectrum", "spectrum.csv", a.spectrum);
    emit(g, cfg, "spectrum", "eigenvalues.csv", a.eigenvalues);
    return kOk;
}

int cmd_dispersive(const Globals& g, const RunConfig& cfg) {
    progress(g, "computing steady-state cavity response");
    const DispersiveArtifacts a = dispersive_artifacts(cfg);
    emit(g, cfg, "dispersive", "dispersive.csv", a.response);
    emit(g, cfg, "dispersive", "dispersive_peaks.csv", a.peaks);
    for (const auto& w : a.warnings) progress(g, "warning: " + w);
    if (!g.quiet && a.tau) {
        std::cout << "photons = " << format_number(a.target_photons) << "\n"
                  << "tau_m_numeric_s = " << format_number(a.tau->tau_m.si()) << "\n"
                  << "tau_m_analytic_s = " << format_number(a.tau_analytic) << "\n"
                  << "resolved_regime = " << (a.tau->resolved_regime ? "yes" : "no") << "\n";
    }
    return kOk;
}

int cmd_trajectory(const Globals& g, const RunConfig& cfg) {
    progress(g, "integrating classical equations of motion");
    const TrajectoryArtifacts a = trajectory_artifacts(cfg);
    emit(g, cfg, "trajectory", "trajectory.csv", a.trajectory);
    if (!g.quiet) {
        std::cout << "initial_energy_J = " << format_number(a.initial_energy) << "\n"
                  << "final_energy_J = " << format_number(a.final_energy) << "\n"
                  << "excitation_energy_J = " << format_number(a.excitation_energy) << "\n";
    }
    return kOk;
}

int cmd_validate(const Globals& g, const RunConfig& cfg) {
    progress(g, "running validation suite");
    const auto results = run_validation(cfg);
    const std::string table = render_validation_table(results);
    std::cout << table;
    std::string text;
    for (const auto& h : header_lines(cfg, "validate")) text += h + "\n";
    text += table;
    const std::string path = out_path(g, cfg, "validation.txt");
    write_file(path, text);
    progress(g, "wrote " + path);
    return all_passed(results) ? kOk : kValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Feasibility simulator for SQUID-coupled QND phonon detection", kToolName};
    app.set_version_flag("--version", std::string(kToolName) + " " + std::string(kVersion));
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("-c,--config", g.config_path, "Config file")->required()->check(CLI::ExistingFile);
    app.add_option("-o,--out", g.out_dir, "Output directory")->envname("SQUIDQND_OUT_DIR");
    app.add_option("-j,--threads", g.threads, "Worker threads for sweeps")->check(CLI::Range(1u, 1024u));
    app.add_flag("-q,--quiet", g.quiet, "Suppress progress messages");

    const std::pair<const char*, const char*> commands[] = {
        {"report", "Full feasibility chain, written as JSON"},
        {"sweep", "Feasibility chain over one swept device parameter"},
        {"spectrum", "Loop wavefunctions and eigenvalues versus flux offset"},
        {"dispersive", "Steady-state cavity response per phonon number"},
        {"trajectory", "Classical coupled equations of motion"},
        {"validate", "Invariant and oracle checks"},
    };
    for (const auto& [name, help] : commands) app.add_subcommand(name, help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        const RunConfig cfg = load_config(g.config_path);
        if (command == "report") return cmd_report(g, cfg);
        if (command == "sweep") return cmd_sweep(g, cfg);
        if (command == "spectrum") return cmd_spectrum(g, cfg);
        if (command == "dispersive") return cmd_dispersive(g, cfg);
        if (command == "trajectory") return cmd_trajectory(g, cfg);
        return cmd_validate(g, cfg);
    } catch (const Error& e) {
        std::cerr << "error [" << to_string(e.kind()) << "] " << e.what() << "\n";
        return e.is_config_error() ? kConfig : kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumerical;
    }
}
