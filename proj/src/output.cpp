#include "squidqnd/output.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "squidqnd/constants.hpp"
#include "squidqnd/errors.hpp"
#include "squidqnd/version.hpp"

namespace squidqnd {

namespace {

using json = nlohmann::ordered_json;

json num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return std::strtod(buf, nullptr);
}

json window(double a, double b) { return json::array({num(a), num(b)}); }

json flags_json(const FeasibilityFlags& f) {
    json j;
    j["double_well"] = f.double_well;
    j["two_level_valid"] = f.two_level_valid;
    j["delta_gt_kT"] = f.delta_gt_kT;
    j["high_T_e"] = f.high_T_e;
    j["high_T_m"] = f.high_T_m;
    j["single_phonon"] = f.single_phonon;
    j["adiabatic"] = f.adiabatic;
    return j;
}

std::optional<double> computed_reference(const FeasibilityReport& r, const std::string& name) {
    if (name == "beta_L" && r.circuit) return r.circuit->beta_L;
    if (name == "beta_C" && r.circuit) return r.circuit->beta_C;
    if (name == "eta_over_E0" && r.two_level) return r.two_level->eta;
    if (name == "delta_over_E0" && r.two_level) return r.two_level->delta;
    if (name == "delta_over_h_Hz" && r.two_level) return r.two_level->delta_over_h();
    if (name == "Omega_22_over_2pi_Hz" && r.couplings) return r.couplings->Omega_22.si() / constants::two_pi;
    if (name == "zeta_max" && r.metrics) return r.metrics->zeta_max;
    if (name == "adiabaticity_ratio" && r.metrics) return r.metrics->adiabaticity_ratio;
    return std::nullopt;
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<std::string> header_lines(const RunConfig& cfg, std::string_view command) {
    std::vector<std::string> out;
    out.push_back("# " + std::string(kToolName) + " " + std::string(kVersion));
    out.push_back("# command: " + std::string(command));
    for (const auto& line : cfg.resolved_lines()) out.push_back("# " + line);
    return out;
}

std::string render_csv(const std::vector<std::string>& header, const CsvTable& table) {
    std::string s;
    for (const auto& h : header) s += h + "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) s += (i ? "," : "") + table.columns[i];
    s += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + row[i];
        s += "\n";
    }
    return s;
}

std::string render_report_json(const FeasibilityReport& r, const RunConfig& cfg) {
    json root;
    json meta;
    meta["tool"] = kToolName;
    meta["version"] = kVersion;
    meta["command"] = "report";
    meta["config"] = cfg.resolved_lines();
    root["_meta"] = meta;

    json device;
    for (const FieldInfo& f : device_fields()) device[std::string(f.name)] = num(r.params.*f.member);
    device["omega_e"] = num(r.params.omega_e());
    device["K"] = num(r.params.K());
    root["device"] = device;

    if (r.circuit) {
        json j;
        j["beta_L"] = num(r.circuit->beta_L);
        j["beta_C"] = num(r.circuit->beta_C);
        j["K"] = num(r.circuit->K);
        j["E0_J"] = num(r.circuit->E0);
        j["E0_over_h_Hz"] = num(r.circuit->E0 / constants::h);
        j["phi_e_offset"] = num(r.circuit->phi_e_offset);
        j["double_well"] = r.circuit->double_well;
        j["plasma_frequency_Hz"] = num(loop_plasma_omega(r.params) / constants::two_pi);
        root["circuit"] = j;
    } else {
        root["circuit"] = nullptr;
    }

    if (r.two_level) {
        const TwoLevelModel& t = *r.two_level;
        json j;
        j["eta_over_E0"] = num(t.eta);
        j["delta_over_E0"] = num(t.delta);
        j["delta_over_h_Hz"] = num(t.delta_over_h());
        j["fit_residual"] = num(t.fit_residual);
        j["third_level_margin"] = num(t.third_level_margin);
        j["window"] = window(t.window_min, t.window_max);
        j["delta_uncertainty"] = num(t.delta_uncertainty);
        j["delta_resolved"] = t.delta_resolved;
        j["valid"] = t.valid;
        j["grid"] = {{"half_width", num(t.grid.half_width())}, {"n_points", t.grid.n_points}};
        root["two_level"] = j;
    } else {
        root["two_level"] = nullptr;
    }

    if (r.couplings) {
        const EffectiveCouplings& c = *r.couplings;
        json j;
        j["lambda_m"] = num(c.lambda_m);
        j["lambda_e"] = num(c.lambda_e);
        j["Omega_04_rad_s"] = num(c.Omega_04.si());
        j["Omega_22_rad_s"] = num(c.Omega_22.si());
        j["Omega_04_over_2pi_Hz"] = num(c.Omega_04.si() / constants::two_pi);
        j["Omega_22_over_2pi_Hz"] = num(c.Omega_22.si() / constants::two_pi);
        root["couplings"] = j;
    } else {
        root["couplings"] = nullptr;
    }

    if (r.metrics) {
        const DetectabilityMetrics& m = *r.metrics;
        json j;
        j["N_e_crit"] = num(m.N_e_crit);
        j["U0_J"] = num(m.U0.si());
        j["tau_m_s"] = num(m.tau_m.si());
        j["t0_s"] = num(m.t0.si());
        j["zeta"] = num(m.zeta);
        j["zeta_max"] = num(m.zeta_max);
        j["zeta_max_engineering"] = num(m.zeta_max_engineering);
        j["Gamma_c_rad_s"] = num(m.Gamma_c.si());
        j["adiabaticity_ratio"] = num(m.adiabaticity_ratio);
        root["metrics"] = j;
    } else {
        root["metrics"] = nullptr;
    }

    if (r.quartic && r.rwa_from_quartic) {
        const QuarticFit& q = *r.quartic;
        const RwaCoefficients& w = *r.rwa_from_quartic;
        json j;
        j["c0"] = num(q.c0);
        j["c2"] = num(q.c2);
        j["c4"] = num(q.c4);
        json coeffs = json::array();
        for (double v : q.even_coefficients) coeffs.push_back(num(v));
        j["even_coefficients"] = coeffs;
        j["domain"] = window(q.domain_min, q.domain_max);
        j["residual"] = num(q.residual);
        j["Omega_20_rad_s"] = num(w.Omega_20.si());
        j["Omega_02_rad_s"] = num(w.Omega_02.si());
        j["Omega_40_rad_s"] = num(w.Omega_40.si());
        j["Omega_04_rad_s"] = num(w.Omega_04.si());
        j["Omega_22_rad_s"] = num(w.Omega_22.si());
        root["quartic"] = j;
    } else {
        root["quartic"] = nullptr;
    }

    root["flags"] = flags_json(r.flags);

    json refs = json::object();
    for (const auto& [name, value] : cfg.reference) {
        json j;
        j["reference"] = num(value);
        const auto got = computed_reference(r, name);
        j["computed"] = got ? num(*got) : json(nullptr);
        j["relative_deviation"] = got && value != 0.0 ? num((*got - value) / value) : json(nullptr);
        refs[name] = j;
    }
    root["reference"] = refs;

    root["warnings"] = r.warnings;
    json errs = json::array();
    for (const auto& e : r.errors)
        errs.push_back({{"module", e.module}, {"kind", to_string(e.kind)}, {"message", e.message}});
    root["errors"] = errs;
    return root.dump(2) + "\n";
}

void write_file(const std::string& path, std::string_view content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::InvalidArgument, "output", "cannot write '" + tmp.string() + "'");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error(ErrorKind::InvalidArgument, "output", "write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

}  // namespace squidqnd
