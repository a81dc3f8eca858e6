#include "squidqnd/sweep.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "squidqnd/constants.hpp"
#include "squidqnd/errors.hpp"

namespace squidqnd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string status_of(const FeasibilityReport& r) {
    if (r.errors.empty()) return "ok";
    const ReportIssue& e = r.errors.front();
    std::string msg = std::string(to_string(e.kind)) + "@" + e.module;
    // Commas and quotes would break the CSV row.
    for (char& ch : msg)
        if (ch == ',' || ch == '"' || ch == '\n') ch = ' ';
    return msg;
}

SweepRow evaluate(const RunConfig& cfg, const FieldInfo& field, double value, const ReportOptions& options) {
    DeviceParams p = cfg.device;
    p.*field.member = value;
    SweepRow row;
    row.value = value;
    try {
        p.validate();
    } catch (const Error& e) {
        row.zeta_max = row.Omega_22 = row.delta_over_h = row.adiabaticity_ratio = kNaN;
        row.status = std::string(to_string(e.kind())) + "@" + e.module();
        return row;
    }
    const FeasibilityReport r = feasibility_report(p, options);
    row.zeta_max = r.metrics ? r.metrics->zeta_max : kNaN;
    row.Omega_22 = r.couplings ? r.couplings->Omega_22.si() : kNaN;
    row.delta_over_h = r.two_level ? r.two_level->delta_over_h() : kNaN;
    row.adiabaticity_ratio = r.metrics ? r.metrics->adiabaticity_ratio : kNaN;
    row.flags = r.flags;
    row.status = status_of(r);
    return row;
}

}  // namespace

bool affects_loop_circuit(const std::string& field) {
    return field == "Lambda" || field == "C_J" || field == "I_c" || field == "M" || field == "L";
}

SweepResult run_sweep(const RunConfig& cfg, unsigned threads, const SweepProgress& progress) {
    if (cfg.sweep.parameter.empty()) throw Error(ErrorKind::Config, "sweep", "no sweep block configured");
    const FieldInfo* field = find_device_field(cfg.sweep.parameter);
    if (!field) throw Error(ErrorKind::Config, "sweep", "unknown sweep parameter '" + cfg.sweep.parameter + "'");

    ReportOptions options = to_report_options(cfg);
    options.include_quartic = false;
    // The loop model is shared when the swept field leaves the circuit alone.
    if (!affects_loop_circuit(cfg.sweep.parameter)) {
        const DimensionlessCircuit dc = derive_dimensionless(cfg.device);
        if (dc.double_well) {
            try {
                const PotentialSpec spec{dc.beta_L, dc.beta_C, dc.K, 0.0};
                options.two_level = options.grid_override
                                        ? extract_two_level(spec, dc.E0, *options.grid_override, options.fit)
                                        : extract_two_level(spec, dc.E0, options.fit);
            } catch (const Error&) {
                // Each row reports the failure itself.
            }
        }
    }

    const std::vector<double> values = cfg.sweep.values();
    SweepResult result;
    result.parameter = cfg.sweep.parameter;
    result.rows.resize(values.size());

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::mutex progress_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < values.size(); i = next++) {
            result.rows[i] = evaluate(cfg, *field, values[i], options);
            const std::size_t finished = ++done;
            if (progress) {
                std::lock_guard lock(progress_mutex);
                progress(finished, values.size());
            }
        }
    };
    const unsigned n_workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(values.size())));
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n_workers; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return result;
}

CsvTable sweep_table(const SweepResult& result) {
    CsvTable t;
    const FieldInfo* field = find_device_field(result.parameter);
    std::string unit = field ? std::string(si_unit(field->dimension)) : std::string{};
    for (char& ch : unit)
        if (ch == '/') ch = '_';
    t.columns = {result.parameter + (unit.empty() ? "" : "_" + unit),
                 "zeta_max", "Omega_22_over_2pi_Hz", "delta_over_h_Hz", "adiabaticity_ratio",
                 "double_well", "two_level_valid", "delta_gt_kT", "high_T_e", "high_T_m",
                 "single_phonon", "adiabatic", "status"};
    auto b = [](bool v) { return std::string(v ? "1" : "0"); };
    for (const SweepRow& r : result.rows) {
        t.rows.push_back({format_number(r.value), format_number(r.zeta_max),
                          format_number(r.Omega_22 / constants::two_pi), format_number(r.delta_over_h),
                          format_number(r.adiabaticity_ratio), b(r.flags.double_well), b(r.flags.two_level_valid),
                          b(r.flags.delta_gt_kT), b(r.flags.high_T_e), b(r.flags.high_T_m),
                          b(r.flags.single_phonon), b(r.flags.adiabatic), r.status});
    }
    return t;
}

}  // namespace squidqnd
