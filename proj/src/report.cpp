#include "squidqnd/report.hpp"

#include <cmath>
#include <limits>

#include "squidqnd/constants.hpp"

namespace squidqnd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class F>
bool stage(FeasibilityReport& r, F&& f) {
    try {
        f();
        return true;
    } catch (const Error& e) {
        std::string msg = e.what();
        const std::string prefix = e.module() + ": ";
        if (msg.starts_with(prefix)) msg.erase(0, prefix.size());
        r.errors.push_back({e.kind(), e.module(), msg});
    } catch (const std::exception& e) {
        r.errors.push_back({ErrorKind::InvalidArgument, "pipeline", e.what()});
    }
    return false;
}

DetectabilityMetrics empty_metrics() {
    DetectabilityMetrics m;
    m.N_e_crit = kNaN;
    m.tau_m = Seconds{kNaN};
    m.t0 = Seconds{kNaN};
    m.zeta = kNaN;
    m.zeta_max = kNaN;
    m.zeta_max_engineering = kNaN;
    m.Gamma_c = RadPerSecond{kNaN};
    m.adiabaticity_ratio = kNaN;
    m.U0 = Joules{kNaN};
    return m;
}

}  // namespace

FeasibilityFlags compute_flags(const FeasibilityReport& r) {
    FeasibilityFlags f;
    const DeviceParams& p = r.params;
    const double thermal = constants::k_B * p.T;
    f.high_T_e = thermal >= 5.0 * constants::hbar * p.omega_e();
    f.high_T_m = thermal >= 5.0 * constants::hbar * p.omega_m;
    if (r.circuit) f.double_well = r.circuit->double_well;
    if (r.two_level) {
        f.two_level_valid = r.two_level->valid;
        f.delta_gt_kT = r.two_level->delta_joules() > thermal;
    }
    if (r.metrics) {
        f.single_phonon = r.metrics->zeta_max >= 1.0;
        f.adiabatic = r.metrics->adiabaticity_ratio >= 1.0;
    }
    return f;
}

FeasibilityReport feasibility_report(const DeviceParams& p, const ReportOptions& options) {
    FeasibilityReport r;
    r.params = p;

    if (!stage(r, [&] { r.circuit = derive_dimensionless(p); })) {
        r.flags = compute_flags(r);
        return r;
    }
    const DimensionlessCircuit& dc = *r.circuit;

    DetectabilityMetrics metrics = empty_metrics();
    stage(r, [&] { metrics.t0 = fock_lifetime(p, &r.warnings); });

    if (!dc.double_well) {
        r.warnings.push_back("two-level stage skipped: beta_L (1 - K^2) <= 1, the loop potential has a single well");
    } else {
        const PotentialSpec spec{dc.beta_L, dc.beta_C, dc.K, 0.0};
        stage(r, [&] {
            r.two_level = options.two_level      ? *options.two_level
                          : options.grid_override
                              ? extract_two_level(spec, dc.E0, *options.grid_override, options.fit)
                              : extract_two_level(spec, dc.E0, options.fit);
            if (!r.two_level->delta_resolved)
                r.warnings.push_back("Delta below the nested-grid error floor; splitting unresolved");
            if (!r.two_level->valid)
                r.warnings.push_back("two-level fit residual above bound; model flagged invalid");
        });
    }

    if (r.two_level) {
        const TwoLevelModel& tl = *r.two_level;
        stage(r, [&] { r.couplings = compute_couplings(p, tl); });
        metrics.zeta_max = zeta_max(p, tl);
        metrics.zeta_max_engineering = zeta_max_engineering(p, tl);
        if (r.couplings) {
            stage(r, [&] {
                metrics.N_e_crit = critical_photon_number(*r.couplings, p.gamma_e);
                metrics.U0 = Joules{metrics.N_e_crit * constants::hbar * p.omega_e()};
                metrics.tau_m = measurement_time(*r.couplings, p, metrics.N_e_crit, &r.warnings);
                metrics.zeta = metrics.t0.si() / metrics.tau_m.si();
                const Adiabaticity a = adiabaticity_at(p, tl, metrics.N_e_crit);
                metrics.Gamma_c = a.Gamma_c;
                metrics.adiabaticity_ratio = a.ratio;
            });
        }
        r.metrics = metrics;

        if (options.include_quartic) {
            stage(r, [&] {
                const double half = std::min(options.quartic_extent * tl.delta / tl.eta, tl.window_max);
                const auto phi0 = symmetric_samples(half, options.quartic_points);
                const PotentialSpec spec{dc.beta_L, dc.beta_C, dc.K, 0.0};
                const auto surface = exact_surface(spec, tl.grid, tl, phi0, options.fit.solver);
                r.quartic = fit_quartic(phi0, surface);
                r.rwa_from_quartic = rwa_coefficients_from_quartic(*r.quartic, p);
            });
        }
    } else {
        r.metrics = metrics;
    }

    r.flags = compute_flags(r);
    return r;
}

}  // namespace squidqnd
