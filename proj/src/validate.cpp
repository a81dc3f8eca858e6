#include "squidqnd/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "squidqnd/artifacts.hpp"
#include "squidqnd/constants.hpp"
#include "squidqnd/errors.hpp"
#include "squidqnd/lindblad.hpp"
#include "squidqnd/quartic.hpp"
#include "squidqnd/schrodinger.hpp"
#include "squidqnd/two_level.hpp"

namespace squidqnd {

namespace {

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

CheckResult guarded(const std::string& name, const std::function<CheckResult()>& body) {
    try {
        CheckResult r = body();
        r.name = name;
        return r;
    } catch (const Error& e) {
        return {name, false, std::string(to_string(e.kind())) + ": " + e.what()};
    } catch (const std::exception& e) {
        return {name, false, e.what()};
    }
}

struct Context {
    const RunConfig& cfg;
    ReportOptions options;
    DimensionlessCircuit circuit;

    Grid grid_for(const PotentialSpec& spec, std::size_t levels) const {
        return options.grid_override ? *options.grid_override : default_grid(spec, levels, options.fit.solver);
    }
    PotentialSpec spec(double phi0) const { return {circuit.beta_L, circuit.beta_C, circuit.K, phi0}; }
};

CheckResult harmonic_limit(const Context& ctx) {
    const PotentialSpec spec{0.0, ctx.circuit.beta_C, 0.0, 0.0};
    const std::size_t levels = 4;
    const Spectrum s = solve_spectrum(spec, ctx.grid_for(spec, levels), levels, ctx.options.fit.solver);
    double worst = 0.0;
    for (std::size_t n = 0; n < levels; ++n)
        worst = std::max(worst, rel(s.eps(n), (2.0 * static_cast<double>(n) + 1.0) * std::sqrt(spec.beta_C)));
    return {"", worst < 1e-6, "max rel error " + sci(worst) + " (tol 1e-6)"};
}

CheckResult parity(const Context& ctx) {
    const PotentialSpec sym = ctx.spec(0.0);
    const Grid grid = ctx.grid_for(sym, 2);
    const Spectrum s = solve_spectrum(sym, grid, 2, ctx.options.fit.solver);
    double even_err = 0.0, odd_err = 0.0, scale0 = 0.0, scale1 = 0.0;
    const auto& p0 = s.levels[0].wavefunction;
    const auto& p1 = s.levels[1].wavefunction;
    const std::size_t n = p0.size();
    for (std::size_t i = 0; i < n; ++i) {
        even_err = std::max(even_err, std::abs(p0[i] - p0[n - 1 - i]));
        odd_err = std::max(odd_err, std::abs(p1[i] + p1[n - 1 - i]));
        scale0 = std::max(scale0, std::abs(p0[i]));
        scale1 = std::max(scale1, std::abs(p1[i]));
    }
    even_err /= scale0;
    odd_err /= scale1;
    const double shift = 0.02;
    const Spectrum plus = solve_spectrum(ctx.spec(shift), grid, 2, ctx.options.fit.solver);
    const Spectrum minus = solve_spectrum(ctx.spec(-shift), grid, 2, ctx.options.fit.solver);
    const double mirror = std::max(rel(plus.eps(0), minus.eps(0)), rel(plus.eps(1), minus.eps(1)));
    const bool ok = even_err < 1e-8 && odd_err < 1e-8 && mirror < 1e-10;
    return {"", ok,
            "even " + sci(even_err) + ", odd " + sci(odd_err) + ", e(phi0)=e(-phi0) " + sci(mirror) +
                " (tol 1e-8, 1e-8, 1e-10)"};
}

CheckResult hellmann_feynman(const Context& ctx) {
    const double phi0 = 0.01;
    const double h = 1e-4;
    const PotentialSpec spec = ctx.spec(phi0);
    const Grid grid = ctx.grid_for(spec, 2);
    const Spectrum s = solve_spectrum(spec, grid, 2, ctx.options.fit.solver);
    const Spectrum sp = solve_spectrum(ctx.spec(phi0 + h), grid, 2, ctx.options.fit.solver);
    const Spectrum sm = solve_spectrum(ctx.spec(phi0 - h), grid, 2, ctx.options.fit.solver);
    const double slope_fd = (sp.eps(0) - sm.eps(0)) / (2.0 * h);

    const Grid& g = s.grid;
    const auto& psi = s.levels[0].wavefunction;
    std::vector<double> dpsi(psi.size());
    const double k2 = 1.0 - spec.K * spec.K;
    for (std::size_t i = 0; i < psi.size(); ++i) dpsi[i] = -2.0 * (g.node(i) - phi0) / k2 * psi[i];
    const double slope_hf = overlap(g, psi, dpsi) / overlap(g, psi, psi);
    const double err = rel(slope_hf, slope_fd);
    return {"", err < 1e-5, "d e0/d phi0: FD " + sci(slope_fd) + ", <psi|du/dphi0|psi> " + sci(slope_hf) +
                                ", rel " + sci(err) + " (tol 1e-5)"};
}

CheckResult quartic_oracle(const Context& ctx, const TwoLevelModel& tl) {
    const double half = std::min(ctx.options.quartic_extent * tl.delta / tl.eta, tl.window_max);
    const auto phi0 = symmetric_samples(half, ctx.options.quartic_points);
    const QuarticFit fit = fit_quartic(phi0, analytic_surface(tl, phi0));
    const double c2 = -tl.eta * tl.eta / (2.0 * tl.delta);
    const double c4 = std::pow(tl.eta, 4) / (8.0 * std::pow(tl.delta, 3));
    const double e2 = rel(fit.c2, c2);
    const double e4 = rel(fit.c4, c4);
    return {"", e2 < 1e-2 && e4 < 1e-2,
            "c2 rel " + sci(e2) + ", c4 rel " + sci(e4) + " vs -eta^2/2Delta, eta^4/8Delta^3 (tol 1e-2)"};
}

CheckResult quartic_vs_closed_form(const FeasibilityReport& r) {
    if (!r.rwa_from_quartic || !r.couplings) throw Error(ErrorKind::InvalidArgument, "validate", "quartic fit unavailable");
    const double e04 = rel(r.rwa_from_quartic->Omega_04.si(), r.couplings->Omega_04.si());
    const double e22 = rel(r.rwa_from_quartic->Omega_22.si(), r.couplings->Omega_22.si());
    return {"", e04 < 0.05 && e22 < 0.05,
            "exact-surface Omega_04 rel " + sci(e04) + ", Omega_22 rel " + sci(e22) + " (tol 5e-2)"};
}

CheckResult linear_cavity(const Context& ctx) {
    const double gamma = ctx.cfg.device.gamma_e;
    const double n_th = ctx.cfg.dynamics.thermal_photons;
    const double photons = 2.0;
    const double drive = drive_for_photon_number(photons, gamma);
    const std::size_t n_e = default_photon_truncation(photons, n_th);
    const RwaHamiltonian h = build_rwa_hamiltonian(0.0, 0.0, drive, 2, n_e, 0.0);
    double worst = 0.0;
    for (double x : {-2.0, -0.5, 0.0, 0.3, 1.5}) {
        const double det = x * gamma;
        const CavityState st = cavity_steady_state(h.block(0, det), gamma, n_th, 1e-9);
        const double expected = drive * drive / (det * det + 0.25 * gamma * gamma) + n_th;
        worst = std::max(worst, rel(st.photon_number, expected));
    }
    return {"", worst < 1e-6, "photon number vs F^2/(delta^2+gamma^2/4) + n_th: max rel " + sci(worst) + " (tol 1e-6)"};
}

CheckResult qnd_blocks(const Context& ctx, const FeasibilityReport& r) {
    const double gamma = ctx.cfg.device.gamma_e;
    const double omega_04 = r.couplings ? r.couplings->Omega_04.si() : 0.01 * gamma;
    const double omega_22 = r.couplings ? r.couplings->Omega_22.si() : 0.1 * gamma;
    const double drive = drive_for_photon_number(1.0, gamma);
    const RwaHamiltonian h = build_rwa_hamiltonian(omega_04, omega_22, drive, 2, 8, 0.0);
    const Eigen::MatrixXcd nm = number_operator_m(h);
    const double comm = (h.matrix * nm - nm * h.matrix).norm() / h.matrix.norm();

    const Eigen::Index dim = h.matrix.rows();
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    for (std::size_t n = 0; n <= h.n_m_max; ++n) psi(static_cast<Eigen::Index>(h.index(n, 0))) = 1.0;
    psi.normalize();
    const Eigen::MatrixXcd rho0 = psi * psi.adjoint();
    const auto before = mechanical_populations(h, rho0);
    const Eigen::MatrixXcd rho = evolve_master_equation(h, gamma, ctx.cfg.dynamics.thermal_photons, rho0,
                                                        5.0 / gamma, 4000);
    const auto after = mechanical_populations(h, rho);
    double drift = 0.0;
    for (std::size_t i = 0; i < before.size(); ++i) drift = std::max(drift, std::abs(after[i] - before[i]));
    return {"", comm < 1e-12 && drift < 1e-10,
            "||[H,N_m]||/||H|| " + sci(comm) + ", block population drift " + sci(drift) + " (tol 1e-12, 1e-10)"};
}

CheckResult dual_zeta(const FeasibilityReport& r) {
    if (!r.metrics || !std::isfinite(r.metrics->zeta_max))
        throw Error(ErrorKind::InvalidArgument, "validate", "zeta_max unavailable");
    const double a = r.metrics->zeta_max;
    const double b = r.metrics->zeta_max_engineering;
    const double err = rel(a, b);
    return {"", err < 0.02, "symbolic " + sci(a) + ", engineering " + sci(b) + ", rel " + sci(err) + " (tol 2e-2)"};
}

}  // namespace

std::vector<CheckResult> run_validation(const RunConfig& cfg) {
    Context ctx{cfg, to_report_options(cfg), {}};
    std::vector<CheckResult> out;
    try {
        ctx.circuit = derive_dimensionless(cfg.device);
    } catch (const Error& e) {
        out.push_back({"circuit", false, e.what()});
        return out;
    }
    const FeasibilityReport report = feasibility_report(cfg.device, ctx.options);

    out.push_back(guarded("harmonic limit", [&] { return harmonic_limit(ctx); }));
    out.push_back(guarded("parity", [&] { return parity(ctx); }));
    out.push_back(guarded("Hellmann-Feynman slope", [&] { return hellmann_feynman(ctx); }));
    out.push_back(guarded("quartic oracle (analytic surface)", [&] {
        if (!report.two_level) {
            if (!report.errors.empty()) {
                const auto& e = report.errors.front();
                throw Error(e.kind, e.module, e.message);
            }
            throw Error(ErrorKind::InvalidArgument, "validate", "two-level model unavailable");
        }
        return quartic_oracle(ctx, *report.two_level);
    }));
    out.push_back(guarded("quartic fit vs closed forms", [&] { return quartic_vs_closed_form(report); }));
    out.push_back(guarded("linear cavity", [&] { return linear_cavity(ctx); }));
    out.push_back(guarded("QND block structure", [&] { return qnd_blocks(ctx, report); }));
    out.push_back(guarded("dual zeta_max forms", [&] { return dual_zeta(report); }));
    return out;
}

std::string render_validation_table(const std::vector<CheckResult>& results) {
    std::size_t width = 5;
    for (const auto& r : results) width = std::max(width, r.name.size());
    std::string s;
    for (const auto& r : results) {
        std::string name = r.name;
        name.resize(width, ' ');
        s += (r.passed ? "PASS  " : "FAIL  ") + name + "  " + r.detail + "\n";
    }
    return s;
}

bool all_passed(const std::vector<CheckResult>& results) {
    return !results.empty() && std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
}

}  // namespace squidqnd
