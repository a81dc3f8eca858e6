#include "squidqnd/artifacts.hpp"

#include <cmath>

#include "squidqnd/classical.hpp"
#include "squidqnd/constants.hpp"
#include "squidqnd/errors.hpp"

namespace squidqnd {

namespace c = constants;

namespace {

[[noreturn]] void rethrow_first(const FeasibilityReport& r) {
    const ReportIssue& e = r.errors.front();
    throw Error(e.kind, e.module, e.message);
}

}  // namespace

std::size_t default_photon_truncation(double photons, double thermal_photons) {
    const double n = photons + thermal_photons;
    return static_cast<std::size_t>(std::max(12.0, std::ceil(3.0 * n + 8.0 * std::sqrt(n) + 10.0)));
}

SpectrumArtifacts spectrum_artifacts(const RunConfig& cfg) {
    const DimensionlessCircuit dc = derive_dimensionless(cfg.device);
    const ReportOptions opts = to_report_options(cfg);
    const SolverOptions& solver = opts.fit.solver;
    const std::size_t levels = cfg.spectrum.levels;
    const PotentialSpec spec{dc.beta_L, dc.beta_C, dc.K, cfg.spectrum.phi0};

    SpectrumArtifacts out;
    out.grid = opts.grid_override ? *opts.grid_override : default_grid(spec, levels, solver);
    const Spectrum s = solve_spectrum(spec, out.grid, levels, solver);

    out.spectrum.columns = {"phi", "u"};
    for (std::size_t k = 0; k < levels; ++k) out.spectrum.columns.push_back("psi_" + std::to_string(k));
    const std::size_t n = s.grid.n_points;
    for (std::size_t i = 0; i < n; ++i) {
        const double phi = s.grid.node(i);
        std::vector<std::string> row{format_number(phi), format_number(spec(phi))};
        for (std::size_t k = 0; k < levels; ++k) row.push_back(format_number(s.levels[k].wavefunction[i]));
        out.spectrum.rows.push_back(std::move(row));
    }

    out.eigenvalues.columns = {"phi0"};
    for (std::size_t k = 0; k < levels; ++k) out.eigenvalues.columns.push_back("eps_" + std::to_string(k));
    const std::size_t m = cfg.spectrum.phi0_points;
    for (std::size_t j = 0; j < m; ++j) {
        const double f = m == 1 ? 0.0 : static_cast<double>(j) / static_cast<double>(m - 1);
        const double phi0 = m == 1 ? cfg.spectrum.phi0_min
                                   : cfg.spectrum.phi0_min + f * (cfg.spectrum.phi0_max - cfg.spectrum.phi0_min);
        PotentialSpec shifted = spec;
        shifted.phi0 = phi0;
        const Spectrum sj = solve_spectrum(shifted, out.grid, levels, solver);
        std::vector<std::string> row{format_number(phi0)};
        for (std::size_t k = 0; k < levels; ++k) row.push_back(format_number(sj.eps(k)));
        out.eigenvalues.rows.push_back(std::move(row));
    }
    return out;
}

DispersiveArtifacts dispersive_artifacts(const RunConfig& cfg) {
    const DeviceParams& p = cfg.device;
    ReportOptions opts = to_report_options(cfg);
    opts.include_quartic = false;
    const FeasibilityReport r = feasibility_report(p, opts);
    if (!r.couplings || !r.metrics) {
        if (!r.errors.empty()) rethrow_first(r);
        throw Error(ErrorKind::InvalidArgument, "dynamics-oracle", "couplings unavailable for this device");
    }

    DispersiveArtifacts out;
    out.couplings = *r.couplings;
    out.warnings = r.warnings;
    const double gamma = p.gamma_e;
    const double n_crit = r.metrics->N_e_crit;
    if (!std::isfinite(n_crit))
        throw Error(ErrorKind::DivergentCritical, "dynamics-oracle", "critical photon number is not finite");
    out.target_photons = cfg.dynamics.drive_fraction * n_crit;
    out.n_e_max = cfg.dynamics.n_e_max ? *cfg.dynamics.n_e_max
                                       : default_photon_truncation(out.target_photons, cfg.dynamics.thermal_photons);
    const std::size_t n_m_max = cfg.dynamics.n_m_max;
    const double omega_04 = out.couplings.Omega_04.si();
    const double omega_22 = out.couplings.Omega_22.si();
    const double drive = drive_for_photon_number(out.target_photons, gamma);
    const RwaHamiltonian h = build_rwa_hamiltonian(omega_04, omega_22, drive, n_m_max, out.n_e_max, 0.0);

    const double lo = cfg.dynamics.detuning_min ? *cfg.dynamics.detuning_min : -5.0 * gamma;
    const double hi = cfg.dynamics.detuning_max ? *cfg.dynamics.detuning_max
                                                : omega_22 * static_cast<double>(n_m_max) + 5.0 * gamma;
    const std::size_t n_det = cfg.dynamics.detuning_points;
    std::vector<double> detunings(n_det);
    for (std::size_t i = 0; i < n_det; ++i)
        detunings[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_det - 1);

    const SteadyStateResponse resp = lindblad_steady_state(h, gamma, cfg.dynamics.thermal_photons, detunings);

    out.response.columns = {"detuning_Hz", "n_m", "photon_number", "re_amp", "im_amp"};
    out.peaks.columns = {"n_m", "peak_detuning_Hz", "expected_shift_Hz", "peak_photon_number"};
    for (const ResponseCurve& curve : resp.curves) {
        for (std::size_t i = 0; i < n_det; ++i) {
            out.response.rows.push_back({format_number(detunings[i] / c::two_pi), std::to_string(curve.n_m),
                                         format_number(curve.photon_number[i]),
                                         format_number(curve.amplitude[i].real()),
                                         format_number(curve.amplitude[i].imag())});
        }
        out.peaks.rows.push_back({std::to_string(curve.n_m), format_number(curve.peak_detuning / c::two_pi),
                                  format_number(omega_22 * static_cast<double>(curve.n_m) / c::two_pi),
                                  format_number(curve.peak_photon_number)});
    }

    if (n_m_max >= 1) {
        out.tau = estimate_tau_m_numeric(resp, 0, p.T, p.omega_e(), &out.warnings);
        out.tau_analytic = measurement_time(out.couplings, p, out.target_photons).si();
    }
    return out;
}

TrajectoryArtifacts trajectory_artifacts(const RunConfig& cfg) {
    const DeviceParams& p = cfg.device;
    ClassicalState guess;
    guess.Phi = well_flux_guess(p, cfg.trajectory.well);
    const auto eq = find_equilibrium(p, guess, 0.0);
    if (!eq) throw Error(ErrorKind::FailedToConverge, "dynamics-oracle", "no stable equilibrium near the chosen well");

    ClassicalState start = *eq;
    start.x += cfg.trajectory.x0;
    start.Phi += cfg.trajectory.phi_offset;

    const double f_plasma = loop_plasma_omega(p) / c::two_pi;
    TrajectoryOptions opts;
    opts.dt = cfg.trajectory.dt ? *cfg.trajectory.dt : 1.0 / (200.0 * f_plasma);
    opts.duration = cfg.trajectory.duration ? *cfg.trajectory.duration : 1e4 / f_plasma;
    opts.record_every = cfg.trajectory.record_every;
    opts.integrator = cfg.trajectory.integrator;

    CurrentDrive drive;
    if (p.I_in_amp != 0.0) {
        const double amp = p.I_in_amp;
        const double w = p.omega_d;
        drive = [amp, w](double t) { return amp * std::cos(w * t); };
    }
    const auto samples = classical_trajectory(p, start, drive, opts);

    TrajectoryArtifacts out;
    out.trajectory.columns = {"t", "x", "phi", "Phi", "energy"};
    for (const auto& s : samples)
        out.trajectory.rows.push_back({format_number(s.t), format_number(s.state.x), format_number(s.state.varphi),
                                       format_number(s.state.Phi), format_number(s.energy)});
    out.initial_energy = samples.front().energy;
    out.final_energy = samples.back().energy;
    out.excitation_energy = excitation_energy(p, start);
    return out;
}

}  // namespace squidqnd
