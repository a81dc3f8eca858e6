#pragma once

#include <optional>

#include "squidqnd/config.hpp"
#include "squidqnd/lindblad.hpp"
#include "squidqnd/output.hpp"

namespace squidqnd {

/// spectrum.csv (phi, u, psi_k) at spectrum.phi0 and eigenvalues.csv (phi0, eps_k)
/// over the configured phi0 range, both on one grid.
struct SpectrumArtifacts {
    CsvTable spectrum;
    CsvTable eigenvalues;
    Grid grid;
};

SpectrumArtifacts spectrum_artifacts(const RunConfig& cfg);

struct DispersiveArtifacts {
    CsvTable response;  // detuning_Hz, n_m, photon_number, re_amp, im_amp
    CsvTable peaks;     // n_m, peak_detuning_Hz, expected_shift_Hz, peak_photon_number
    EffectiveCouplings couplings;
    double target_photons = 0.0;
    std::size_t n_e_max = 0;
    std::optional<TauEstimate> tau;  // between blocks 0 and 1, when n_m_max >= 1
    double tau_analytic = 0.0;       // s, closed form at the same photon number
    Warnings warnings;
};

/// Steady-state cavity response per mechanical Fock block, driven at
/// dynamics.drive_fraction of the critical photon number.
DispersiveArtifacts dispersive_artifacts(const RunConfig& cfg);

struct TrajectoryArtifacts {
    CsvTable trajectory;  // t, x, phi, Phi, energy
    double initial_energy = 0.0;
    double final_energy = 0.0;
    double excitation_energy = 0.0;
};

/// Classical motion from the chosen well's equilibrium displaced by
/// trajectory.x0 and trajectory.phi_offset.
TrajectoryArtifacts trajectory_artifacts(const RunConfig& cfg);

/// n_e truncation used when dynamics.n_e_max is not set.
std::size_t default_photon_truncation(double photons, double thermal_photons);

}  // namespace squidqnd
