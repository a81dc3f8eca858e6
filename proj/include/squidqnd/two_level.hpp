#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "squidqnd/schrodinger.hpp"

namespace squidqnd {

/// Two-level parameters of the loop near the symmetric point: the local
/// Hamiltonian is [[eta phi0, Delta], [Delta, -eta phi0]] in units of E0.
struct TwoLevelModel {
    double eta = 0.0;                // E0 per unit phi0
    double delta = 0.0;              // E0
    double delta_uncertainty = 0.0;  // E0, nested-grid floor
    bool delta_resolved = true;
    double E0 = 0.0;                 // J, zero when unknown
    double window_min = 0.0;
    double window_max = 0.0;
    double fit_residual = 0.0;       // relative RMS over the window
    double third_level_margin = 0.0; // min over samples of (e2-e1)/(e1-e0)
    bool valid = false;
    std::vector<double> sample_phi0;
    std::vector<double> sample_gap;  // e1 - e0 at each sample, E0
    Grid grid;                       // symmetric-point grid the model was extracted on

    double eta_joules() const { return eta * E0; }
    double delta_joules() const { return delta * E0; }
    double delta_over_h() const;  // Hz
};

struct DeltaEstimate {
    double delta = 0.0;        // E0
    double uncertainty = 0.0;  // E0
    bool resolved = true;
};

/// Delta = (e1 - e0)/2 at the symmetric point. Rejects phi0 != 0.
DeltaEstimate extract_delta(const Spectrum& s);

struct EtaFitOptions {
    std::size_t n_samples = 13;
    double margin_ratio = 5.0;
    double max_window = 1.0;
    double residual_bound = 1e-2;
    SolverOptions solver;
};

/// Fits e1 - e0 = 2 sqrt(eta^2 phi0^2 + Delta^2) with Delta fixed, over the
/// largest window [0, phi0_max] where the third level stays margin_ratio
/// times further away than the gap. Spectra at each phi0 reuse the width and
/// resolution of `grid`, re-centered on phi0.
/// Throws WindowCollapse if no positive window exists.
TwoLevelModel extract_eta(const PotentialSpec& spec, const Grid& grid, const DeltaEstimate& delta,
                          const EtaFitOptions& options = {});

/// Full extraction at the symmetric point: adaptive grid, Delta, eta.
TwoLevelModel extract_two_level(const PotentialSpec& spec, double E0,
                                const EtaFitOptions& options = {});
/// As above on a caller-chosen grid (no adaptivity; leak/convergence still checked).
TwoLevelModel extract_two_level(const PotentialSpec& spec, double E0, const Grid& grid,
                                const EtaFitOptions& options = {});

/// (eps_minus, eps_plus) = -/+ sqrt(eta^2 phi0^2 + Delta^2), units of E0.
std::pair<double, double> two_level_energies(const TwoLevelModel& model, double phi0);

/// Gap e1 - e0 at phi0 on a grid with the width/resolution of `grid`.
double gap_at(const PotentialSpec& spec, const Grid& grid, double phi0, const SolverOptions& options = {});

}  // namespace squidqnd
