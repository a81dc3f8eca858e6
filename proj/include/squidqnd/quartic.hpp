#pragma once

#include <span>
#include <vector>

#include "squidqnd/device.hpp"
#include "squidqnd/schrodinger.hpp"
#include "squidqnd/two_level.hpp"
#include "squidqnd/units.hpp"

namespace squidqnd {

/// Even-polynomial fit eps_minus(phi0) ~ c0 + c2 phi0^2 + c4 phi0^4 + ...
/// (units of E0). Higher even terms absorb truncation bias and are kept in
/// `even_coefficients`.
struct QuarticFit {
    double c0 = 0.0;
    double c2 = 0.0;
    double c4 = 0.0;
    std::vector<double> even_coefficients;  // c0, c2, c4, c6, ...
    double domain_min = 0.0;
    double domain_max = 0.0;
    double residual = 0.0;  // RMS absolute residual, E0
};

/// Symmetric, evenly spaced phi0 samples on [-half_width, half_width].
std::vector<double> symmetric_samples(double half_width, std::size_t n_points);

/// -sqrt(eta^2 phi0^2 + Delta^2). Throws InvalidArgument outside the fit window.
std::vector<double> analytic_surface(const TwoLevelModel& tl, std::span<const double> phi0);

/// Ground level of the full loop problem minus the symmetric-point midpoint
/// (e0(0) + e1(0))/2, on a fixed grid. Throws InvalidArgument outside the window.
std::vector<double> exact_surface(const PotentialSpec& spec, const Grid& grid, const TwoLevelModel& tl,
                                  std::span<const double> phi0, const SolverOptions& options = {});

/// Least squares on even powers of phi0/phi0_max. Needs >= 7 symmetric,
/// evenly spaced points; throws IllConditionedFit when the sample variation
/// sits at the floating-point noise floor.
QuarticFit fit_quartic(std::span<const double> phi0, std::span<const double> values);

struct RwaCoefficients {
    RadPerSecond Omega_20;
    RadPerSecond Omega_02;
    RadPerSecond Omega_40;
    RadPerSecond Omega_04;
    RadPerSecond Omega_22;
};

/// Substitutes phi0 = lm X_m + le X_e (X = a + a^dagger, bare zero-point
/// factors) into c2 phi0^2 + c4 phi0^4 and keeps number-conserving terms:
/// X^2 -> 2N + 1, X^4 -> 6N^2 + 6N + 3.
RwaCoefficients rwa_coefficients_from_quartic(const QuarticFit& fit, const DeviceParams& p);

}  // namespace squidqnd
