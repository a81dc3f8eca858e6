#include "squidqnd/quartic.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "squidqnd/constants.hpp"
#include "squidqnd/errors.hpp"
#include "squidqnd/rwa.hpp"

namespace squidqnd {

namespace {

constexpr const char* kModule = "dynamics-oracle";
constexpr std::size_t kMaxEvenTerms = 5;

void check_window(const TwoLevelModel& tl, std::span<const double> phi0) {
    for (double p : phi0)
        if (std::abs(p) > tl.window_max)
            throw Error(ErrorKind::InvalidArgument, kModule, "phi0 sample outside the two-level window");
}

}  // namespace

std::vector<double> symmetric_samples(double half_width, std::size_t n_points) {
    if (n_points < 2) throw Error(ErrorKind::InvalidArgument, kModule, "need at least two samples");
    std::vector<double> out(n_points);
    for (std::size_t i = 0; i < n_points; ++i)
        out[i] = -half_width + 2.0 * half_width * static_cast<double>(i) / static_cast<double>(n_points - 1);
    return out;
}

std::vector<double> analytic_surface(const TwoLevelModel& tl, std::span<const double> phi0) {
    check_window(tl, phi0);
    std::vector<double> out;
    out.reserve(phi0.size());
    for (double p : phi0) out.push_back(two_level_energies(tl, p).first);
    return out;
}

std::vector<double> exact_surface(const PotentialSpec& spec, const Grid& grid, const TwoLevelModel& tl,
                                  std::span<const double> phi0, const SolverOptions& options) {
    check_window(tl, phi0);
    PotentialSpec s = spec;
    s.phi0 = 0.0;
    const Spectrum symmetric = solve_spectrum(s, grid, 2, options);
    const double midpoint = 0.5 * (symmetric.eps(0) + symmetric.eps(1));
    std::vector<double> out;
    out.reserve(phi0.size());
    for (double p : phi0) {
        s.phi0 = p;
        out.push_back(solve_spectrum(s, grid, 2, options).eps(0) - midpoint);
    }
    return out;
}

QuarticFit fit_quartic(std::span<const double> phi0, std::span<const double> values) {
    const std::size_t n = phi0.size();
    if (n != values.size()) throw Error(ErrorKind::InvalidArgument, kModule, "sample/value size mismatch");
    if (n < 7) throw Error(ErrorKind::InvalidArgument, kModule, "quartic fit needs at least 7 samples");

    const auto [lo_it, hi_it] = std::minmax_element(phi0.begin(), phi0.end());
    const double scale = std::max(std::abs(*lo_it), std::abs(*hi_it));
    if (!(scale > 0.0)) throw Error(ErrorKind::IllConditionedFit, kModule, "degenerate phi0 domain");
    const double step = (*hi_it - *lo_it) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double expected = *lo_it + step * static_cast<double>(i);
        if (std::abs(phi0[i] - expected) > 1e-9 * scale)
            throw Error(ErrorKind::InvalidArgument, kModule, "samples must be evenly spaced and ascending");
    }
    if (std::abs(*lo_it + *hi_it) > 1e-9 * scale)
        throw Error(ErrorKind::InvalidArgument, kModule, "samples must be symmetric about phi0 = 0");

    const auto [vmin, vmax] = std::minmax_element(values.begin(), values.end());
    double vabs = 0.0;
    for (double v : values) vabs = std::max(vabs, std::abs(v));
    const double noise_floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(vabs, 1e-300);
    if (*vmax - *vmin < 1e3 * noise_floor)
        throw Error(ErrorKind::IllConditionedFit, kModule,
                    "sample variation is at the floating-point noise floor; widen the domain");

    const std::size_t distinct = (n + 1) / 2;
    const std::size_t terms = std::min(kMaxEvenTerms, distinct - 1);

    Eigen::MatrixXd A(n, terms);
    Eigen::VectorXd b(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x2 = (phi0[i] / scale) * (phi0[i] / scale);
        double power = 1.0;
        for (std::size_t j = 0; j < terms; ++j) {
            A(i, j) = power;
            power *= x2;
        }
        b(i) = values[i];
    }
    const Eigen::VectorXd coef = A.colPivHouseholderQr().solve(b);
    const double rms = std::sqrt((A * coef - b).squaredNorm() / static_cast<double>(n));

    QuarticFit fit;
    fit.domain_min = *lo_it;
    fit.domain_max = *hi_it;
    fit.residual = rms;
    double unscale = 1.0;
    for (std::size_t j = 0; j < terms; ++j) {
        fit.even_coefficients.push_back(coef(static_cast<Eigen::Index>(j)) / unscale);
        unscale *= scale * scale;
    }
    fit.c0 = fit.even_coefficients[0];
    fit.c2 = fit.even_coefficients[1];
    fit.c4 = fit.even_coefficients[2];
    return fit;
}

RwaCoefficients rwa_coefficients_from_quartic(const QuarticFit& fit, const DeviceParams& p) {
    const double to_rate = energy_scale(p.Lambda) / constants::hbar;
    const double lm2 = std::pow(zero_point_phase_m(p), 2);
    const double le2 = std::pow(zero_point_phase_e(p), 2);
    const double c2 = fit.c2 * to_rate;
    const double c4 = fit.c4 * to_rate;

    // c4 (lm X_m + le X_e)^4 contributes c4 lm^4 X_m^4 + 6 c4 lm^2 le^2 X_m^2 X_e^2 + c4 le^4 X_e^4.
    RwaCoefficients out;
    out.Omega_40 = RadPerSecond{6.0 * c4 * lm2 * lm2};
    out.Omega_04 = RadPerSecond{6.0 * c4 * le2 * le2};
    out.Omega_22 = RadPerSecond{24.0 * c4 * lm2 * le2};
    out.Omega_20 = RadPerSecond{2.0 * c2 * lm2 + 6.0 * c4 * lm2 * lm2 + 12.0 * c4 * lm2 * le2};
    out.Omega_02 = RadPerSecond{2.0 * c2 * le2 + 6.0 * c4 * le2 * le2 + 12.0 * c4 * lm2 * le2};
    return out;
}

}  // namespace squidqnd
