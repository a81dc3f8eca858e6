#include "squidqnd/two_level.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "squidqnd/constants.hpp"
#include "squidqnd/errors.hpp"

namespace squidqnd {

namespace {

constexpr const char* kModule = "two-level";

struct LevelTriple {
    double gap;     // e1 - e0
    double margin;  // (e2 - e1) / (e1 - e0)
};

LevelTriple levels_at(const PotentialSpec& base, const Grid& grid, double phi0, const SolverOptions& o) {
    PotentialSpec spec = base;
    spec.phi0 = phi0;
    const Grid g = Grid::centered(phi0, grid.half_width(), grid.n_points);
    const Spectrum s = solve_spectrum(spec, g, 3, o);
    const double gap = s.eps(1) - s.eps(0);
    return {gap, (s.eps(2) - s.eps(1)) / gap};
}

}  // namespace

double TwoLevelModel::delta_over_h() const { return delta * E0 / constants::h; }

DeltaEstimate extract_delta(const Spectrum& s) {
    if (s.spec.phi0 != 0.0)
        throw Error(ErrorKind::InvalidArgument, kModule, "Delta is defined at the symmetric point phi0 = 0");
    if (s.size() < 2) throw Error(ErrorKind::InvalidArgument, kModule, "spectrum needs at least two levels");
    DeltaEstimate d;
    d.delta = 0.5 * (s.eps(1) - s.eps(0));
    d.uncertainty = s.convergence_estimate;
    d.resolved = d.delta > 1e-12 && d.delta > d.uncertainty;
    return d;
}

double gap_at(const PotentialSpec& spec, const Grid& grid, double phi0, const SolverOptions& options) {
    return levels_at(spec, grid, phi0, options).gap;
}

TwoLevelModel extract_eta(const PotentialSpec& spec, const Grid& grid, const DeltaEstimate& delta,
                          const EtaFitOptions& options) {
    if (!(spec.beta_L * (1.0 - spec.K * spec.K) > 1.0))
        throw Error(ErrorKind::InvalidArgument, kModule, "potential is not a double well");
    if (options.n_samples < 9) throw Error(ErrorKind::InvalidArgument, kModule, "need at least 9 fit samples");
    if (!(delta.delta > 0.0)) throw Error(ErrorKind::InvalidArgument, kModule, "Delta must be positive");

    const auto margin_ok = [&](double phi0) {
        return levels_at(spec, grid, phi0, options.solver).margin > options.margin_ratio;
    };

    // Bracket the window edge, then bisect.
    double lo = 0.0;
    double hi = std::min(0.01, options.max_window);
    if (margin_ok(hi)) {
        lo = hi;
        while (lo < options.max_window) {
            hi = std::min(2.0 * lo, options.max_window);
            if (!margin_ok(hi)) break;
            lo = hi;
        }
    } else {
        while (!margin_ok(hi)) {
            hi *= 0.5;
            if (hi < 1e-8)
                throw Error(ErrorKind::WindowCollapse, kModule,
                            "third level too close at every phi0 > 0; two-level approximation invalid");
        }
        lo = hi;
        hi *= 2.0;
    }
    if (lo < options.max_window) {
        for (int it = 0; it < 60 && hi - lo > 1e-10 * hi; ++it) {
            const double midpoint = 0.5 * (lo + hi);
            (margin_ok(midpoint) ? lo : hi) = midpoint;
        }
    }
    const double phi_max = lo;

    TwoLevelModel model;
    model.delta = delta.delta;
    model.delta_uncertainty = delta.uncertainty;
    model.delta_resolved = delta.resolved;
    model.window_min = 0.0;
    model.window_max = phi_max;
    model.grid = grid;
    model.third_level_margin = std::numeric_limits<double>::infinity();

    const std::size_t n = options.n_samples;
    for (std::size_t k = 0; k < n; ++k) {
        const double phi0 =
            0.5 * phi_max * (1.0 - std::cos(std::numbers::pi * static_cast<double>(k) / static_cast<double>(n - 1)));
        const LevelTriple t = levels_at(spec, grid, phi0, options.solver);
        model.sample_phi0.push_back(phi0);
        model.sample_gap.push_back(t.gap);
        model.third_level_margin = std::min(model.third_level_margin, t.margin);
    }

    // Gauss-Newton on relative residuals, Delta held fixed.
    const double D = delta.delta;
    const auto residuals = [&](double eta, double* jac_dot_r, double* jac_sq) {
        double ss = 0.0;
        if (jac_dot_r) *jac_dot_r = 0.0;
        if (jac_sq) *jac_sq = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double p = model.sample_phi0[k];
            const double g = model.sample_gap[k];
            const double root = std::sqrt(eta * eta * p * p + D * D);
            const double r = (2.0 * root - g) / g;
            const double dr = 2.0 * eta * p * p / (root * g);
            ss += r * r;
            if (jac_dot_r) *jac_dot_r += dr * r;
            if (jac_sq) *jac_sq += dr * dr;
        }
        return ss;
    };

    double eta = model.sample_gap.back() / (2.0 * phi_max);
    for (int it = 0; it < 100; ++it) {
        double jr = 0.0, jj = 0.0;
        residuals(eta, &jr, &jj);
        if (jj <= 0.0) break;
        const double step = -jr / jj;
        eta += step;
        if (std::abs(step) <= 1e-15 * std::abs(eta)) break;
    }
    model.eta = std::abs(eta);
    model.fit_residual = std::sqrt(residuals(model.eta, nullptr, nullptr) / static_cast<double>(n));
    model.valid = model.eta > 0.0 && model.delta > 0.0 && model.fit_residual < options.residual_bound;
    return model;
}

TwoLevelModel extract_two_level(const PotentialSpec& spec, double E0, const EtaFitOptions& options) {
    PotentialSpec symmetric = spec;
    symmetric.phi0 = 0.0;
    return extract_two_level(symmetric, E0, default_grid(symmetric, 3, options.solver), options);
}

TwoLevelModel extract_two_level(const PotentialSpec& spec, double E0, const Grid& grid,
                                const EtaFitOptions& options) {
    PotentialSpec symmetric = spec;
    symmetric.phi0 = 0.0;
    const Spectrum s = solve_spectrum(symmetric, grid, 3, options.solver);
    TwoLevelModel model = extract_eta(symmetric, grid, extract_delta(s), options);
    model.E0 = E0;
    return model;
}

std::pair<double, double> two_level_energies(const TwoLevelModel& model, double phi0) {
    const double r = std::sqrt(model.eta * model.eta * phi0 * phi0 + model.delta * model.delta);
    return {-r, r};
}

}  // namespace squidqnd
