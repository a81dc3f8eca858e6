#include "squidqnd/schrodinger.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "squidqnd/errors.hpp"

namespace squidqnd {

namespace {

constexpr const char* kModule = "schrodinger-solver";

[[noreturn]] void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, kModule, msg); }

struct TridiagonalResult {
    std::vector<double> eigenvalues;
    std::vector<double> vectors;  // column-major, (n_points-2) x n_levels
};

TridiagonalResult solve_tridiagonal(const PotentialSpec& spec, const Grid& grid,
                                    std::size_t n_levels, bool want_vectors) {
    const std::size_t n = grid.n_points - 2;
    if (n_levels > n) fail(ErrorKind::InvalidArgument, "grid has fewer interior nodes than requested levels");
    const double h = grid.spacing();
    const double kinetic = spec.beta_C / (h * h);

    std::vector<double> diag(n);
    std::vector<double> off(n, -kinetic);
    for (std::size_t i = 0; i < n; ++i) diag[i] = 2.0 * kinetic + spec(grid.node(i + 1));

    TridiagonalResult out;
    out.eigenvalues.assign(n, 0.0);
    if (want_vectors) out.vectors.assign(n * n_levels, 0.0);
    std::vector<lapack_int> support(2 * n_levels);
    lapack_int found = 0;
    const lapack_int info = LAPACKE_dstevr(
        LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'I', static_cast<lapack_int>(n), diag.data(),
        off.data(), 0.0, 0.0, 1, static_cast<lapack_int>(n_levels), 0.0, &found,
        out.eigenvalues.data(), want_vectors ? out.vectors.data() : nullptr,
        static_cast<lapack_int>(n), support.data());
    if (info != 0 || found != static_cast<lapack_int>(n_levels)) {
        std::ostringstream msg;
        msg << "dstevr failed (info=" << info << ", found=" << found << ")";
        fail(ErrorKind::NotConverged, msg.str());
    }
    out.eigenvalues.resize(n_levels);
    return out;
}

std::vector<double> extrapolate(const std::vector<double>& fine, const std::vector<double>& coarse) {
    std::vector<double> out(fine.size());
    for (std::size_t i = 0; i < fine.size(); ++i) out[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
    return out;
}

bool nestable(std::size_t n, std::size_t n_levels) {
    return n % 2 == 1 && (n + 1) / 2 >= n_levels + 2;
}

Grid halved(const Grid& g) { return Grid{g.phi_min, g.phi_max, (g.n_points + 1) / 2}; }

double accept_threshold(const SolverOptions& o, double eps0) {
    return o.convergence_tolerance * std::max(1.0, std::abs(eps0));
}

}  // namespace

void PotentialSpec::validate() const {
    if (!(beta_C > 0.0) || !std::isfinite(beta_C)) fail(ErrorKind::InvalidArgument, "beta_C must be > 0");
    if (!(K >= 0.0 && K < 1.0)) fail(ErrorKind::InvalidArgument, "K must satisfy 0 <= K < 1");
    if (!std::isfinite(beta_L) || !std::isfinite(phi0)) fail(ErrorKind::InvalidArgument, "non-finite potential parameter");
}

double PotentialSpec::operator()(double phi) const {
    const double d = phi - phi0;
    return d * d / (1.0 - K * K) + 2.0 * beta_L * std::cos(phi);
}

Grid Grid::centered(double center, double half_width, std::size_t n_points) {
    return Grid{center - half_width, center + half_width, n_points};
}

void Grid::validate() const {
    if (!(phi_min < phi_max)) fail(ErrorKind::InvalidArgument, "grid requires phi_min < phi_max");
    if (n_points < 3 || n_points % 2 == 0) fail(ErrorKind::InvalidArgument, "grid requires an odd n_points >= 3");
}

std::vector<double> build_potential(const PotentialSpec& spec, const Grid& grid) {
    grid.validate();
    std::vector<double> u(grid.n_points);
    for (std::size_t i = 0; i < grid.n_points; ++i) u[i] = spec(grid.node(i));
    return u;
}

double overlap(const Grid& grid, const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = std::min(a.size(), b.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        sum += w * a[i] * b[i];
    }
    return sum * grid.spacing();
}

Spectrum solve_spectrum_unchecked(const PotentialSpec& spec, const Grid& grid, std::size_t n_levels) {
    spec.validate();
    grid.validate();
    if (n_levels < 2) fail(ErrorKind::InvalidArgument, "n_levels must be >= 2");
    if (!nestable(grid.n_points, n_levels))
        fail(ErrorKind::InvalidArgument, "grid too coarse for nested-grid extrapolation");

    const auto fine = solve_tridiagonal(spec, grid, n_levels, true);
    const Grid mid_grid = halved(grid);
    const auto mid = solve_tridiagonal(spec, mid_grid, n_levels, false);

    Spectrum s;
    s.spec = spec;
    s.grid = grid;
    const auto eps = extrapolate(fine.eigenvalues, mid.eigenvalues);

    if (nestable(mid_grid.n_points, n_levels)) {
        const auto coarse = solve_tridiagonal(spec, halved(mid_grid), n_levels, false);
        const auto eps_coarse = extrapolate(mid.eigenvalues, coarse.eigenvalues);
        s.convergence_estimate = std::abs(eps[0] - eps_coarse[0]);
    } else {
        s.convergence_estimate = std::abs(fine.eigenvalues[0] - mid.eigenvalues[0]) / 3.0;
    }

    const std::size_t interior = grid.n_points - 2;
    const double h = grid.spacing();
    s.levels.resize(n_levels);
    for (std::size_t k = 0; k < n_levels; ++k) {
        auto& level = s.levels[k];
        level.eps_over_E0 = eps[k];
        level.fd_eps_over_E0 = fine.eigenvalues[k];
        level.wavefunction.assign(grid.n_points, 0.0);
        const double* col = fine.vectors.data() + k * interior;
        double norm2 = 0.0;
        double peak = 0.0;
        for (std::size_t i = 0; i < interior; ++i) {
            norm2 += col[i] * col[i];
            peak = std::max(peak, std::abs(col[i]));
        }
        // Sign fixed by the first appreciable node from the left.
        double sign = 1.0;
        for (std::size_t i = 0; i < interior; ++i) {
            if (std::abs(col[i]) > 1e-6 * peak) {
                sign = col[i] < 0.0 ? -1.0 : 1.0;
                break;
            }
        }
        const double scale = sign / std::sqrt(norm2 * h);
        for (std::size_t i = 0; i < interior; ++i) level.wavefunction[i + 1] = scale * col[i];
        s.boundary_amplitude = std::max({s.boundary_amplitude, std::abs(level.wavefunction[1]),
                                         std::abs(level.wavefunction[grid.n_points - 2])});
    }
    return s;
}

Spectrum solve_spectrum(const PotentialSpec& spec, const Grid& grid, std::size_t n_levels,
                        const SolverOptions& options) {
    Spectrum s = solve_spectrum_unchecked(spec, grid, n_levels);
    if (s.boundary_amplitude >= options.leak_tolerance) {
        std::ostringstream msg;
        msg << "boundary amplitude " << s.boundary_amplitude << " >= " << options.leak_tolerance
            << " on [" << grid.phi_min << ", " << grid.phi_max << "]: domain too small";
        fail(ErrorKind::BoundaryLeak, msg.str());
    }
    if (s.convergence_estimate >= accept_threshold(options, s.eps(0))) {
        std::ostringstream msg;
        msg << "nested-grid estimate " << s.convergence_estimate << " above tolerance with n_points="
            << grid.n_points;
        fail(ErrorKind::NotConverged, msg.str());
    }
    return s;
}

Grid default_grid(const PotentialSpec& spec, std::size_t n_levels, const SolverOptions& options) {
    spec.validate();
    double half_width = options.initial_half_width;
    std::size_t n = options.initial_points;

    int widenings = 0;
    for (;;) {
        const Spectrum s = solve_spectrum_unchecked(spec, Grid::centered(spec.phi0, half_width, n), n_levels);
        if (s.boundary_amplitude < options.leak_tolerance) break;
        if (++widenings > options.max_doublings)
            fail(ErrorKind::FailedToConverge, "states still leak after widening the domain");
        half_width *= 2.0;
    }

    for (int refinements = 0;; ++refinements) {
        const Grid grid = Grid::centered(spec.phi0, half_width, n);
        const Spectrum s = solve_spectrum_unchecked(spec, grid, n_levels);
        if (s.convergence_estimate < accept_threshold(options, s.eps(0)) &&
            s.boundary_amplitude < options.leak_tolerance)
            return grid;
        if (refinements >= options.max_doublings) {
            std::ostringstream msg;
            msg << "nested-grid estimate " << s.convergence_estimate << " not below tolerance after "
                << options.max_doublings << " refinements (n_points=" << n << ")";
            fail(ErrorKind::FailedToConverge, msg.str());
        }
        n = 2 * n - 1;
    }
}

}  // namespace squidqnd
