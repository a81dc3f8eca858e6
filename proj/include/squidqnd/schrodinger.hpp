#pragma once

#include <cstddef>
#include <numbers>
#include <vector>

namespace squidqnd {

/// Parameters of the reduced loop potential
///   u(phi) = (phi - phi0)^2 / (1 - K^2) + 2 beta_L cos(phi)
/// and the kinetic prefactor beta_C of -beta_C d^2/dphi^2.
struct PotentialSpec {
    double beta_L = 0.0;
    double beta_C = 1.0;
    double K = 0.0;
    double phi0 = 0.0;

    void validate() const;
    double operator()(double phi) const;
};

/// Uniform grid on [phi_min, phi_max] including both endpoints.
struct Grid {
    double phi_min = 0.0;
    double phi_max = 0.0;
    std::size_t n_points = 0;

    static Grid centered(double center, double half_width, std::size_t n_points);

    double spacing() const { return (phi_max - phi_min) / static_cast<double>(n_points - 1); }
    double node(std::size_t i) const { return phi_min + spacing() * static_cast<double>(i); }
    double half_width() const { return 0.5 * (phi_max - phi_min); }
    void validate() const;
};

struct Level {
    double eps_over_E0 = 0.0;
    double fd_eps_over_E0 = 0.0;       // plain finite-difference value on this grid, before extrapolation
    std::vector<double> wavefunction;  // on every grid node, Dirichlet zeros at both ends
};

struct Spectrum {
    std::vector<Level> levels;
    PotentialSpec spec;
    Grid grid;
    /// Nested-grid error estimate of the ground level (units of E0).
    double convergence_estimate = 0.0;
    /// Largest |psi_n| over the outermost interior nodes, over all returned levels.
    double boundary_amplitude = 0.0;

    double eps(std::size_t n) const { return levels.at(n).eps_over_E0; }
    std::size_t size() const { return levels.size(); }
};

struct SolverOptions {
    double leak_tolerance = 1e-10;
    /// Accept when convergence_estimate < tolerance * max(1, |eps0|).
    double convergence_tolerance = 1e-9;
    std::size_t initial_points = 2001;
    double initial_half_width = 2.0 * std::numbers::pi;
    int max_doublings = 6;
};

std::vector<double> build_potential(const PotentialSpec& spec, const Grid& grid);

/// Lowest n_levels eigenpairs of the central-difference Hamiltonian with
/// Dirichlet boundaries. Eigenvalues are Richardson-extrapolated from the
/// nested grid with (n_points+1)/2 nodes; wavefunctions are those of the
/// given grid. Throws BoundaryLeak or NotConverged.
Spectrum solve_spectrum(const PotentialSpec& spec, const Grid& grid, std::size_t n_levels,
                        const SolverOptions& options = {});

/// Same computation without the leak/convergence checks.
Spectrum solve_spectrum_unchecked(const PotentialSpec& spec, const Grid& grid,
                                  std::size_t n_levels);

/// Adaptive grid centered on spec.phi0: widen until the states stop leaking,
/// then refine until the nested-grid estimate meets the tolerance.
/// Throws FailedToConverge after options.max_doublings doublings.
Grid default_grid(const PotentialSpec& spec, std::size_t n_levels,
                  const SolverOptions& options = {});

/// Trapezoid-rule inner product of two wavefunctions sampled on grid.
double overlap(const Grid& grid, const std::vector<double>& a, const std::vector<double>& b);

}  // namespace squidqnd
