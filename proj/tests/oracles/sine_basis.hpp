#pragma once

// Independent eigen-oracle: particle-in-a-box sine basis on [a, b] with the
// potential matrix from composite Gauss-Legendre quadrature, dense solve.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace oracle {

struct SineBasisSpec {
    double beta_L, beta_C, K, phi0;
};

inline double potential(const SineBasisSpec& s, double phi) {
    const double d = phi - s.phi0;
    return d * d / (1.0 - s.K * s.K) + 2.0 * s.beta_L * std::cos(phi);
}

// Lowest `levels` eigenvalues of -beta_C psi'' + u psi with psi(a) = psi(b) = 0.
inline std::vector<double> sine_basis_levels(const SineBasisSpec& s, double a, double b, int n_basis, int levels,
                                             int panels = 6000) {
    constexpr std::array<double, 5> x{0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
                                      0.9061798459386640};
    constexpr std::array<double, 5> w{0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                      0.2369268850561891, 0.2369268850561891};
    const double len = b - a;
    const double k0 = std::numbers::pi / len;

    // Cosine moments m_j = (2/len) * integral cos(j k0 (phi - a)) u(phi) dphi, j = 0..2N.
    const int n_moments = 2 * n_basis + 1;
    std::vector<double> moments(n_moments, 0.0);
    const double hp = len / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * hp;
        for (std::size_t q = 0; q < x.size(); ++q) {
            const double phi = mid + 0.5 * hp * x[q];
            const double weight = 0.5 * hp * w[q] * potential(s, phi);
            const double t = k0 * (phi - a);
            // cos(j t) by recurrence.
            double c_prev = 1.0, c_cur = std::cos(t);
            const double two_c = 2.0 * c_cur;
            moments[0] += weight;
            if (n_moments > 1) moments[1] += weight * c_cur;
            for (int j = 2; j < n_moments; ++j) {
                const double c_next = two_c * c_cur - c_prev;
                moments[j] += weight * c_next;
                c_prev = c_cur;
                c_cur = c_next;
            }
        }
    }
    for (double& m : moments) m *= 2.0 / len;

    Eigen::MatrixXd H(n_basis, n_basis);
    for (int i = 1; i <= n_basis; ++i)
        for (int j = 1; j <= n_basis; ++j) {
            // (2/len) int sin(i t) sin(j t) u = (m_{|i-j|} - m_{i+j}) / 2
            double v = 0.5 * (moments[std::abs(i - j)] - moments[i + j]);
            if (i == j) v += s.beta_C * (i * k0) * (i * k0);
            H(i - 1, j - 1) = v;
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
    std::vector<double> out(levels);
    for (int k = 0; k < levels; ++k) out[k] = es.eigenvalues()(k);
    return out;
}

}  // namespace oracle
