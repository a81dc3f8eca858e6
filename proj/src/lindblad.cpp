#include "squidqnd/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "squidqnd/constants.hpp"
#include "squidqnd/errors.hpp"

namespace squidqnd {

namespace {

constexpr const char* kModule = "dynamics-oracle";
using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
constexpr cd kI{0.0, 1.0};

Mat annihilation(std::size_t dim) {
    Mat a = Mat::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t n = 1; n < dim; ++n)
        a(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(n)) = std::sqrt(static_cast<double>(n));
    return a;
}

Mat single_mode_block(double omega_04, double omega_22, double drive, std::size_t n_m, std::size_t dim_e,
                      double detuning) {
    const auto d = static_cast<Eigen::Index>(dim_e);
    Mat h = Mat::Zero(d, d);
    for (Eigen::Index n = 0; n < d; ++n) {
        const double ne = static_cast<double>(n);
        h(n, n) = -detuning * ne + omega_04 * ne * ne + omega_22 * static_cast<double>(n_m) * ne;
        if (n + 1 < d) {
            const double amp = drive * std::sqrt(ne + 1.0);
            h(n, n + 1) = amp;
            h(n + 1, n) = amp;
        }
    }
    return h;
}

// Right-hand side of the master equation for an arbitrary jump operator set.
Mat lindblad_rhs(const Mat& H, const Mat& a, const Mat& ad, double down, double up, const Mat& rho) {
    Mat out = -kI * (H * rho - rho * H);
    if (down > 0.0) {
        const Mat ada = ad * a;
        out += down * (a * rho * ad - 0.5 * (ada * rho + rho * ada));
    }
    if (up > 0.0) {
        const Mat aad = a * ad;
        out += up * (ad * rho * a - 0.5 * (aad * rho + rho * aad));
    }
    return out;
}

double golden_max(const auto& f, double a, double b, double tol) {
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    while (std::abs(b - a) > tol) {
        if (fc > fd) {
            b = d; d = c; fd = fc;
            c = b - g * (b - a); fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + g * (b - a); fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

Mat RwaHamiltonian::block(std::size_t n_m, double det) const {
    return single_mode_block(Omega_04, Omega_22, drive_strength, n_m, dim_e(), det);
}

double drive_strength_of(const DeviceParams& p) {
    return p.I_in_amp * std::sqrt(constants::hbar / (2.0 * p.C * p.omega_e())) / constants::hbar;
}

double drive_for_photon_number(double photons, double gamma_e) { return 0.5 * gamma_e * std::sqrt(photons); }

RwaHamiltonian build_rwa_hamiltonian(double omega_04, double omega_22, double drive_strength,
                                     std::size_t n_m_max, std::size_t n_e_max, double detuning) {
    if (n_m_max < 2 || n_e_max < 2)
        throw Error(ErrorKind::InvalidArgument, kModule, "Fock truncations must be >= 2");
    RwaHamiltonian h;
    h.n_m_max = n_m_max;
    h.n_e_max = n_e_max;
    h.detuning = detuning;
    h.drive_strength = drive_strength;
    h.Omega_04 = omega_04;
    h.Omega_22 = omega_22;
    const auto dim = static_cast<Eigen::Index>(h.dim_m() * h.dim_e());
    h.matrix = Mat::Zero(dim, dim);
    for (std::size_t nm = 0; nm < h.dim_m(); ++nm) {
        const auto offset = static_cast<Eigen::Index>(h.index(nm, 0));
        const auto de = static_cast<Eigen::Index>(h.dim_e());
        h.matrix.block(offset, offset, de, de) = h.block(nm, detuning);
    }
    return h;
}

RwaHamiltonian build_rwa_hamiltonian(const EffectiveCouplings& c, const DeviceParams& p, std::size_t n_m_max,
                                     std::size_t n_e_max, double detuning) {
    return build_rwa_hamiltonian(c.Omega_04.si(), c.Omega_22.si(), drive_strength_of(p), n_m_max, n_e_max,
                                 detuning);
}

Mat number_operator_m(const RwaHamiltonian& h) {
    const auto dim = static_cast<Eigen::Index>(h.dim_m() * h.dim_e());
    Mat n = Mat::Zero(dim, dim);
    for (std::size_t nm = 0; nm < h.dim_m(); ++nm)
        for (std::size_t ne = 0; ne < h.dim_e(); ++ne) {
            const auto i = static_cast<Eigen::Index>(h.index(nm, ne));
            n(i, i) = static_cast<double>(nm);
        }
    return n;
}

Mat number_operator_e(const RwaHamiltonian& h) {
    const auto dim = static_cast<Eigen::Index>(h.dim_m() * h.dim_e());
    Mat n = Mat::Zero(dim, dim);
    for (std::size_t nm = 0; nm < h.dim_m(); ++nm)
        for (std::size_t ne = 0; ne < h.dim_e(); ++ne) {
            const auto i = static_cast<Eigen::Index>(h.index(nm, ne));
            n(i, i) = static_cast<double>(ne);
        }
    return n;
}

CavityState cavity_steady_state(const Mat& H, double gamma_e, double n_thermal, double truncation_tolerance) {
    if (!(gamma_e > 0.0)) throw Error(ErrorKind::InvalidArgument, kModule, "gamma_e must be > 0");
    const Eigen::Index d = H.rows();
    const Mat a = annihilation(static_cast<std::size_t>(d));
    const Mat ad = a.adjoint();
    const double down = gamma_e * (n_thermal + 1.0);
    const double up = gamma_e * n_thermal;

    // Column-stacked superoperator: vec(A rho B) = (B^T kron A) vec(rho).
    // Row 0 is replaced by the trace condition.
    const Eigen::Index D = d * d;
    const Mat id = Mat::Identity(d, d);
    const Mat ada = ad * a;
    const Mat aad = a * ad;
    const std::complex<double> I{0.0, 1.0};
    std::vector<Eigen::Triplet<std::complex<double>>> triplets;
    auto kron = [&](const Mat& left, const Mat& right, std::complex<double> w) {
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j) {
                if (left(i, j) == 0.0) continue;
                for (Eigen::Index k = 0; k < d; ++k)
                    for (Eigen::Index l = 0; l < d; ++l) {
                        if (right(k, l) == 0.0) continue;
                        const Eigen::Index r = i * d + k;
                        if (r == 0) continue;
                        triplets.emplace_back(r, j * d + l, w * left(i, j) * right(k, l));
                    }
            }
    };
    kron(id, H, -I);
    kron(H.transpose(), id, I);
    if (down != 0.0) {
        kron(a.conjugate(), a, down);
        kron(id, ada, -0.5 * down);
        kron(ada.transpose(), id, -0.5 * down);
    }
    if (up != 0.0) {
        kron(ad.conjugate(), ad, up);
        kron(id, aad, -0.5 * up);
        kron(aad.transpose(), id, -0.5 * up);
    }
    for (Eigen::Index k = 0; k < d; ++k) triplets.emplace_back(0, k * d + k, 1.0);
    Eigen::SparseMatrix<std::complex<double>> liouvillian(D, D);
    liouvillian.setFromTriplets(triplets.begin(), triplets.end());
    liouvillian.makeCompressed();

    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(D);
    rhs(0) = 1.0;
    Eigen::SparseLU<Eigen::SparseMatrix<std::complex<double>>, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(liouvillian);
    if (lu.info() != Eigen::Success)
        throw Error(ErrorKind::SingularLiouvillian, kModule, "steady-state Liouvillian is singular");
    const Eigen::VectorXcd sol = lu.solve(rhs);
    if (lu.info() != Eigen::Success || !sol.allFinite())
        throw Error(ErrorKind::SingularLiouvillian, kModule, "steady-state solve failed");

    CavityState st;
    st.rho = Eigen::Map<const Mat>(sol.data(), d, d);
    st.rho = 0.5 * (st.rho + st.rho.adjoint()).eval();
    for (Eigen::Index n = 0; n < d; ++n) st.photon_number += static_cast<double>(n) * st.rho(n, n).real();
    st.amplitude = (a * st.rho).trace();
    st.top_population = st.rho(d - 1, d - 1).real();
    if (st.top_population > truncation_tolerance) {
        std::ostringstream msg;
        msg << "top Fock level holds " << st.top_population << " > " << truncation_tolerance
            << "; increase n_e_max";
        throw Error(ErrorKind::TruncationFailure, kModule, msg.str());
    }
    return st;
}

SteadyStateResponse lindblad_steady_state(const RwaHamiltonian& h, double gamma_e, double n_thermal,
                                          std::span<const double> detunings) {
    if (detunings.size() < 3) throw Error(ErrorKind::InvalidArgument, kModule, "need at least 3 detunings");
    SteadyStateResponse out;
    out.detunings.assign(detunings.begin(), detunings.end());
    out.gamma_e = gamma_e;
    out.Omega_22 = h.Omega_22;
    out.n_thermal = n_thermal;

    for (std::size_t nm = 0; nm < h.dim_m(); ++nm) {
        ResponseCurve curve;
        curve.n_m = nm;
        for (double det : detunings) {
            const CavityState st = cavity_steady_state(h.block(nm, det), gamma_e, n_thermal);
            curve.photon_number.push_back(st.photon_number);
            curve.amplitude.push_back(st.amplitude);
        }
        const auto best = static_cast<std::size_t>(
            std::max_element(curve.photon_number.begin(), curve.photon_number.end()) - curve.photon_number.begin());
        const std::size_t lo = best == 0 ? 0 : best - 1;
        const std::size_t hi = std::min(best + 1, detunings.size() - 1);
        const auto photons_at = [&](double det) {
            return cavity_steady_state(h.block(nm, det), gamma_e, n_thermal).photon_number;
        };
        const double span = detunings[hi] - detunings[lo];
        curve.peak_detuning = golden_max(photons_at, detunings[lo], detunings[hi], 1e-9 * std::max(span, gamma_e));
        curve.peak_photon_number = photons_at(curve.peak_detuning);
        out.curves.push_back(std::move(curve));
    }
    return out;
}

Mat evolve_master_equation(const RwaHamiltonian& h, double gamma_e, double n_thermal, const Mat& rho0,
                           double duration, std::size_t steps) {
    if (steps == 0) throw Error(ErrorKind::InvalidArgument, kModule, "steps must be > 0");
    const Eigen::Index dim = h.matrix.rows();
    if (rho0.rows() != dim || rho0.cols() != dim)
        throw Error(ErrorKind::InvalidArgument, kModule, "initial state has the wrong dimension");

    // a_e acting on the full space: identity on the beam, ladder on the LC mode.
    Mat a = Mat::Zero(dim, dim);
    for (std::size_t nm = 0; nm < h.dim_m(); ++nm)
        for (std::size_t ne = 1; ne < h.dim_e(); ++ne)
            a(static_cast<Eigen::Index>(h.index(nm, ne - 1)), static_cast<Eigen::Index>(h.index(nm, ne))) =
                std::sqrt(static_cast<double>(ne));
    const Mat ad = a.adjoint();
    const double down = gamma_e * (n_thermal + 1.0);
    const double up = gamma_e * n_thermal;

    const double dt = duration / static_cast<double>(steps);
    Mat rho = rho0;
    for (std::size_t s = 0; s < steps; ++s) {
        const Mat k1 = lindblad_rhs(h.matrix, a, ad, down, up, rho);
        const Mat k2 = lindblad_rhs(h.matrix, a, ad, down, up, rho + 0.5 * dt * k1);
        const Mat k3 = lindblad_rhs(h.matrix, a, ad, down, up, rho + 0.5 * dt * k2);
        const Mat k4 = lindblad_rhs(h.matrix, a, ad, down, up, rho + dt * k3);
        rho += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return rho;
}

std::vector<double> mechanical_populations(const RwaHamiltonian& h, const Mat& rho) {
    std::vector<double> pop(h.dim_m(), 0.0);
    for (std::size_t nm = 0; nm < h.dim_m(); ++nm)
        for (std::size_t ne = 0; ne < h.dim_e(); ++ne) {
            const auto i = static_cast<Eigen::Index>(h.index(nm, ne));
            pop[nm] += rho(i, i).real();
        }
    return pop;
}

TauEstimate estimate_tau_m_numeric(const SteadyStateResponse& r, std::size_t n_m, double T, double omega_e,
                                   Warnings* warnings) {
    if (n_m + 1 >= r.curves.size())
        throw Error(ErrorKind::InvalidArgument, kModule, "need response curves for n_m and n_m + 1");
    const auto& c0 = r.curves[n_m];
    const auto& c1 = r.curves[n_m + 1];

    TauEstimate est;
    est.resolved_regime = r.Omega_22 >= 0.5 * r.gamma_e;
    if (est.resolved_regime && warnings) {
        std::ostringstream msg;
        msg << "tau_m numeric: Omega_22/gamma_e = " << r.Omega_22 / r.gamma_e
            << " (resolved-shift regime), comparison with the analytic tau_m suspended";
        warnings->push_back(msg.str());
    }
    for (std::size_t i = 0; i < r.detunings.size(); ++i) {
        const double s = std::norm(c1.amplitude[i] - c0.amplitude[i]);
        if (s > est.signal) {
            est.signal = s;
            est.optimal_detuning = r.detunings[i];
            est.photon_number = c0.photon_number[i];
        }
    }
    const double n_th = constants::k_B * T / (constants::hbar * omega_e);
    const double noise_density = 8.0 * constants::pi * n_th / r.gamma_e;
    est.tau_m = Seconds{est.signal > 0.0 ? noise_density / est.signal : std::numeric_limits<double>::infinity()};
    return est;
}

}  // namespace squidqnd
