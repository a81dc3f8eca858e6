#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "squidqnd/device.hpp"
#include "squidqnd/rwa.hpp"

namespace squidqnd {

/// H_RWA in the frame rotating at the drive frequency, on the truncated
/// Fock space |n_m, n_e> (index n_m * (n_e_max + 1) + n_e), in rad/s:
///   H / hbar = -detuning N_e + Omega_04 N_e^2 + Omega_22 N_m N_e + drive (a_e + a_e^dagger)
/// with detuning = omega_d - omega_e. The free mechanical term commutes with
/// everything kept and is dropped.
struct RwaHamiltonian {
    std::size_t n_m_max = 0;
    std::size_t n_e_max = 0;
    double detuning = 0.0;
    double drive_strength = 0.0;
    double Omega_04 = 0.0;
    double Omega_22 = 0.0;
    Eigen::MatrixXcd matrix;

    std::size_t dim_m() const { return n_m_max + 1; }
    std::size_t dim_e() const { return n_e_max + 1; }
    std::size_t index(std::size_t n_m, std::size_t n_e) const { return n_m * dim_e() + n_e; }

    /// LC-mode Hamiltonian of mechanical block n_m at the given detuning.
    Eigen::MatrixXcd block(std::size_t n_m, double detuning) const;
};

/// Drive amplitude I_in sqrt(hbar / 2 C omega_e) / hbar, rad/s.
double drive_strength_of(const DeviceParams& p);

/// Drive that puts `photons` quanta in a linear cavity on resonance:
/// |drive| = (gamma_e / 2) sqrt(photons).
double drive_for_photon_number(double photons, double gamma_e);

RwaHamiltonian build_rwa_hamiltonian(double omega_04, double omega_22, double drive_strength,
                                     std::size_t n_m_max, std::size_t n_e_max, double detuning);
RwaHamiltonian build_rwa_hamiltonian(const EffectiveCouplings& c, const DeviceParams& p,
                                     std::size_t n_m_max, std::size_t n_e_max, double detuning);

/// Number operator on the LC mode (n_e) or beam (n_m) in the full space.
Eigen::MatrixXcd number_operator_m(const RwaHamiltonian& h);
Eigen::MatrixXcd number_operator_e(const RwaHamiltonian& h);

struct CavityState {
    Eigen::MatrixXcd rho;
    double photon_number = 0.0;
    std::complex<double> amplitude;
    double top_population = 0.0;  // population of the highest kept Fock level
};

/// Steady state of d rho/dt = -i[H, rho] + gamma_e (n_th + 1) D[a] rho + gamma_e n_th D[a^dagger] rho
/// for a single-mode Hamiltonian (rad/s). With this convention the linear
/// photon-number resonance has FWHM gamma_e.
/// Throws SingularLiouvillian, or TruncationFailure when the top level holds
/// more than `truncation_tolerance`.
CavityState cavity_steady_state(const Eigen::MatrixXcd& hamiltonian, double gamma_e, double n_thermal,
                                double truncation_tolerance = 1e-6);

struct ResponseCurve {
    std::size_t n_m = 0;
    std::vector<double> photon_number;
    std::vector<std::complex<double>> amplitude;
    double peak_detuning = 0.0;  // rad/s, refined between grid points
    double peak_photon_number = 0.0;
};

struct SteadyStateResponse {
    std::vector<double> detunings;  // rad/s
    std::vector<ResponseCurve> curves;  // one per mechanical Fock number
    double gamma_e = 0.0;
    double Omega_22 = 0.0;
    double n_thermal = 0.0;
};

/// Sweeps detuning for each mechanical block n_m = 0..n_m_max of h.
SteadyStateResponse lindblad_steady_state(const RwaHamiltonian& h, double gamma_e, double n_thermal,
                                          std::span<const double> detunings);

/// Integrates the full two-mode master equation (decay on the LC mode only)
/// with classic RK4 over `steps` equal steps.
Eigen::MatrixXcd evolve_master_equation(const RwaHamiltonian& h, double gamma_e, double n_thermal,
                                        const Eigen::MatrixXcd& rho0, double duration, std::size_t steps);

/// Diagonal weight of each mechanical Fock block of a full-space density matrix.
std::vector<double> mechanical_populations(const RwaHamiltonian& h, const Eigen::MatrixXcd& rho);

struct TauEstimate {
    Seconds tau_m;
    double optimal_detuning = 0.0;  // rad/s
    double signal = 0.0;            // |a_1 - a_0|^2 at the optimal detuning
    double photon_number = 0.0;     // block-0 photons at the optimal detuning
    bool resolved_regime = false;   // Omega_22 >~ gamma_e: formula comparison suspended
};

/// Integration time for unit SNR between adjacent mechanical blocks. The
/// thermal amplitude-noise density is 8 pi n_th / gamma_e with
/// n_th = k_B T / hbar omega_e; for a small shift this reproduces the
/// analytic tau_m. Zero signal gives +inf.
TauEstimate estimate_tau_m_numeric(const SteadyStateResponse& response, std::size_t n_m, double T,
                                   double omega_e, Warnings* warnings = nullptr);

}  // namespace squidqnd
