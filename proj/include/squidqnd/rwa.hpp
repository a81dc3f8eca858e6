#pragma once

#include <string>
#include <vector>

#include "squidqnd/device.hpp"
#include "squidqnd/two_level.hpp"
#include "squidqnd/units.hpp"

namespace squidqnd {

using Warnings = std::vector<std::string>;

/// Bare zero-point phase amplitude of the beam, (2 pi B l / Phi0) sqrt(hbar / 2 m omega_m).
double zero_point_phase_m(const DeviceParams& p);
/// Bare zero-point phase amplitude of the LC mode, (2 pi M / Phi0 L) sqrt(hbar / 2 C omega_e).
double zero_point_phase_e(const DeviceParams& p);

struct EffectiveCouplings {
    double lambda_m = 0.0;  // (eta/Delta) * zero_point_phase_m
    double lambda_e = 0.0;  // (eta/Delta) * zero_point_phase_e
    RadPerSecond Omega_04;  // Kerr coefficient of N_e^2
    RadPerSecond Omega_22;  // cross coefficient of N_m N_e
};

EffectiveCouplings compute_couplings(const DeviceParams& p, const TwoLevelModel& tl);

/// <N_e>_c = gamma_e / (sqrt(3) Omega_04). Throws DivergentCritical for a
/// linear resonator (Omega_04 == 0).
double critical_photon_number(const EffectiveCouplings& c, double gamma_e);

/// tau_m = (2 pi gamma_e / Omega_22^2) (k_B T / U0), U0 = N_e hbar omega_e.
/// Returns +inf when Omega_22 == 0.
Seconds measurement_time(const EffectiveCouplings& c, const DeviceParams& p, double N_e,
                         Warnings* warnings = nullptr);

/// t0 = 1 / (gamma_m (k_B T / hbar omega_m)^2); +inf when gamma_m or T vanish.
Seconds fock_lifetime(const DeviceParams& p, Warnings* warnings = nullptr);

/// Closed form (12 Delta / sqrt(3) hbar gamma_m) lambda_m^4 (hbar omega_m/k_B T)^2 (hbar omega_e/k_B T).
/// Algebraically this equals 2 pi * t0/tau_m evaluated at <N_e>_c.
double zeta_max(const DeviceParams& p, const TwoLevelModel& tl);

/// Engineering-unit form with the 2.8e-15 prefactor (Delta/h in GHz, B in T,
/// l in um, frequencies in GHz, m in 1e-19 kg, T in K). It is a fixed
/// factor of ~6.09 above zeta_max().
double zeta_max_engineering(const DeviceParams& p, const TwoLevelModel& tl);

struct Adiabaticity {
    RadPerSecond Gamma_c;
    double ratio = 0.0;  // pi Delta^2 / (eta hbar Gamma_c); +inf when Gamma_c == 0
};

/// Evaluated at <N_e>_c; propagates DivergentCritical.
Adiabaticity adiabaticity(const DeviceParams& p, const TwoLevelModel& tl, const EffectiveCouplings& c);
/// Evaluated at an explicit photon number.
Adiabaticity adiabaticity_at(const DeviceParams& p, const TwoLevelModel& tl, double N_e);

struct DetectabilityMetrics {
    double N_e_crit = 0.0;
    Seconds tau_m;  // at N_e = N_e_crit
    Seconds t0;
    double zeta = 0.0;  // t0 / tau_m
    double zeta_max = 0.0;
    double zeta_max_engineering = 0.0;
    RadPerSecond Gamma_c;
    double adiabaticity_ratio = 0.0;
    Joules U0;
};

DetectabilityMetrics compute_metrics(const DeviceParams& p, const TwoLevelModel& tl,
                                     const EffectiveCouplings& c, Warnings* warnings = nullptr);

}  // namespace squidqnd
