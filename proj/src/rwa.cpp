#include "squidqnd/rwa.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "squidqnd/constants.hpp"
#include "squidqnd/errors.hpp"

namespace squidqnd {

namespace c = constants;

namespace {

constexpr const char* kModule = "rwa-effective";
constexpr double kInf = std::numeric_limits<double>::infinity();
// "k_B T >> hbar omega" is taken to mean a factor of at least 5.
constexpr double kHighTemperatureFactor = 5.0;

double eta_over_delta(const TwoLevelModel& tl) { return tl.eta / tl.delta; }

void warn(Warnings* w, std::string msg) {
    if (w) w->push_back(std::move(msg));
}

}  // namespace

double zero_point_phase_m(const DeviceParams& p) {
    return c::two_pi * p.B * p.l / c::flux_quantum * std::sqrt(c::hbar / (2.0 * p.m * p.omega_m));
}

double zero_point_phase_e(const DeviceParams& p) {
    return c::two_pi * p.M / (c::flux_quantum * p.L) * std::sqrt(c::hbar / (2.0 * p.C * p.omega_e()));
}

EffectiveCouplings compute_couplings(const DeviceParams& p, const TwoLevelModel& tl) {
    if (!(tl.delta > 0.0) || !(tl.E0 > 0.0))
        throw Error(ErrorKind::InvalidArgument, kModule, "two-level model needs Delta > 0 and E0 > 0");
    EffectiveCouplings out;
    out.lambda_m = eta_over_delta(tl) * zero_point_phase_m(p);
    out.lambda_e = eta_over_delta(tl) * zero_point_phase_e(p);
    const double delta_rate = tl.delta_joules() / c::hbar;
    const double le2 = out.lambda_e * out.lambda_e;
    out.Omega_04 = RadPerSecond{0.75 * delta_rate * le2 * le2};
    out.Omega_22 = RadPerSecond{3.0 * delta_rate * out.lambda_m * out.lambda_m * le2};
    return out;
}

double critical_photon_number(const EffectiveCouplings& cpl, double gamma_e) {
    if (!(cpl.Omega_04.si() > 0.0))
        throw Error(ErrorKind::DivergentCritical, kModule,
                    "Omega_04 = 0: linear resonator has no bistability onset; cap the drive explicitly");
    return gamma_e / (std::sqrt(3.0) * cpl.Omega_04.si());
}

Seconds measurement_time(const EffectiveCouplings& cpl, const DeviceParams& p, double N_e, Warnings* warnings) {
    if (!(N_e > 0.0)) throw Error(ErrorKind::InvalidArgument, kModule, "photon number N_e must be > 0");
    const double thermal = c::k_B * p.T;
    const double quantum = c::hbar * p.omega_e();
    if (thermal < kHighTemperatureFactor * quantum) {
        std::ostringstream msg;
        msg << "tau_m: high-temperature premise marginal (k_B T / hbar omega_e = " << thermal / quantum << ")";
        warn(warnings, msg.str());
    }
    const double omega22 = cpl.Omega_22.si();
    if (omega22 == 0.0) {
        warn(warnings, "tau_m: Omega_22 = 0, no dispersive shift to detect");
        return Seconds{kInf};
    }
    const double U0 = N_e * quantum;
    return Seconds{c::two_pi * p.gamma_e / (omega22 * omega22) * thermal / U0};
}

Seconds fock_lifetime(const DeviceParams& p, Warnings* warnings) {
    const double thermal = c::k_B * p.T;
    const double quantum = c::hbar * p.omega_m;
    if (!(p.gamma_m > 0.0) || !(thermal > 0.0)) {
        warn(warnings, "t0: gamma_m or T is zero, Fock lifetime unbounded");
        return Seconds{kInf};
    }
    if (thermal < kHighTemperatureFactor * quantum) {
        std::ostringstream msg;
        msg << "t0: high-temperature premise marginal (k_B T / hbar omega_m = " << thermal / quantum << ")";
        warn(warnings, msg.str());
    }
    const double ratio = thermal / quantum;
    return Seconds{1.0 / (p.gamma_m * ratio * ratio)};
}

double zeta_max(const DeviceParams& p, const TwoLevelModel& tl) {
    const double lm = eta_over_delta(tl) * zero_point_phase_m(p);
    const double thermal = c::k_B * p.T;
    const double rm = c::hbar * p.omega_m / thermal;
    const double re = c::hbar * p.omega_e() / thermal;
    const double lm2 = lm * lm;
    return 12.0 * tl.delta_joules() / (std::sqrt(3.0) * c::hbar * p.gamma_m) * lm2 * lm2 * rm * rm * re;
}

double zeta_max_engineering(const DeviceParams& p, const TwoLevelModel& tl) {
    constexpr double GHz = 1e9;
    const double delta_ghz = tl.delta_joules() / c::h / GHz;
    const double bl = eta_over_delta(tl) * (p.B / 1.0) * (p.l / 1e-6);
    const double bl2 = bl * bl;
    const double fe = p.omega_e() / c::two_pi / GHz;
    const double fm = p.omega_m / c::two_pi / GHz;
    const double mass = p.m / 1e-19;
    const double numerator = 2.8e-15 * delta_ghz * (p.omega_m / p.gamma_m) * bl2 * bl2 * fe;
    return numerator / (fm * mass * mass * p.T * p.T * p.T);
}

Adiabaticity adiabaticity_at(const DeviceParams& p, const TwoLevelModel& tl, double N_e) {
    Adiabaticity a;
    const double amplitude_rate = std::sqrt(2.0 * N_e * c::hbar * p.omega_e() / p.C);
    a.Gamma_c = RadPerSecond{c::two_pi * p.M / (c::flux_quantum * p.L) * amplitude_rate};
    const double delta = tl.delta_joules();
    a.ratio = a.Gamma_c.si() > 0.0 ? c::pi * delta * delta / (tl.eta_joules() * c::hbar * a.Gamma_c.si()) : kInf;
    return a;
}

Adiabaticity adiabaticity(const DeviceParams& p, const TwoLevelModel& tl, const EffectiveCouplings& cpl) {
    return adiabaticity_at(p, tl, critical_photon_number(cpl, p.gamma_e));
}

DetectabilityMetrics compute_metrics(const DeviceParams& p, const TwoLevelModel& tl, const EffectiveCouplings& cpl,
                                     Warnings* warnings) {
    DetectabilityMetrics m;
    m.N_e_crit = critical_photon_number(cpl, p.gamma_e);
    m.U0 = Joules{m.N_e_crit * c::hbar * p.omega_e()};
    m.tau_m = measurement_time(cpl, p, m.N_e_crit, warnings);
    m.t0 = fock_lifetime(p, warnings);
    m.zeta = m.t0.si() / m.tau_m.si();
    m.zeta_max = zeta_max(p, tl);
    m.zeta_max_engineering = zeta_max_engineering(p, tl);
    const Adiabaticity a = adiabaticity_at(p, tl, m.N_e_crit);
    m.Gamma_c = a.Gamma_c;
    m.adiabaticity_ratio = a.ratio;
    return m;
}

}  // namespace squidqnd
