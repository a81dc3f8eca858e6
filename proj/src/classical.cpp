#include "squidqnd/classical.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

#include "squidqnd/constants.hpp"
#include "squidqnd/errors.hpp"

namespace squidqnd {

namespace c = constants;

namespace {

constexpr const char* kModule = "dynamics-oracle";

double reduced_inductance(const DeviceParams& p) {
    const double k = p.K();
    return p.Lambda * (1.0 - k * k);
}

double loop_phase(double Phi) { return c::two_pi * Phi / c::flux_quantum; }

Eigen::Vector3d gradient(const DeviceParams& p, const ClassicalState& s, double I_in) {
    const Accelerations a = accelerations(p, s, I_in);
    return {-a.x * p.m, -a.varphi * p.C, -a.Phi * p.C_J};
}

Eigen::Matrix3d hessian(const DeviceParams& p, const ClassicalState& s) {
    const double D = reduced_inductance(p);
    const double bl = p.B * p.l;
    const double ml = p.M / p.L;
    Eigen::Matrix3d H;
    H(0, 0) = p.m * p.omega_m * p.omega_m + bl * bl / D;
    H(0, 1) = bl * ml / D;
    H(0, 2) = -bl / D;
    H(1, 1) = 1.0 / p.L + ml * ml / D;
    H(1, 2) = -ml / D;
    H(2, 2) = 1.0 / D + c::two_pi * p.I_c / c::flux_quantum * std::cos(loop_phase(s.Phi));
    H(1, 0) = H(0, 1);
    H(2, 0) = H(0, 2);
    H(2, 1) = H(1, 2);
    return H;
}

void verlet_step(const DeviceParams& p, ClassicalState& s, double t, double dt, const CurrentDrive& drive,
                 Accelerations& acc) {
    s.x_dot += 0.5 * dt * acc.x;
    s.varphi_dot += 0.5 * dt * acc.varphi;
    s.Phi_dot += 0.5 * dt * acc.Phi;
    s.x += dt * s.x_dot;
    s.varphi += dt * s.varphi_dot;
    s.Phi += dt * s.Phi_dot;
    acc = accelerations(p, s, drive ? drive(t + dt) : 0.0);
    s.x_dot += 0.5 * dt * acc.x;
    s.varphi_dot += 0.5 * dt * acc.varphi;
    s.Phi_dot += 0.5 * dt * acc.Phi;
}

}  // namespace

LoopCurrents loop_currents(const DeviceParams& p, const ClassicalState& s) {
    const double flux_i = s.Phi - p.Phi_e - p.B * p.l * s.x;
    const double det = p.Lambda * p.L - p.M * p.M;
    return {(p.L * flux_i - p.M * s.varphi) / det, (p.Lambda * s.varphi - p.M * flux_i) / det};
}

double potential_energy(const DeviceParams& p, const ClassicalState& s, double I_in) {
    const double omega_e = p.omega_e();
    const double u0 = 0.5 * p.m * p.omega_m * p.omega_m * s.x * s.x +
                      0.5 * p.C * omega_e * omega_e * s.varphi * s.varphi - I_in * s.varphi;
    const double offset = s.Phi - p.Phi_e - p.B * p.l * s.x - p.M * s.varphi / p.L;
    const double u1 = offset * offset / (2.0 * reduced_inductance(p)) -
                      c::flux_quantum * p.I_c * std::cos(loop_phase(s.Phi)) / c::two_pi;
    return u0 + u1;
}

double total_energy(const DeviceParams& p, const ClassicalState& s, double I_in) {
    const double kinetic =
        0.5 * (p.m * s.x_dot * s.x_dot + p.C * s.varphi_dot * s.varphi_dot + p.C_J * s.Phi_dot * s.Phi_dot);
    return kinetic + potential_energy(p, s, I_in);
}

Accelerations accelerations(const DeviceParams& p, const ClassicalState& s, double I_in) {
    const LoopCurrents cur = loop_currents(p, s);
    Accelerations a;
    a.x = -p.omega_m * p.omega_m * s.x + p.B * p.l * cur.I_s / p.m;
    a.varphi = (I_in - cur.I_L) / p.C;
    a.Phi = -(cur.I_s + p.I_c * std::sin(loop_phase(s.Phi))) / p.C_J;
    return a;
}

std::optional<ClassicalState> find_equilibrium(const DeviceParams& p, const ClassicalState& guess, double I_in) {
    ClassicalState s = guess;
    s.x_dot = s.varphi_dot = s.Phi_dot = 0.0;
    // Work in scaled coordinates so the Newton system is well conditioned.
    const Eigen::Vector3d scale{1.0 / std::sqrt(p.m * p.omega_m * p.omega_m + 1e-300),
                                std::sqrt(p.L), std::sqrt(reduced_inductance(p))};
    for (int it = 0; it < 100; ++it) {
        const Eigen::Vector3d g = gradient(p, s, I_in).cwiseProduct(scale);
        const Eigen::Matrix3d H = scale.asDiagonal() * hessian(p, s) * scale.asDiagonal();
        const Eigen::Vector3d step = H.ldlt().solve(g).cwiseProduct(scale);
        s.x -= step(0);
        s.varphi -= step(1);
        s.Phi -= step(2);
        const double size = std::abs(step(0)) / scale(0) + std::abs(step(1)) / scale(1) + std::abs(step(2)) / scale(2);
        if (size < 1e-12 * std::sqrt(energy_scale(p.Lambda))) {
            const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(hessian(p, s));
            if (eig.eigenvalues().minCoeff() <= 0.0) return std::nullopt;
            return s;
        }
    }
    return std::nullopt;
}

double well_flux_guess(const DeviceParams& p, int side) {
    // Minimum of (phi)^2 + 2 beta_L cos(phi) by Newton from +-2.5, mapped back to flux.
    const double beta_L = c::two_pi * p.Lambda * p.I_c / c::flux_quantum;
    const double inv = 1.0 / (1.0 - p.K() * p.K());
    double phi = side < 0 ? -2.5 : 2.5;
    for (int it = 0; it < 50; ++it) {
        const double d1 = 2.0 * phi * inv - 2.0 * beta_L * std::sin(phi);
        const double d2 = 2.0 * inv - 2.0 * beta_L * std::cos(phi);
        if (d2 <= 0.0) break;
        phi -= d1 / d2;
    }
    return p.Phi_e + phi * c::flux_quantum / c::two_pi;
}

double excitation_energy(const DeviceParams& p, const ClassicalState& initial) {
    const double e = total_energy(p, initial, 0.0);
    if (const auto eq = find_equilibrium(p, initial)) {
        const double diff = std::abs(e - potential_energy(p, *eq, 0.0));
        if (diff > 0.0) return diff;
    }
    return std::abs(e);
}

std::vector<TrajectorySample> classical_trajectory(const DeviceParams& p, const ClassicalState& initial,
                                                   const CurrentDrive& drive, const TrajectoryOptions& o) {
    p.validate();
    if (!(o.dt > 0.0) || !(o.duration > 0.0))
        throw Error(ErrorKind::InvalidArgument, kModule, "dt and duration must be positive");
    const double f_plasma = loop_plasma_omega(p) / c::two_pi;
    if (o.dt > 1.0 / (50.0 * f_plasma) * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "dt = " << o.dt << " s exceeds 1/(50 f_plasma) = " << 1.0 / (50.0 * f_plasma) << " s";
        throw Error(ErrorKind::InvalidArgument, kModule, msg.str());
    }
    const std::size_t record_every = o.record_every == 0 ? 1 : o.record_every;
    const auto steps = static_cast<std::size_t>(std::llround(o.duration / o.dt));

    // Yoshida 4th-order weights for the composed Verlet substeps.
    const double cbrt2 = std::cbrt(2.0);
    const double w1 = 1.0 / (2.0 - cbrt2);
    const double w0 = -cbrt2 / (2.0 - cbrt2);

    const auto current = [&](double t) { return drive ? drive(t) : 0.0; };
    const double e_start = total_energy(p, initial, current(0.0));
    const double drift_scale = drive ? 0.0 : excitation_energy(p, initial);

    std::vector<TrajectorySample> out;
    out.reserve(steps / record_every + 2);
    ClassicalState s = initial;
    Accelerations acc = accelerations(p, s, current(0.0));
    out.push_back({0.0, s, e_start});

    for (std::size_t k = 1; k <= steps; ++k) {
        const double t0 = o.dt * static_cast<double>(k - 1);
        if (o.integrator == Integrator::VelocityVerlet) {
            verlet_step(p, s, t0, o.dt, drive, acc);
        } else {
            verlet_step(p, s, t0, w1 * o.dt, drive, acc);
            verlet_step(p, s, t0 + w1 * o.dt, w0 * o.dt, drive, acc);
            verlet_step(p, s, t0 + (w1 + w0) * o.dt, w1 * o.dt, drive, acc);
        }
        if (k % record_every == 0 || k == steps) {
            const double t = o.dt * static_cast<double>(k);
            const double e = total_energy(p, s, current(t));
            if (!std::isfinite(e))
                throw Error(ErrorKind::Instability, kModule, "trajectory diverged (non-finite energy)");
            if (drift_scale > 0.0 && std::abs(e - e_start) > o.drift_limit * drift_scale) {
                std::ostringstream msg;
                msg << "energy drift " << std::abs(e - e_start) / drift_scale << " exceeds " << o.drift_limit
                    << " at t = " << t << " s; reduce dt";
                throw Error(ErrorKind::Instability, kModule, msg.str());
            }
            out.push_back({t, s, e});
        }
    }
    return out;
}

}  // namespace squidqnd
