#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "squidqnd/device.hpp"

namespace squidqnd {

/// Coordinates and velocities of beam (x, m), LC flux (varphi, Wb) and loop flux (Phi, Wb).
struct ClassicalState {
    double x = 0.0;
    double x_dot = 0.0;
    double varphi = 0.0;
    double varphi_dot = 0.0;
    double Phi = 0.0;
    double Phi_dot = 0.0;
};

struct LoopCurrents {
    double I_s = 0.0;  // circulating loop current
    double I_L = 0.0;  // LC inductor current
};

/// Solves Phi - Phi_e - B l x = I_s Lambda + M I_L, varphi = I_L L + M I_s.
LoopCurrents loop_currents(const DeviceParams& p, const ClassicalState& s);

double potential_energy(const DeviceParams& p, const ClassicalState& s, double I_in);
double total_energy(const DeviceParams& p, const ClassicalState& s, double I_in);

struct Accelerations {
    double x = 0.0;
    double varphi = 0.0;
    double Phi = 0.0;
};

/// Right-hand sides of the three Euler-Lagrange equations.
Accelerations accelerations(const DeviceParams& p, const ClassicalState& s, double I_in);

/// Newton search for a stationary point of U0 + U1 starting at `guess`
/// (velocities ignored). Returns nullopt if it fails to converge or lands
/// on a saddle.
std::optional<ClassicalState> find_equilibrium(const DeviceParams& p, const ClassicalState& guess,
                                               double I_in = 0.0);

enum class Integrator { VelocityVerlet, Yoshida4 };

struct TrajectoryOptions {
    double duration = 0.0;  // s
    double dt = 0.0;        // s, must satisfy dt <= 1 / (50 f_plasma)
    std::size_t record_every = 1;
    Integrator integrator = Integrator::Yoshida4;
    /// Relative excitation-energy drift that triggers Instability (undriven runs only).
    double drift_limit = 1e-3;
};

struct TrajectorySample {
    double t = 0.0;
    ClassicalState state;
    double energy = 0.0;  // J, includes the drive term at time t
};

using CurrentDrive = std::function<double(double)>;

/// Integrates the coupled equations of motion. An empty `drive` means I_in = 0,
/// which also enables the energy-drift detector.
std::vector<TrajectorySample> classical_trajectory(const DeviceParams& p, const ClassicalState& initial,
                                                   const CurrentDrive& drive, const TrajectoryOptions& options);

/// Scale for relative energy drift: |E - E_eq| with E_eq the energy of the
/// equilibrium nearest the initial positions, falling back to |E|.
double excitation_energy(const DeviceParams& p, const ClassicalState& initial);

/// Loop-flux value of the left/right well minimum of the uncoupled loop at
/// the symmetric bias, used as a Newton seed.
double well_flux_guess(const DeviceParams& p, int side);

}  // namespace squidqnd
