#pragma once

#include <cmath>
#include <numbers>

#include "squidqnd/constants.hpp"
#include "squidqnd/device.hpp"
#include "squidqnd/two_level.hpp"

namespace testing {

// Example device, entered directly in SI.
inline squidqnd::DeviceParams example_device() {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    squidqnd::DeviceParams p;
    p.C = 3.2e-11;
    const double omega_e = two_pi * 0.22e9;
    p.L = 1.0 / (omega_e * omega_e * p.C);
    p.gamma_e = omega_e / 1e4;
    p.Lambda = 1.1e-10;
    p.C_J = 1e-16;
    p.I_c = 12e-6;
    p.m = 1e-19;
    p.omega_m = two_pi * 0.5e9;
    p.gamma_m = p.omega_m / 1e3;
    p.T = 0.02;
    p.M = 0.001 * std::sqrt(p.Lambda * p.L);
    p.B = 0.05;
    p.l = 1e-6;
    p.Phi_e = 0.5 * squidqnd::constants::flux_quantum;
    p.omega_d = omega_e;
    return p;
}

// Two-level model carrying only a given eta and Delta.
inline squidqnd::TwoLevelModel model_with(double eta, double delta, double E0) {
    squidqnd::TwoLevelModel tl;
    tl.eta = eta;
    tl.delta = delta;
    tl.E0 = E0;
    tl.valid = true;
    tl.delta_resolved = true;
    tl.window_min = 0.0;
    tl.window_max = 1.0;
    return tl;
}

}  // namespace testing
