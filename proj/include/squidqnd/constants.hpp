#pragma once

#include <numbers>

namespace squidqnd::constants {

// CODATA 2018 (exact SI defining values).
inline constexpr double h = 6.62607015e-34;      // J s
inline constexpr double e = 1.602176634e-19;     // C
inline constexpr double k_B = 1.380649e-23;      // J/K

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double hbar = h / two_pi;

/// Superconducting flux quantum h/2e (Wb).
inline constexpr double flux_quantum = h / (2.0 * e);

}  // namespace squidqnd::constants
