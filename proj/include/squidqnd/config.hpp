#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "squidqnd/classical.hpp"
#include "squidqnd/constants.hpp"
#include "squidqnd/device.hpp"
#include "squidqnd/report.hpp"

namespace squidqnd {

struct SolverBlock {
    std::optional<std::size_t> n_points;  // fixed grid instead of the adaptive search
    std::optional<double> half_width;     // rad
    double convergence_tolerance = 1e-9;
    double leak_tolerance = 1e-10;
};

struct FitBlock {
    std::size_t n_samples = 13;
    double margin_ratio = 5.0;
    double quartic_extent = 0.5;
    std::size_t quartic_points = 21;
};

enum class SweepScale { Linear, Log };

struct SweepBlock {
    std::string parameter;  // DeviceParams field name; empty when no sweep is configured
    double min = 0.0;       // SI
    double max = 0.0;
    std::size_t points = 0;
    SweepScale scale = SweepScale::Linear;

    std::vector<double> values() const;
};

struct DynamicsBlock {
    std::size_t n_m_max = 2;
    std::optional<std::size_t> n_e_max;  // default: sized from the photon number
    double drive_fraction = 0.1;         // target linear photon number / critical number
    std::optional<double> detuning_min;  // rad/s, omega_d - omega_e
    std::optional<double> detuning_max;
    std::size_t detuning_points = 201;
    double thermal_photons = 0.0;
};

struct TrajectoryBlock {
    std::optional<double> duration;  // s; default 1e4 loop plasma periods
    std::optional<double> dt;        // s; default 1 / (200 f_plasma)
    std::size_t record_every = 100;
    Integrator integrator = Integrator::Yoshida4;
    double x0 = 0.0;          // m, beam displacement from equilibrium
    double phi_offset = 1e-3 * constants::flux_quantum;  // Wb, loop flux displacement from equilibrium
    int well = -1;            // -1 left, +1 right
};

struct SpectrumBlock {
    double phi0 = 0.0;
    std::size_t levels = 4;
    double phi0_min = -0.05;
    double phi0_max = 0.05;
    std::size_t phi0_points = 21;
};

struct OutputBlock {
    std::string dir = "out";
    bool json = true;
    bool csv = true;
};

struct RunConfig {
    DeviceParams device;
    SolverBlock solver;
    FitBlock fit;
    SweepBlock sweep;
    DynamicsBlock dynamics;
    TrajectoryBlock trajectory;
    SpectrumBlock spectrum;
    OutputBlock output;
    /// Reference values to compare against, keyed by report quantity name.
    std::map<std::string, double> reference;

    /// Canonical "key = value unit" lines of every resolved setting, SI units,
    /// fixed order. Excludes output.dir so headers do not depend on where files go.
    std::vector<std::string> resolved_lines() const;
};

/// Pipeline options implied by the solver and fit blocks.
ReportOptions to_report_options(const RunConfig& cfg);

/// Throws Error(Config) with "line N:" context. `source` names the input in messages.
RunConfig parse_config_string(std::string_view text, std::string_view source = "<string>");
RunConfig load_config(const std::string& path);

/// Parses "1.1e-10 H", "220 MHz", "0.5 Phi0" for a given dimension into SI.
double parse_quantity(std::string_view text, Dimension dim);

}  // namespace squidqnd
