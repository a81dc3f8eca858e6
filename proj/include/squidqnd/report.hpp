#pragma once

#include <optional>
#include <string>
#include <vector>

#include "squidqnd/device.hpp"
#include "squidqnd/errors.hpp"
#include "squidqnd/quartic.hpp"
#include "squidqnd/rwa.hpp"
#include "squidqnd/two_level.hpp"

namespace squidqnd {

struct ReportOptions {
    EtaFitOptions fit;
    /// Fixed grid for the loop problem instead of the adaptive default.
    std::optional<Grid> grid_override;
    /// Also fit the exact ground-level surface and derive all five RWA coefficients.
    bool include_quartic = true;
    std::size_t quartic_points = 21;
    double quartic_extent = 0.5;  // half-width in units of Delta/eta
    /// Precomputed loop model for the same (beta_L, beta_C, K); skips the eigensolves.
    std::optional<TwoLevelModel> two_level;
};

struct FeasibilityFlags {
    bool double_well = false;
    bool two_level_valid = false;
    bool delta_gt_kT = false;
    bool high_T_e = false;
    bool high_T_m = false;
    bool single_phonon = false;
    bool adiabatic = false;
};

struct ReportIssue {
    ErrorKind kind;
    std::string module;
    std::string message;
};

/// Missing stages are left empty; scalar metrics that could not be computed are NaN.
struct FeasibilityReport {
    DeviceParams params;
    std::optional<DimensionlessCircuit> circuit;
    std::optional<TwoLevelModel> two_level;
    std::optional<EffectiveCouplings> couplings;
    std::optional<DetectabilityMetrics> metrics;
    std::optional<QuarticFit> quartic;
    std::optional<RwaCoefficients> rwa_from_quartic;
    FeasibilityFlags flags;
    Warnings warnings;
    std::vector<ReportIssue> errors;

    bool ok() const { return errors.empty(); }
};

/// Runs the whole chain: dimensionless circuit, loop spectrum, Delta and eta,
/// couplings, detectability metrics and flags. Errors are collected per stage;
/// independent stages still run.
FeasibilityReport feasibility_report(const DeviceParams& p, const ReportOptions& options = {});

/// Flags recomputed from the numbers they summarize.
FeasibilityFlags compute_flags(const FeasibilityReport& r);

}  // namespace squidqnd
