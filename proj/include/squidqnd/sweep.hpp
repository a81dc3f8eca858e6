#pragma once

#include <functional>
#include <string>
#include <vector>

#include "squidqnd/config.hpp"
#include "squidqnd/output.hpp"
#include "squidqnd/report.hpp"

namespace squidqnd {

struct SweepRow {
    double value = 0.0;  // swept parameter, SI
    double zeta_max = 0.0;
    double Omega_22 = 0.0;  // rad/s
    double delta_over_h = 0.0;
    double adiabaticity_ratio = 0.0;
    FeasibilityFlags flags;
    std::string status;  // "ok" or "<kind>@<module>: message"
};

struct SweepResult {
    std::string parameter;
    std::vector<SweepRow> rows;  // in order of the swept values
};

/// Called once per finished row with (finished, total); may be invoked from worker threads.
using SweepProgress = std::function<void(std::size_t, std::size_t)>;

/// Evaluates the feasibility chain at each swept value on `threads` workers.
/// Row contents do not depend on the thread count or completion order.
SweepResult run_sweep(const RunConfig& cfg, unsigned threads = 1, const SweepProgress& progress = {});

/// Whether changing this field can change (beta_L, beta_C, K).
bool affects_loop_circuit(const std::string& field);

CsvTable sweep_table(const SweepResult& result);

}  // namespace squidqnd
