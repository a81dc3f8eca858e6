#pragma once

#include <string>
#include <vector>

#include "squidqnd/config.hpp"

namespace squidqnd {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Invariant and oracle suite on the configured device: harmonic limit,
/// parity, Hellmann-Feynman slope, quartic-fit oracle, linear cavity,
/// QND block structure, and agreement of the two zeta_max forms.
/// Numerical errors inside a check mark that check failed.
std::vector<CheckResult> run_validation(const RunConfig& cfg);

/// Fixed-width pass/fail table, one line per check.
std::string render_validation_table(const std::vector<CheckResult>& results);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace squidqnd
