#pragma once

#include <optional>
#include <string>
#include <vector>

namespace gebeam {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string details;
};

using CheckList = std::vector<CheckResult>;

/// Angular frequency from the zero crossings of a sampled signal (linear
/// interpolation at sign changes; pi * crossings_spanned / time_spanned).
/// Empty when fewer than two crossings are present.
std::optional<double> angular_frequency_from_crossings(const std::vector<double>& t,
                                                       const std::vector<double>& y);

// Acceptance-grade property checks. Each runs self-contained experiments at
// pinned sizes and tolerances and reports the measured numbers.
CheckResult check_so3_algebra(unsigned seed);
CheckResult check_energy_conservation();
CheckResult check_rigid_limit();
CheckResult check_static_bending();
CheckResult check_axial_frequency();
CheckResult check_hamilton_equivalence(unsigned seed);
CheckResult check_bracket_consistency(unsigned seed);
CheckResult check_closure_refinement();
CheckResult check_action_stationarity(unsigned seed);
CheckResult check_duality(unsigned seed);

/// Named suites of the CLI verify command: so3, energy, hamilton-equivalence,
/// bracket, action, closure, or all.
CheckList run_suite(const std::string& suite, unsigned seed);

}  // namespace gebeam
