#pragma once

#include <string>
#include <vector>

#include "stark/harness/job.hpp"
#include "stark/harness/report.hpp"

namespace stark::harness {

struct RpmRun {
    ResultRow row;
    rpm::ConvergenceTrace trace;
    int digits = 0;
};

/// Hankel-determinant scan over D = dim_from .. dim_to. Digits default to
/// rpm::precision_rule(F).
RpmRun run_rpm(const JobConfig& config);
/// Sum of the first `orders` terms, or the optimally truncated series.
ResultRow run_pt(const JobConfig& config);
/// Complex-rotated Laguerre mesh; digits (default 30) set the assembly precision.
ResultRow run_crlm(const JobConfig& config);
/// Ground-state width formula; 0 < F <= 0.05.
ResultRow run_asymptotic(const JobConfig& config);

struct ToleranceSpec {
    /// |Re E_a - Re E_b| allowed beyond the engines' own uncertainties.
    std::string re_abs = "1e-12";
    /// Relative Gamma difference allowed beyond the engines' own uncertainties.
    std::string gamma_rel = "1e-6";
};

/// Pairwise verdicts over the computed rows. A width bound "< b" is checked
/// as bound consistent against the other width; failed rows give a failing
/// verdict of their own.
std::vector<Verdict> cross_validate(const std::vector<ResultRow>& rows, const ToleranceSpec& tol = {});

/// Whether --check has anything to compare against for this method and state.
bool has_reference(Method method, const pt::StateLabel& state, const std::string& field);

/// Verdicts of one computed row against the catalog (or the exact levels at F = 0).
std::vector<Verdict> check_row(const ResultRow& row, const JobConfig& config);

/// Validates, dispatches and assembles the report. ConfigError propagates;
/// engine failures become failed rows.
Report run(const JobConfig& config);

/// 0 ok, 2 config, 3 engine failure, 4 check failure.
int exit_status(const Report& report);

}  // namespace stark::harness
