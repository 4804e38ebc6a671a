#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stark/harness/job.hpp"
#include "stark/rpm/solver.hpp"

namespace stark::harness {

/// One line of a comparison table. Numbers are decimal strings throughout.
struct ResultRow {
    std::string method;
    std::string re;      // empty when the method gives no real part
    std::string gamma;   // "0", a value, "< bound", or empty
    std::string source;  // "computed" or a catalog source
    /// Absolute uncertainty of Re E claimed by the engine; empty if none.
    std::string re_uncertainty;
    /// Relative uncertainty of Gamma claimed by the engine; empty if none.
    std::string gamma_uncertainty;
    std::string note;
    bool failed = false;
};

struct Verdict {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Report {
    JobConfig config;
    std::vector<ResultRow> rows;
    std::vector<Verdict> verdicts;
    std::optional<rpm::ConvergenceTrace> trace;
    int trace_digits = 0;

    bool engine_failed() const;
    bool checks_failed() const;
};

/// Table with columns method,ReE,Gamma,source.
std::string render_csv(const Report& report);
std::string render_json(const Report& report);
/// Human-readable tables (rows, then verdicts).
std::string render_md(const Report& report);
std::string render(const Report& report, Format format);

/// CSV with header D,ReE,ImE,log10_rel_dRe,log10_rel_dIm; energies in full
/// working precision, log columns empty where undefined.
std::string convergence_csv(const rpm::ConvergenceTrace& trace, int digits);
/// Writes convergence_csv to `path`; throws std::runtime_error naming the path.
void emit_convergence(const rpm::ConvergenceTrace& trace, int digits, const std::string& path);

/// Replaces the contents of `path`; throws std::runtime_error naming the path.
void write_text(const std::string& path, const std::string& content);

}  // namespace stark::harness
