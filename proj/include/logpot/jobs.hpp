/// Batch job front-end: parse a job document, run the requested pipeline,
/// and emit a machine-readable report plus CSV tables.  The CLI is a thin
/// wrapper over run_job.

#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "logpot/loggas.hpp"

namespace logpot {

inline constexpr const char* kVersion = "logpot 0.1.0";

/// Raised on malformed or incomplete job documents (CLI exit code 2).
struct JobError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MeasureSpec {
    std::string base = "semicircle";  // semicircle | arcsine
    double center = 0.0;
    double scale = 1.0;
    std::vector<double> coeffs{1.0};
};

struct JobSpec {
    std::string command;
    std::vector<double> potential;
    std::vector<double> f;
    std::vector<double> g;
    std::optional<MeasureSpec> nu;          // deficit test measure
    std::optional<MeasureSpec> weight;      // direct Poincare weight
    double rho = 0.5;
    std::string kind = "transport";         // transport | lsi | hwi
    int truncation = 64;
    double tol = 1e-12;
    int grid = 200;
    double step = 1e-2;                     // finite-difference step for perturb
    GasConfig gas;
    int threads = 1;
    std::string out_dir = ".";
};

/// Parse a job document (JSON text).  Throws JobError on any defect.
JobSpec parse_job(const std::string& text);

/// Load and parse a job file.
JobSpec load_job(const std::string& path);

/// Run the job, writing report.json and any CSV tables under spec.out_dir.
/// Returns the process exit code: 0 success, 3 solver/module failure,
/// 4 selftest invariant violation.
int run_job(const JobSpec& spec, std::ostream& log);

/// Condensed invariant suite; prints one line per check plus a summary and
/// returns the number of failures.
int selftest(std::ostream& log);

}  // namespace logpot
