#pragma once

#include <span>
#include <string>
#include <vector>

#include "nws/parallel.hpp"

namespace nws::claims {

struct Row {
    std::string id;
    std::string description;
    bool pass;
    double measured;
    double tolerance;
    std::string detail;
};

struct Options {
    std::vector<int> dims{1, 2, 3};
    /// Quadrature tolerances for every candidate evaluation in the suite.
    /// Loosening them blows the error budget of the residue-identity row,
    /// which then fails rather than silently reporting an untrustworthy gap.
    double quad_rel = 1e-12;
    double quad_abs = 1e-16;
    Exec exec = Exec::parallel;
};

/// Runs the full claim suite and returns one row per claim. Deterministic:
/// identical options produce identical rows.
std::vector<Row> run_all(const Options& options);

bool all_pass(std::span<const Row> rows);

/// CSV table: claim_id,description,status,measured,tolerance,detail.
std::string to_csv(std::span<const Row> rows);

} // namespace nws::claims
