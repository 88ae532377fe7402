#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ddg/fraction.hpp"

namespace ddg {

struct ExperimentRecord {
    int N = 0;
    uint64_t seed = 0;
    Fraction delta;
    int distinct_count = 0;
    int u_size = 0;
    int uprime_size = 0;
    int balanced_size = 0;
    int retries_used = 0;
    int64_t wall_ms = 0;
    std::string error;  // empty on success; failed sweeps keep their row
};

// CSV schema v1. First line "schema,v1", then a fixed header, then rows.
// `stable` zeroes wall_ms so reruns are byte-identical.
void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& rows, bool stable);

struct ScalingSummary {
    std::vector<int> sizes;
    std::vector<double> mean_distinct;   // per size, failures counted as 0
    std::vector<double> stddev_distinct;
    double slope = 0;       // least squares of log2(mean) on log2(N)
    bool slope_valid = false;  // needs >= 3 sizes with positive means
};

// Runs trials per size with per-trial seeds mix(seed, N, t). Rows are
// independent and computed under OpenMP (`jobs` threads; 0 keeps the
// default), then emitted in (size, trial) order regardless of schedule.
ScalingSummary run_scaling(const std::vector<int>& sizes, int trials, const Fraction& delta,
                           uint64_t seed, int jobs, int retries,
                           std::vector<ExperimentRecord>& rows_out);

std::string summary_json(const ScalingSummary& s);

}  // namespace ddg
