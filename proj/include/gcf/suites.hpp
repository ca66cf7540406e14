#pragma once

#include <string>
#include <vector>

#include "gcf/config.hpp"
#include "gcf/fibration.hpp"

namespace gcf {

/// One aggregate check of a suite: value compared against a threshold.
/// `upper_bound` true means pass iff value <= threshold, false means
/// pass iff value >= threshold (functional lower bounds, dichotomies).
struct MetricResult {
    std::string key;
    double value = 0;
    double threshold = 0;
    bool upper_bound = true;
    bool pass = false;
};

/// One per-sample CSV row: sample id, up to four coordinates plus the circle
/// parameter, a metric name and its value at that sample.
struct SampleRow {
    long id = 0;
    double c0 = 0, c1 = 0, c2 = 0, c3 = 0, t = 0;
    std::string metric;
    double value = 0;
};

struct SuiteResult {
    std::string name;
    std::vector<MetricResult> metrics;
    std::vector<SampleRow> rows;
    bool passed() const;
};

/// Executes one named suite over the certified fibration.
SuiteResult run_suite(const RunConfig& cfg, const Fibration& fib, const std::string& suite);

/// Writes <output_dir>/<suite>.csv, <suite>_plot.csv and summary.txt.
/// Output is byte-stable for a fixed config (fixed seed, fixed formatting).
void emit_report(const RunConfig& cfg, const std::vector<SuiteResult>& results);

/// Builds the fibration, runs the configured suites (all if none named),
/// emits reports; returns 0 iff every metric of every suite passed.
int run_all(const RunConfig& cfg);

}  // namespace gcf
