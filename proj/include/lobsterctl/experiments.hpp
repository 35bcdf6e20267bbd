#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lobsterctl/csa.hpp"

namespace lobsterctl {

struct SweepConfig {
  std::vector<int> n_values;  // spine lengths
  int trials = 100;
  std::uint64_t seed = 1;
  CsaMode mode = CsaMode::hitting_set;
  int max_load = 2;
  bool strict_step6 = false;
  bool ablate_step6 = false;  // also run every trial with the fallback step off
  double audit_fraction = 0.05;  // share of successes re-certified exactly
  int jobs = 1;

  // Throws Error(invalid_argument) for trials < 1, empty or < 2 spine lengths,
  // audit fraction outside [0, 1].
  void validate() const;
};

// Default sweep: n = 10, 20, ..., 100.
std::vector<int> default_n_values();

struct SweepRow {
  int n = 0;
  int trials = 0;
  int successes = 0;
  double success_rate = 0.0;
  double mean_leaders = 0.0;  // over successes, NaN when there are none
  double mean_N = 0.0;  // over all trials
  double mean_proportion = 0.0;  // leaders / N over successes, NaN when none
  std::optional<double> step6_off_rate;
  int audited = 0;
  int audit_passed = 0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  int points = 0;
  bool valid = false;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  LinearFit leaders_vs_spine;  // l(n) against spine length
  LinearFit leaders_vs_total;  // l(n) against mean vertex count
  std::vector<std::string> flags;
};

// Per-trial seed derived from (base, n, trial) by a splitmix64 chain, so
// schedule order and job count never change results.
std::uint64_t trial_seed(std::uint64_t base, int n, int trial);

// Least squares y = slope * x + intercept.
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// One engine behind the three sweeps; they differ only in which columns the
// caller reads and whether the ablation runs.
SweepResult run_sweep(const SweepConfig& cfg);
SweepResult run_success_probability(SweepConfig cfg);  // forces the ablation
SweepResult run_leader_scaling(const SweepConfig& cfg);
SweepResult run_proportion(const SweepConfig& cfg);

std::string csv_header(bool with_ablation);
std::string to_csv(const SweepResult& result);
// Throws Error(io) with the path on failure.
void write_csv(const SweepResult& result, const std::string& path);
// Parses what to_csv emits (rows only). Throws Error(parse).
std::vector<SweepRow> parse_csv(const std::string& text);

enum class SweepMetric { success, scaling, proportion };
// Plain-text SVG line plot of one metric plus a dashed reference line
// (success 0.98, leaders 0.3 n + 2, proportion 0.2).
std::string to_svg(const SweepResult& result, SweepMetric metric);

}  // namespace lobsterctl
