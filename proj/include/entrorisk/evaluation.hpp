#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "entrorisk/data.hpp"
#include "entrorisk/risk.hpp"

namespace entrorisk {

// Two-parameter least squares v = a0 + a1*u, with classical standard errors
// and t-distribution p-values on n-2 degrees of freedom.
struct RegressionFit {
  double a0 = 0.0;
  double a1 = 0.0;
  double r_squared = 0.0;
  double p_a0 = 1.0;
  double p_a1 = 1.0;
  Eigen::Index n_points = 0;
};

RegressionFit ols_fit(const Eigen::Ref<const Eigen::ArrayXd>& u,
                      const Eigen::Ref<const Eigen::ArrayXd>& v);

// Cross-sectional result for one measure on one sample: eta is the R² of
// mean premium against risk (always equal to fit.r_squared).
struct EvaluationReport {
  Measure measure = Measure::StdDev;
  MeasureConfig config;
  RegressionFit fit;
  double eta = 0.0;
  std::string sample_label;       // "full", "bull", "bear", or a window id
  bool out_of_sample = false;
};

// In-sample explanatory power: regress each security's mean daily premium on
// its risk estimate, both computed on d.
EvaluationReport explanatory_power(const Dataset& d,
                                   const MeasureConfig& config,
                                   const std::string& label = "full");

// Out-of-sample (predictive) power: risks estimated on d_in, mean premiums
// taken from d_out, and the regression refit on those pairs.
EvaluationReport predictive_power(const Dataset& d_in, const Dataset& d_out,
                                  const MeasureConfig& config,
                                  const std::string& label = "");

struct WindowRow {
  WindowSplit window;
  std::string label;
  std::vector<EvaluationReport> in_reports;   // parallel to configs
  std::vector<EvaluationReport> out_reports;  // parallel to configs
};

struct RollingSummary {
  Measure measure = Measure::StdDev;
  double mean_eta_in = 0.0;
  double mean_eta_out = 0.0;
  // stddev/mean across windows; 0 for a single window.
  double rel_dev_in = 0.0;
  double rel_dev_out = 0.0;
};

struct RollingEvaluation {
  std::vector<WindowRow> rows;
  std::vector<RollingSummary> summary;  // parallel to configs
};

RollingEvaluation rolling_evaluation(const Dataset& d,
                                     const std::vector<WindowSplit>& windows,
                                     const std::vector<MeasureConfig>& configs,
                                     int workers = 1);

struct BootstrapComparison {
  Measure measure_a = Measure::StdDev;
  Measure measure_b = Measure::StdDev;
  std::size_t config_a = 0;  // indices into the configs list
  std::size_t config_b = 0;
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;
  std::string significance;  // "1%", "5%", "10%", or "none"
  bool degenerate = false;   // zero-variance samples; t/df/p not meaningful
};

struct BootstrapReport {
  int iterations = 0;
  int drop_count = 0;
  std::vector<MeasureConfig> configs;
  Eigen::MatrixXd r2;  // iterations x configs, R-squared per survivor set
  std::vector<BootstrapComparison> comparisons;  // every config pair
};

// Each iteration drops `drop_count` random securities (same drop set for all
// measures, so the R² samples are paired by iteration) and records every
// measure's explanatory power on the survivors; measures are then compared
// pairwise with an unpaired Welch t-test. Deterministic given seed,
// bit-identical across worker counts.
BootstrapReport bootstrap_compare(const Dataset& d,
                                  const std::vector<MeasureConfig>& configs,
                                  int iterations = 1000, int drop_count = 25,
                                  std::uint64_t seed = 0, int workers = 1);

// Core variant on precomputed risk columns (one per config) and mean-premium
// targets; useful when risks come from somewhere other than risk_vector.
BootstrapReport bootstrap_compare(const Eigen::MatrixXd& risks,
                                  const Eigen::ArrayXd& targets,
                                  const std::vector<MeasureConfig>& configs,
                                  int iterations = 1000, int drop_count = 25,
                                  std::uint64_t seed = 0, int workers = 1);

struct RegimeEvaluation {
  std::vector<EvaluationReport> bull;  // parallel to configs
  std::vector<EvaluationReport> bear;  // parallel to configs
};

// Explanatory power on the bull-labeled days and on the bear-labeled days.
// Both regimes must be non-empty.
RegimeEvaluation regime_evaluation(const Dataset& d,
                                   const RegimeCalendar& calendar,
                                   const std::vector<MeasureConfig>& configs);

}  // namespace entrorisk
