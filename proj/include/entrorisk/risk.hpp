#pragma once

#include <string_view>

#include "entrorisk/data.hpp"
#include "entrorisk/density.hpp"
#include "entrorisk/entropy.hpp"

namespace entrorisk {

// The unified risk measures: premium standard deviation, market beta, and
// exponential entropy at orders 1 and 2.
enum class Measure { StdDev, Beta, EntropyShannon, EntropyRenyi };

const char* measure_name(Measure m);
Measure measure_from_name(std::string_view name);

// How to estimate a measure. Zeros mean "use the default": 175 bins for
// order-1 entropy, 50 for order-2, the Silverman bandwidth, block order
// ceil(n / bins).
struct MeasureConfig {
  Measure measure = Measure::StdDev;
  DensityMethod backend = DensityMethod::Histogram;
  int bins = 0;
  double bandwidth = 0.0;
  int order = 0;
  int quad_points = 4096;

  double alpha() const {
    if (measure == Measure::EntropyShannon) return 1.0;
    if (measure == Measure::EntropyRenyi) return 2.0;
    return 0.0;
  }
  int resolved_bins() const {
    if (bins > 0) return bins;
    return measure == Measure::EntropyRenyi ? 50 : 175;
  }
};

struct RiskEstimate {
  Measure measure = Measure::StdDev;
  double value = 0.0;
  MeasureConfig config;
};

// Sample standard deviation (n-1) of the premiums.
RiskEstimate risk_stddev(const PremiumSeries& p);

// cov(premium, market premium) / var(market premium), matching divisors.
RiskEstimate risk_beta(const PremiumSeries& p, const PremiumSeries& market);

// e^H of the premium sample's differential entropy; config.measure selects
// the order, config.backend the density estimator.
RiskEstimate risk_entropy(const PremiumSeries& p, const MeasureConfig& config);

// The configured measure for every security of the panel, in id order.
Eigen::ArrayXd risk_vector(const Dataset& d, const MeasureConfig& config);

}  // namespace entrorisk
