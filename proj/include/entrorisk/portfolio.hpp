#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "entrorisk/data.hpp"
#include "entrorisk/risk.hpp"

namespace entrorisk {

// An equally-weighted basket of distinct securities.
struct Portfolio {
  std::vector<std::string> member_ids;  // distinct, ascending by id order used
  int size() const { return static_cast<int>(member_ids.size()); }
};

// For each requested size: min(max_per_size, C(universe, size)) portfolios.
// When the binomial count fits the cap the size class is enumerated
// exhaustively (lexicographic); otherwise portfolios are sampled with
// replacement at the portfolio level, each drawn uniformly without
// replacement within itself. Per-draw seeds derive from (seed, size, draw),
// so the output is a pure function of the arguments.
std::vector<Portfolio> generate_random_portfolios(
    const std::vector<std::string>& universe, const std::vector<int>& sizes,
    std::int64_t max_per_size, std::uint64_t seed);

// Daily premium = arithmetic mean of the members' premiums.
PremiumSeries portfolio_premiums(const Portfolio& pf, const Dataset& d);

// Average risk per portfolio size, plus the reduction relative to the
// single-security average: reduction(s) = 1 − mean_risk(s)/mean_risk(1).
struct DiversificationCurve {
  Measure measure = Measure::StdDev;
  std::vector<int> sizes;
  std::vector<double> mean_risk;
  std::vector<double> reduction;
};

// One curve per measure config, all computed over the same generated
// portfolios. Beta is rejected (it prices only systematic risk, so
// diversification cannot reduce it). The size-1 baseline is computed even
// when 1 is absent from `sizes`. Bit-identical across worker counts.
std::vector<DiversificationCurve> diversification_curve(
    const Dataset& d, const std::vector<int>& sizes, std::int64_t max_per_size,
    const std::vector<MeasureConfig>& configs, std::uint64_t seed,
    int workers = 1);

struct ScatterRow {
  Measure measure = Measure::StdDev;
  int size = 0;
  double risk = 0.0;
  double mean_premium = 0.0;
};

// Risk/return sample of random portfolios: one row per portfolio per measure
// config. Beta is allowed here.
std::vector<ScatterRow> scatter_dataset(
    const Dataset& d, const std::vector<int>& sizes, std::int64_t per_size,
    const std::vector<MeasureConfig>& configs, std::uint64_t seed,
    int workers = 1);

}  // namespace entrorisk
