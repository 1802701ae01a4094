#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "entrorisk/dates.hpp"

namespace entrorisk {

// One security's aligned daily history. Returns are decimal fractions
// (0.01 == 1%), one per date.
struct ReturnSeries {
  std::string security_id;
  std::vector<Date> dates;
  Eigen::ArrayXd returns;
};

// Excess return over the risk-free rate, day by day.
struct PremiumSeries {
  std::string security_id;
  Eigen::ArrayXd premiums;
};

// Panel of securities on a shared trading-day axis, plus the designated
// market portfolio and risk-free columns.
struct Dataset {
  std::vector<Date> dates;                // strictly increasing
  std::vector<std::string> security_ids;  // excludes market / risk-free
  Eigen::MatrixXd returns;                // n_days x n_securities
  Eigen::ArrayXd market;                  // n_days
  Eigen::ArrayXd risk_free;               // n_days
  std::string market_id = "MKT";
  std::string risk_free_id = "RF";

  Eigen::Index n_days() const { return static_cast<Eigen::Index>(dates.size()); }
  Eigen::Index n_securities() const {
    return static_cast<Eigen::Index>(security_ids.size());
  }
  ReturnSeries series(Eigen::Index i) const;
  // Internal consistency; throws DomainError if shapes/dates disagree.
  void validate() const;
};

// Loads a return panel from CSV. Header: `date` first, then one numeric
// column per security; `market_column` and `risk_free_column` name two of
// them. Leading '#' lines are skipped. All failures throw IoError with
// row/column context.
Dataset load_dataset(const std::filesystem::path& path,
                     const std::string& market_column = "MKT",
                     const std::string& risk_free_column = "RF");

// Writes the panel back out in the same layout (securities, market,
// risk-free). `comment_lines` go first, each prefixed with "# ".
void save_dataset_csv(const Dataset& d, const std::filesystem::path& path,
                      const std::vector<std::string>& comment_lines = {});

Eigen::ArrayXd market_premium(const Dataset& d);
// One series per security, then the market's own premium series last.
std::vector<PremiumSeries> premiums(const Dataset& d);

// Sub-panel of the days falling inside [interval.lo, interval.hi].
Dataset slice_by_interval(const Dataset& d, const DateInterval& interval);

// A half of a rolling evaluation window: the fit range and the held-out range.
struct WindowSplit {
  DateInterval in_range;
  DateInterval out_range;
  int start_year = 0;  // first calendar year covered by in_range
};

// Rolling windows over the panel's complete calendar years (years observed in
// both January and December), stepping one year at a time. Each window spans
// `window_years`, split into a leading `in_years` fit period and the
// remaining held-out period.
std::vector<WindowSplit> rolling_windows(const Dataset& d,
                                         int window_years = 10,
                                         int in_years = 5);

enum class Regime { Bull, Bear };

struct RegimeInterval {
  DateInterval range;
  Regime label = Regime::Bull;
};

// Non-overlapping labeled date intervals; days outside every interval belong
// to no regime.
struct RegimeCalendar {
  std::vector<RegimeInterval> entries;
};

// CSV with header start,end,label; label is "bull" or "bear".
RegimeCalendar load_regime_calendar(const std::filesystem::path& path);

// Days of `d` covered by an interval carrying `label`, order preserved.
Dataset filter_by_regime(const Dataset& d, const RegimeCalendar& calendar,
                         Regime label);

// One-factor synthetic panel: market premium is drift + vol * z, each
// security's premium is beta * market premium + idiosyncratic noise. With a
// zero risk-free rate, premiums and returns coincide.
struct SyntheticSpec {
  int n_securities = 0;
  int n_days = 0;
  Eigen::ArrayXd betas;      // size n_securities
  double market_vol = 0.0;   // daily, > 0
  Eigen::ArrayXd idio_vols;  // size n_securities, >= 0
  double market_drift = 0.0;
  double risk_free_rate = 0.0;
  Date start_date{1985, 1, 1};
  std::uint64_t seed = 0;
};

// Draws are addressed by (seed, stream, day) — stream 0 is the market,
// stream i+1 is security i — so the panel is reproducible regardless of
// generation order or thread count.
Dataset generate_synthetic(const SyntheticSpec& spec);

}  // namespace entrorisk
