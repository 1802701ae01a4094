#include "entrorisk/portfolio.hpp"

#include <algorithm>
#include <unordered_map>

#include "entrorisk/errors.hpp"
#include "entrorisk/parallel.hpp"
#include "entrorisk/rng.hpp"
#include "entrorisk/stats.hpp"

namespace entrorisk {

namespace {

// Role tag separating portfolio draws from the other consumers of a master
// seed (synthetic panels, bootstrap drops).
constexpr std::uint64_t kPortfolioRole = 2;

// C(n, k) capped at `cap` (the running product is exact and increasing for
// k <= n/2, so we can bail out early).
std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k,
                              std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    c = c * (n - i) / (i + 1);
    if (c >= cap) return cap;
  }
  return static_cast<std::uint64_t>(c);
}

// Member index sets for one size class, in a deterministic order.
std::vector<std::vector<std::uint32_t>> index_portfolios(
    std::uint32_t universe, int size, std::int64_t max_per_size,
    std::uint64_t seed) {
  const auto s = static_cast<std::uint32_t>(size);
  const std::uint64_t cap = static_cast<std::uint64_t>(max_per_size);
  const std::uint64_t total = binomial_capped(universe, s, cap + 1);
  std::vector<std::vector<std::uint32_t>> out;
  if (total <= cap) {
    // Few enough distinct subsets: enumerate them lexicographically.
    std::vector<std::uint32_t> comb(s);
    for (std::uint32_t i = 0; i < s; ++i) comb[i] = i;
    while (true) {
      out.push_back(comb);
      // Advance to the next combination.
      std::int64_t pos = static_cast<std::int64_t>(s) - 1;
      while (pos >= 0 &&
             comb[static_cast<std::size_t>(pos)] ==
                 universe - s + static_cast<std::uint32_t>(pos))
        --pos;
      if (pos < 0) break;
      comb[static_cast<std::size_t>(pos)] += 1;
      for (auto i = static_cast<std::size_t>(pos) + 1; i < s; ++i)
        comb[i] = comb[i - 1] + 1;
    }
    return out;
  }
  out.reserve(static_cast<std::size_t>(max_per_size));
  for (std::int64_t draw = 0; draw < max_per_size; ++draw) {
    rng::SplitMix64 g(rng::derive(seed, static_cast<std::uint64_t>(size),
                                  static_cast<std::uint64_t>(draw),
                                  kPortfolioRole));
    out.push_back(rng::sample_indices(s, universe, g));
  }
  return out;
}

void check_sizes(const std::vector<int>& sizes, std::size_t universe,
                 std::int64_t max_per_size) {
  if (sizes.empty()) throw DomainError("no portfolio sizes given");
  if (max_per_size < 1) throw DomainError("max portfolios per size must be >= 1");
  for (int s : sizes) {
    if (s < 1) throw DomainError("portfolio size must be >= 1");
    if (static_cast<std::size_t>(s) > universe)
      throw DomainError("portfolio size " + std::to_string(s) +
                        " exceeds universe of " + std::to_string(universe));
  }
}

}  // namespace

std::vector<Portfolio> generate_random_portfolios(
    const std::vector<std::string>& universe, const std::vector<int>& sizes,
    std::int64_t max_per_size, std::uint64_t seed) {
  check_sizes(sizes, universe.size(), max_per_size);
  std::vector<Portfolio> out;
  for (int s : sizes) {
    const auto classes = index_portfolios(
        static_cast<std::uint32_t>(universe.size()), s, max_per_size, seed);
    for (const auto& idx : classes) {
      Portfolio p;
      p.member_ids.reserve(idx.size());
      for (auto i : idx) p.member_ids.push_back(universe[i]);
      out.push_back(std::move(p));
    }
  }
  return out;
}

PremiumSeries portfolio_premiums(const Portfolio& pf, const Dataset& d) {
  if (pf.member_ids.empty()) throw DomainError("empty portfolio");
  std::unordered_map<std::string, Eigen::Index> col;
  for (Eigen::Index j = 0; j < d.n_securities(); ++j)
    col.emplace(d.security_ids[static_cast<std::size_t>(j)], j);
  Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(d.n_days());
  for (const auto& id : pf.member_ids) {
    const auto it = col.find(id);
    if (it == col.end())
      throw DomainError("unknown security id '" + id + "'");
    acc += d.returns.col(it->second).array();
  }
  acc /= static_cast<double>(pf.member_ids.size());
  PremiumSeries p;
  p.security_id = "portfolio";
  p.premiums = acc - d.risk_free;
  return p;
}

namespace {

// Shared engine: per size class, compute each portfolio's premiums once and
// apply every measure to it. Work is split across workers with slot writes;
// all reductions run on the main thread in draw order.
struct SizeClassResults {
  int size = 0;
  // risks(row = portfolio, col = config), premiums mean per portfolio
  Eigen::MatrixXd risks;
  Eigen::ArrayXd mean_premiums;
};

SizeClassResults measure_size_class(const Dataset& d, int size,
                                    std::int64_t max_per_size,
                                    const std::vector<MeasureConfig>& configs,
                                    std::uint64_t seed, int workers) {
  const auto idx_sets = index_portfolios(
      static_cast<std::uint32_t>(d.n_securities()), size, max_per_size, seed);
  const auto n_pf = static_cast<Eigen::Index>(idx_sets.size());
  const auto n_cfg = static_cast<Eigen::Index>(configs.size());
  SizeClassResults res;
  res.size = size;
  res.risks.resize(n_pf, n_cfg);
  res.mean_premiums.resize(n_pf);
  const Eigen::ArrayXd mkt = market_premium(d);
  const PremiumSeries mkt_series{d.market_id, mkt};
  parallel_for(n_pf, workers, [&](std::int64_t row) {
    const auto& members = idx_sets[static_cast<std::size_t>(row)];
    Eigen::ArrayXd acc = Eigen::ArrayXd::Zero(d.n_days());
    for (auto j : members)
      acc += d.returns.col(static_cast<Eigen::Index>(j)).array();
    acc /= static_cast<double>(members.size());
    const PremiumSeries p{"portfolio", acc - d.risk_free};
    res.mean_premiums(row) = p.premiums.mean();
    for (Eigen::Index c = 0; c < n_cfg; ++c) {
      const MeasureConfig& cfg = configs[static_cast<std::size_t>(c)];
      double value = 0.0;
      switch (cfg.measure) {
        case Measure::StdDev: value = risk_stddev(p).value; break;
        case Measure::Beta: value = risk_beta(p, mkt_series).value; break;
        case Measure::EntropyShannon:
        case Measure::EntropyRenyi:
          value = risk_entropy(p, cfg).value;
          break;
      }
      res.risks(row, c) = value;
    }
  });
  return res;
}

}  // namespace

std::vector<DiversificationCurve> diversification_curve(
    const Dataset& d, const std::vector<int>& sizes, std::int64_t max_per_size,
    const std::vector<MeasureConfig>& configs, std::uint64_t seed,
    int workers) {
  if (configs.empty()) throw DomainError("no measures given");
  for (const auto& cfg : configs)
    if (cfg.measure == Measure::Beta)
      throw DomainError(
          "beta is excluded from diversification curves (systematic risk "
          "only)");
  check_sizes(sizes, static_cast<std::size_t>(d.n_securities()), max_per_size);

  // The size-1 average anchors every reduction, so compute it even when the
  // caller did not ask for size 1.
  std::vector<int> work_sizes = sizes;
  if (std::find(work_sizes.begin(), work_sizes.end(), 1) == work_sizes.end())
    work_sizes.insert(work_sizes.begin(), 1);

  std::vector<DiversificationCurve> curves(configs.size());
  for (std::size_t c = 0; c < configs.size(); ++c) {
    curves[c].measure = configs[c].measure;
    curves[c].sizes = sizes;
    curves[c].mean_risk.resize(sizes.size());
    curves[c].reduction.resize(sizes.size());
  }
  std::vector<double> base(configs.size(), 0.0);
  std::unordered_map<int, std::vector<double>> means_by_size;
  for (int s : work_sizes) {
    if (means_by_size.count(s)) continue;
    const auto res = measure_size_class(d, s, max_per_size, configs, seed,
                                        workers);
    std::vector<double> means(configs.size());
    for (std::size_t c = 0; c < configs.size(); ++c)
      means[c] = res.risks.col(static_cast<Eigen::Index>(c)).mean();
    if (s == 1) base = means;
    means_by_size.emplace(s, std::move(means));
  }
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    const auto& means = means_by_size.at(sizes[k]);
    for (std::size_t c = 0; c < configs.size(); ++c) {
      if (!(base[c] != 0.0))
        throw DomainError("size-1 mean risk is zero; reduction undefined");
      curves[c].mean_risk[k] = means[c];
      curves[c].reduction[k] = 1.0 - means[c] / base[c];
    }
  }
  return curves;
}

std::vector<ScatterRow> scatter_dataset(
    const Dataset& d, const std::vector<int>& sizes, std::int64_t per_size,
    const std::vector<MeasureConfig>& configs, std::uint64_t seed,
    int workers) {
  if (configs.empty()) throw DomainError("no measures given");
  check_sizes(sizes, static_cast<std::size_t>(d.n_securities()), per_size);
  std::vector<ScatterRow> rows;
  for (int s : sizes) {
    const auto res = measure_size_class(d, s, per_size, configs, seed, workers);
    for (Eigen::Index r = 0; r < res.risks.rows(); ++r)
      for (std::size_t c = 0; c < configs.size(); ++c)
        rows.push_back({configs[c].measure, s,
                        res.risks(r, static_cast<Eigen::Index>(c)),
                        res.mean_premiums(r)});
  }
  return rows;
}

}  // namespace entrorisk
