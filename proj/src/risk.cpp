#include "entrorisk/risk.hpp"

#include <cmath>
#include <string>

#include "entrorisk/errors.hpp"
#include "entrorisk/stats.hpp"

namespace entrorisk {

const char* measure_name(Measure m) {
  switch (m) {
    case Measure::StdDev: return "stddev";
    case Measure::Beta: return "beta";
    case Measure::EntropyShannon: return "entropy_shannon";
    case Measure::EntropyRenyi: return "entropy_renyi";
  }
  return "?";
}

Measure measure_from_name(std::string_view name) {
  if (name == "stddev") return Measure::StdDev;
  if (name == "beta") return Measure::Beta;
  if (name == "entropy_shannon") return Measure::EntropyShannon;
  if (name == "entropy_renyi") return Measure::EntropyRenyi;
  throw DomainError("unknown measure '" + std::string(name) +
                    "' (expected stddev, beta, entropy_shannon, "
                    "entropy_renyi)");
}

RiskEstimate risk_stddev(const PremiumSeries& p) {
  RiskEstimate r;
  r.measure = Measure::StdDev;
  r.config.measure = Measure::StdDev;
  r.value = stats::sample_stddev(p.premiums);
  return r;
}

RiskEstimate risk_beta(const PremiumSeries& p, const PremiumSeries& market) {
  if (p.premiums.size() != market.premiums.size())
    throw DomainError("beta: series lengths differ");
  const double market_var = stats::sample_variance(market.premiums);
  if (!(market_var > 0.0))
    throw DomainError("beta: market premium variance is zero");
  RiskEstimate r;
  r.measure = Measure::Beta;
  r.config.measure = Measure::Beta;
  r.value =
      stats::sample_covariance(p.premiums, market.premiums) / market_var;
  return r;
}

RiskEstimate risk_entropy(const PremiumSeries& p, const MeasureConfig& config) {
  const double alpha = config.alpha();
  if (alpha == 0.0)
    throw DomainError("risk_entropy requires an entropy measure config");
  DensityEstimate density;
  switch (config.backend) {
    case DensityMethod::Histogram:
      density =
          histogram_density(p.premiums, BinRule::fixed(config.resolved_bins()));
      break;
    case DensityMethod::Kernel: {
      const double h = config.bandwidth > 0.0
                           ? config.bandwidth
                           : silverman_bandwidth(p.premiums);
      density = kernel_density(p.premiums, h);
      break;
    }
    case DensityMethod::SpacingSimple:
    case DensityMethod::SpacingCorrea: {
      const int m =
          config.order > 0
              ? config.order
              : spacing_order(p.premiums.size(), config.resolved_bins());
      density = config.backend == DensityMethod::SpacingSimple
                    ? spacing_density_simple(p.premiums, m)
                    : spacing_density_correa(p.premiums, m);
      break;
    }
  }
  const EntropyValue h =
      entropy_plugin(density, alpha, std::nullopt, {config.quad_points});
  RiskEstimate r;
  r.measure = config.measure;
  r.config = config;
  r.value = std::exp(h.value);
  return r;
}

Eigen::ArrayXd risk_vector(const Dataset& d, const MeasureConfig& config) {
  const auto l = d.n_securities();
  Eigen::ArrayXd out(l);
  const PremiumSeries mkt{d.market_id, market_premium(d)};
  for (Eigen::Index i = 0; i < l; ++i) {
    const PremiumSeries p{d.security_ids[static_cast<std::size_t>(i)],
                          d.returns.col(i).array() - d.risk_free};
    switch (config.measure) {
      case Measure::StdDev: out(i) = risk_stddev(p).value; break;
      case Measure::Beta: out(i) = risk_beta(p, mkt).value; break;
      case Measure::EntropyShannon:
      case Measure::EntropyRenyi:
        out(i) = risk_entropy(p, config).value;
        break;
    }
  }
  return out;
}

}  // namespace entrorisk
