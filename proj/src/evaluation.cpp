#include "entrorisk/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "entrorisk/errors.hpp"
#include "entrorisk/parallel.hpp"
#include "entrorisk/rng.hpp"
#include "entrorisk/stats.hpp"

namespace entrorisk {

namespace {

constexpr std::uint64_t kBootstrapRole = 3;

// Mean daily premium per security.
Eigen::ArrayXd premium_means(const Dataset& d) {
  const double rf_mean = d.risk_free.mean();
  return d.returns.colwise().mean().array() - rf_mean;
}

std::string significance_label(double p, bool degenerate) {
  if (degenerate) return "none";
  if (p < 0.01) return "1%";
  if (p < 0.05) return "5%";
  if (p < 0.10) return "10%";
  return "none";
}

}  // namespace

RegressionFit ols_fit(const Eigen::Ref<const Eigen::ArrayXd>& u,
                      const Eigen::Ref<const Eigen::ArrayXd>& v) {
  const auto n = u.size();
  if (n != v.size()) throw DomainError("regression: length mismatch");
  if (n < 3) throw DomainError("regression needs at least 3 points");
  const double um = u.mean();
  const double vm = v.mean();
  const Eigen::ArrayXd du = u - um;
  const Eigen::ArrayXd dv = v - vm;
  const double sxx = du.square().sum();
  if (!(sxx > 0.0)) throw DomainError("constant explanatory variable");
  const double sxy = (du * dv).sum();
  RegressionFit fit;
  fit.n_points = n;
  fit.a1 = sxy / sxx;
  fit.a0 = vm - fit.a1 * um;
  const Eigen::ArrayXd resid = v - (fit.a0 + fit.a1 * u);
  const double ssr = resid.square().sum();
  const double sst = dv.square().sum();
  fit.r_squared = sst > 0.0 ? std::clamp(1.0 - ssr / sst, 0.0, 1.0) : 0.0;
  const double nd = static_cast<double>(n);
  const double s2 = ssr / (nd - 2.0);
  const double se_a1 = std::sqrt(s2 / sxx);
  const double se_a0 = std::sqrt(s2 * (1.0 / nd + um * um / sxx));
  auto p_of = [&](double coef, double se) {
    if (!(se > 0.0)) return coef == 0.0 ? 1.0 : 0.0;
    return stats::student_t_two_sided_p(coef / se, nd - 2.0);
  };
  fit.p_a0 = p_of(fit.a0, se_a0);
  fit.p_a1 = p_of(fit.a1, se_a1);
  return fit;
}

EvaluationReport explanatory_power(const Dataset& d,
                                   const MeasureConfig& config,
                                   const std::string& label) {
  if (d.n_securities() < 3)
    throw DomainError("need >= 3 securities for cross-sectional regression");
  EvaluationReport rep;
  rep.measure = config.measure;
  rep.config = config;
  rep.sample_label = label;
  rep.out_of_sample = false;
  const Eigen::ArrayXd u = risk_vector(d, config);
  const Eigen::ArrayXd v = premium_means(d);
  rep.fit = ols_fit(u, v);
  rep.eta = rep.fit.r_squared;
  return rep;
}

EvaluationReport predictive_power(const Dataset& d_in, const Dataset& d_out,
                                  const MeasureConfig& config,
                                  const std::string& label) {
  if (d_in.security_ids != d_out.security_ids)
    throw DomainError("security sets differ between fit and held-out panels");
  if (d_in.n_securities() < 3)
    throw DomainError("need >= 3 securities for cross-sectional regression");
  EvaluationReport rep;
  rep.measure = config.measure;
  rep.config = config;
  rep.sample_label = label;
  rep.out_of_sample = true;
  const Eigen::ArrayXd u = risk_vector(d_in, config);
  const Eigen::ArrayXd v = premium_means(d_out);
  rep.fit = ols_fit(u, v);
  rep.eta = rep.fit.r_squared;
  return rep;
}

RollingEvaluation rolling_evaluation(const Dataset& d,
                                     const std::vector<WindowSplit>& windows,
                                     const std::vector<MeasureConfig>& configs,
                                     int workers) {
  if (windows.empty()) throw DomainError("no evaluation windows");
  if (configs.empty()) throw DomainError("no measures given");
  RollingEvaluation out;
  out.rows.resize(windows.size());
  parallel_for(static_cast<std::int64_t>(windows.size()), workers,
               [&](std::int64_t i) {
                 const WindowSplit& w = windows[static_cast<std::size_t>(i)];
                 WindowRow& row = out.rows[static_cast<std::size_t>(i)];
                 row.window = w;
                 row.label = std::to_string(w.in_range.lo.year) + "-" +
                             std::to_string(w.out_range.hi.year);
                 const Dataset d_in = slice_by_interval(d, w.in_range);
                 const Dataset d_out = slice_by_interval(d, w.out_range);
                 for (const auto& cfg : configs) {
                   row.in_reports.push_back(
                       explanatory_power(d_in, cfg, row.label));
                   row.out_reports.push_back(
                       predictive_power(d_in, d_out, cfg, row.label));
                 }
               });
  for (std::size_t c = 0; c < configs.size(); ++c) {
    Eigen::ArrayXd etas_in(static_cast<Eigen::Index>(out.rows.size()));
    Eigen::ArrayXd etas_out(static_cast<Eigen::Index>(out.rows.size()));
    for (std::size_t i = 0; i < out.rows.size(); ++i) {
      etas_in(static_cast<Eigen::Index>(i)) = out.rows[i].in_reports[c].eta;
      etas_out(static_cast<Eigen::Index>(i)) = out.rows[i].out_reports[c].eta;
    }
    RollingSummary s;
    s.measure = configs[c].measure;
    s.mean_eta_in = etas_in.mean();
    s.mean_eta_out = etas_out.mean();
    auto rel_dev = [&](const Eigen::ArrayXd& e, double mean) {
      if (e.size() < 2 || mean == 0.0) return 0.0;
      return stats::sample_stddev(e) / mean;
    };
    s.rel_dev_in = rel_dev(etas_in, s.mean_eta_in);
    s.rel_dev_out = rel_dev(etas_out, s.mean_eta_out);
    out.summary.push_back(s);
  }
  return out;
}

BootstrapReport bootstrap_compare(const Eigen::MatrixXd& risks,
                                  const Eigen::ArrayXd& targets,
                                  const std::vector<MeasureConfig>& configs,
                                  int iterations, int drop_count,
                                  std::uint64_t seed, int workers) {
  if (configs.empty()) throw DomainError("no measures given");
  if (risks.cols() != static_cast<Eigen::Index>(configs.size()))
    throw DomainError("risk matrix has " + std::to_string(risks.cols()) +
                      " columns for " + std::to_string(configs.size()) +
                      " measures");
  if (risks.rows() != targets.size())
    throw DomainError("risk matrix and premium vector lengths differ");
  if (iterations < 1) throw DomainError("need at least 1 iteration");
  if (drop_count < 0) throw DomainError("drop count must be >= 0");
  const auto l = risks.rows();
  if (l - drop_count < 3)
    throw DomainError("drop count too large: " + std::to_string(drop_count) +
                      " of " + std::to_string(l) +
                      " leaves fewer than 3 securities");

  const auto n_cfg = static_cast<Eigen::Index>(configs.size());
  BootstrapReport rep;
  rep.iterations = iterations;
  rep.drop_count = drop_count;
  rep.configs = configs;
  rep.r2.resize(iterations, n_cfg);
  const auto keep = l - drop_count;
  parallel_for(iterations, workers, [&](std::int64_t it) {
    rng::SplitMix64 g(rng::derive(seed, static_cast<std::uint64_t>(it), 0,
                                  kBootstrapRole));
    const auto dropped = rng::sample_indices(
        static_cast<std::uint32_t>(drop_count), static_cast<std::uint32_t>(l),
        g);
    std::vector<char> is_dropped(static_cast<std::size_t>(l), 0);
    for (auto i : dropped) is_dropped[i] = 1;
    Eigen::ArrayXd v(keep);
    Eigen::ArrayXd u(keep);
    for (Eigen::Index c = 0; c < n_cfg; ++c) {
      Eigen::Index row = 0;
      for (Eigen::Index i = 0; i < l; ++i) {
        if (is_dropped[static_cast<std::size_t>(i)]) continue;
        u(row) = risks(i, c);
        v(row) = targets(i);
        ++row;
      }
      rep.r2(it, c) = ols_fit(u, v).r_squared;
    }
  });

  for (std::size_t a = 0; a < configs.size(); ++a) {
    for (std::size_t b = a + 1; b < configs.size(); ++b) {
      BootstrapComparison cmp;
      cmp.measure_a = configs[a].measure;
      cmp.measure_b = configs[b].measure;
      cmp.config_a = a;
      cmp.config_b = b;
      if (iterations < 2) {
        cmp.degenerate = true;
        cmp.significance = "none";
        cmp.t = cmp.df = cmp.p = std::numeric_limits<double>::quiet_NaN();
      } else {
        const auto r = stats::welch_t_test(
            rep.r2.col(static_cast<Eigen::Index>(a)).array(),
            rep.r2.col(static_cast<Eigen::Index>(b)).array());
        cmp.degenerate = r.degenerate;
        if (r.degenerate) {
          cmp.t = cmp.df = cmp.p = std::numeric_limits<double>::quiet_NaN();
          cmp.significance = "none";
        } else {
          cmp.t = r.t;
          cmp.df = r.df;
          cmp.p = r.p;
          cmp.significance = significance_label(r.p, false);
        }
      }
      rep.comparisons.push_back(cmp);
    }
  }
  return rep;
}

BootstrapReport bootstrap_compare(const Dataset& d,
                                  const std::vector<MeasureConfig>& configs,
                                  int iterations, int drop_count,
                                  std::uint64_t seed, int workers) {
  if (configs.empty()) throw DomainError("no measures given");
  // Per-security risks and targets do not depend on which other securities
  // survive, so estimate them once; each iteration is then a subset
  // regression.
  const auto n_cfg = static_cast<Eigen::Index>(configs.size());
  Eigen::MatrixXd risks(d.n_securities(), n_cfg);
  for (Eigen::Index c = 0; c < n_cfg; ++c)
    risks.col(c) = risk_vector(d, configs[static_cast<std::size_t>(c)]);
  return bootstrap_compare(risks, premium_means(d), configs, iterations,
                           drop_count, seed, workers);
}

RegimeEvaluation regime_evaluation(const Dataset& d,
                                   const RegimeCalendar& calendar,
                                   const std::vector<MeasureConfig>& configs) {
  if (configs.empty()) throw DomainError("no measures given");
  const Dataset bull = filter_by_regime(d, calendar, Regime::Bull);
  const Dataset bear = filter_by_regime(d, calendar, Regime::Bear);
  if (bull.n_days() == 0) throw DomainError("empty regime sample: bull");
  if (bear.n_days() == 0) throw DomainError("empty regime sample: bear");
  RegimeEvaluation out;
  for (const auto& cfg : configs) {
    out.bull.push_back(explanatory_power(bull, cfg, "bull"));
    out.bear.push_back(explanatory_power(bear, cfg, "bear"));
  }
  return out;
}

}  // namespace entrorisk
