// Command-line front end: synthetic panel generation, per-security risk
// tables, diversification curves, and the evaluation protocol, all emitting
// plot-ready CSV/JSON with a resolved-config header. Exit codes: 0 success,
// 1 degenerate data / estimation failure, 2 usage or file error.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "entrorisk/csv.hpp"
#include "entrorisk/data.hpp"
#include "entrorisk/errors.hpp"
#include "entrorisk/evaluation.hpp"
#include "entrorisk/portfolio.hpp"
#include "entrorisk/report_io.hpp"
#include "entrorisk/rng.hpp"
#include "entrorisk/version.hpp"

namespace {

using namespace entrorisk;

constexpr std::uint64_t kSynthParamRole = 4;

struct PanelOpts {
  std::string panel;
  std::string market_col = "MKT";
  std::string rf_col = "RF";

  Dataset load() const { return load_dataset(panel, market_col, rf_col); }
  void echo(ConfigEcho& cfg) const {
    cfg.emplace_back("panel", panel);
    cfg.emplace_back("market-col", market_col);
    cfg.emplace_back("rf-col", rf_col);
  }
};

struct EstimatorOpts {
  std::string backend = "histogram";
  int bins_shannon = 175;
  int bins_renyi = 50;
  double bandwidth = 0.0;
  int order = 0;
  int quad_points = 4096;

  MeasureConfig config_for(Measure m) const {
    MeasureConfig cfg;
    cfg.measure = m;
    cfg.backend = density_method_from_name(backend);
    cfg.bins = m == Measure::EntropyRenyi ? bins_renyi : bins_shannon;
    cfg.bandwidth = bandwidth;
    cfg.order = order;
    cfg.quad_points = quad_points;
    return cfg;
  }
  std::vector<MeasureConfig> configs_for(
      const std::vector<std::string>& names) const {
    std::vector<MeasureConfig> out;
    out.reserve(names.size());
    for (const auto& name : names)
      out.push_back(config_for(measure_from_name(name)));
    return out;
  }
  void echo(ConfigEcho& cfg) const {
    cfg.emplace_back("backend", backend);
    cfg.emplace_back("bins-shannon", std::to_string(bins_shannon));
    cfg.emplace_back("bins-renyi", std::to_string(bins_renyi));
    cfg.emplace_back("bandwidth", csv::format_double(bandwidth));
    cfg.emplace_back("order", std::to_string(order));
    cfg.emplace_back("quad-points", std::to_string(quad_points));
  }
};

void add_estimator_flags(CLI::App* cmd, EstimatorOpts& opts) {
  cmd->add_option("--backend", opts.backend, "density backend")
      ->check(CLI::IsMember(
          {"histogram", "kernel", "spacing_simple", "spacing_correa"}))
      ->capture_default_str();
  cmd->add_option("--bins-shannon", opts.bins_shannon,
                  "histogram bins for order-1 entropy")
      ->check(CLI::Range(2, 1000000))
      ->capture_default_str();
  cmd->add_option("--bins-renyi", opts.bins_renyi,
                  "histogram bins for order-2 entropy")
      ->check(CLI::Range(2, 1000000))
      ->capture_default_str();
  cmd->add_option("--bandwidth", opts.bandwidth,
                  "kernel bandwidth (0 = Silverman rule)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--order", opts.order,
                  "spacing block order (0 = ceil(n/bins))")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--quad-points", opts.quad_points,
                  "trapezoid points for kernel-backend entropy")
      ->check(CLI::Range(16, 10000000))
      ->capture_default_str();
}

void add_panel_flags(CLI::App* cmd, PanelOpts& opts) {
  cmd->add_option("--panel", opts.panel, "input panel CSV")
      ->required();
  cmd->add_option("--market-col", opts.market_col, "market column name")
      ->capture_default_str();
  cmd->add_option("--rf-col", opts.rf_col, "risk-free column name")
      ->capture_default_str();
}

// ---- synth -----------------------------------------------------------------

struct SynthOpts {
  int securities = 150;
  int days = 2520;
  std::uint64_t seed = 7;
  double market_vol = 0.01;
  double market_drift = 0.0003;
  double rf = 0.0;
  double beta_min = 0.5;
  double beta_max = 1.5;
  double idio_min = 0.005;
  double idio_max = 0.02;
  std::string start_date = "1985-01-01";
  std::string out;
};

int run_synth(const SynthOpts& o) {
  if (o.beta_max < o.beta_min || o.idio_max < o.idio_min)
    throw DomainError("parameter ranges must satisfy min <= max");
  SyntheticSpec spec;
  spec.n_securities = o.securities;
  spec.n_days = o.days;
  spec.market_vol = o.market_vol;
  spec.market_drift = o.market_drift;
  spec.risk_free_rate = o.rf;
  spec.start_date = parse_date(o.start_date);
  spec.seed = o.seed;
  spec.betas.resize(o.securities);
  spec.idio_vols.resize(o.securities);
  for (int i = 0; i < o.securities; ++i) {
    rng::SplitMix64 gb(rng::derive(o.seed, static_cast<std::uint64_t>(i), 0,
                                   kSynthParamRole));
    rng::SplitMix64 gi(rng::derive(o.seed, static_cast<std::uint64_t>(i), 1,
                                   kSynthParamRole));
    spec.betas(i) = o.beta_min + gb.unit() * (o.beta_max - o.beta_min);
    spec.idio_vols(i) = o.idio_min + gi.unit() * (o.idio_max - o.idio_min);
  }
  const Dataset d = generate_synthetic(spec);

  ConfigEcho cfg;
  cfg.emplace_back("securities", std::to_string(o.securities));
  cfg.emplace_back("days", std::to_string(o.days));
  cfg.emplace_back("seed", std::to_string(o.seed));
  cfg.emplace_back("market-vol", csv::format_double(o.market_vol));
  cfg.emplace_back("market-drift", csv::format_double(o.market_drift));
  cfg.emplace_back("rf", csv::format_double(o.rf));
  cfg.emplace_back("beta-min", csv::format_double(o.beta_min));
  cfg.emplace_back("beta-max", csv::format_double(o.beta_max));
  cfg.emplace_back("idio-min", csv::format_double(o.idio_min));
  cfg.emplace_back("idio-max", csv::format_double(o.idio_max));
  cfg.emplace_back("start-date", o.start_date);
  save_dataset_csv(d, o.out, config_comment_lines("synth", cfg));
  return 0;
}

// ---- risk ------------------------------------------------------------------

int run_risk(const PanelOpts& panel, const EstimatorOpts& est,
             const std::string& out) {
  const Dataset d = panel.load();
  const std::vector<MeasureConfig> configs = est.configs_for(
      {"stddev", "beta", "entropy_shannon", "entropy_renyi"});
  std::vector<Eigen::ArrayXd> columns;
  columns.reserve(configs.size());
  for (const auto& cfg : configs) columns.push_back(risk_vector(d, cfg));
  ConfigEcho cfg;
  panel.echo(cfg);
  est.echo(cfg);
  write_text_file(
      out, risk_table_csv(d, configs, columns,
                          config_comment_lines("risk", cfg)));
  return 0;
}

// ---- diversify -------------------------------------------------------------

struct DiversifyOpts {
  std::vector<int> sizes = {1, 2, 5, 10, 20, 50};
  std::int64_t max_per_size = 10000;
  std::vector<std::string> measures = {"stddev", "entropy_shannon",
                                       "entropy_renyi"};
  std::uint64_t seed = 7;
  int workers = 1;
  std::string out;
};

int run_diversify(const PanelOpts& panel, const EstimatorOpts& est,
                  const DiversifyOpts& o) {
  const Dataset d = panel.load();
  const auto configs = est.configs_for(o.measures);
  const auto curves = diversification_curve(d, o.sizes, o.max_per_size,
                                            configs, o.seed, o.workers);
  ConfigEcho cfg;
  panel.echo(cfg);
  std::string joined_measures;
  for (const auto& m : o.measures) {
    if (!joined_measures.empty()) joined_measures += ' ';
    joined_measures += m;
  }
  cfg.emplace_back("measures", joined_measures);
  std::string joined_sizes;
  for (int s : o.sizes) {
    if (!joined_sizes.empty()) joined_sizes += ' ';
    joined_sizes += std::to_string(s);
  }
  cfg.emplace_back("sizes", joined_sizes);
  cfg.emplace_back("max-per-size", std::to_string(o.max_per_size));
  cfg.emplace_back("seed", std::to_string(o.seed));
  est.echo(cfg);
  write_text_file(o.out,
                  curves_csv(curves, config_comment_lines("diversify", cfg)));
  return 0;
}

// ---- evaluate --------------------------------------------------------------

struct EvaluateOpts {
  std::vector<std::string> measures = {"stddev", "beta", "entropy_shannon",
                                       "entropy_renyi"};
  std::string regimes;
  bool rolling = false;
  int window_years = 10;
  int in_years = 5;
  int bootstrap = 0;
  int drop = 25;
  std::uint64_t seed = 7;
  int workers = 1;
  std::string out;
};

int run_evaluate(const PanelOpts& panel, const EstimatorOpts& est,
                 const EvaluateOpts& o) {
  const Dataset d = panel.load();
  const auto configs = est.configs_for(o.measures);

  ConfigEcho cfg;
  panel.echo(cfg);
  std::string joined_measures;
  for (const auto& m : o.measures) {
    if (!joined_measures.empty()) joined_measures += ' ';
    joined_measures += m;
  }
  cfg.emplace_back("measures", joined_measures);
  est.echo(cfg);
  cfg.emplace_back("seed", std::to_string(o.seed));
  cfg.emplace_back("regimes", o.regimes);
  cfg.emplace_back("rolling", o.rolling ? "1" : "0");
  cfg.emplace_back("window-years", std::to_string(o.window_years));
  cfg.emplace_back("in-years", std::to_string(o.in_years));
  cfg.emplace_back("bootstrap", std::to_string(o.bootstrap));
  cfg.emplace_back("drop", std::to_string(o.drop));

  std::vector<EvaluationReport> reports;
  for (const auto& c : configs)
    reports.push_back(explanatory_power(d, c, "full"));
  if (!o.regimes.empty()) {
    const RegimeCalendar calendar = load_regime_calendar(o.regimes);
    const RegimeEvaluation regimes = regime_evaluation(d, calendar, configs);
    reports.insert(reports.end(), regimes.bull.begin(), regimes.bull.end());
    reports.insert(reports.end(), regimes.bear.begin(), regimes.bear.end());
  }

  RollingEvaluation rolling;
  const bool have_rolling = o.rolling;
  if (have_rolling) {
    const auto windows = rolling_windows(d, o.window_years, o.in_years);
    rolling = rolling_evaluation(d, windows, configs, o.workers);
  }

  BootstrapReport bootstrap;
  const bool have_bootstrap = o.bootstrap > 0;
  if (have_bootstrap)
    bootstrap =
        bootstrap_compare(d, configs, o.bootstrap, o.drop, o.seed, o.workers);

  const auto comments = config_comment_lines("evaluate", cfg);
  const nlohmann::ordered_json doc = evaluation_json(
      "evaluate", cfg, reports, have_rolling ? &rolling : nullptr,
      have_bootstrap ? &bootstrap : nullptr);
  write_text_file(o.out + ".json", doc.dump(2) + "\n");
  if (have_rolling)
    write_text_file(o.out + "_rolling.csv", rolling_csv(rolling, comments));
  if (have_bootstrap)
    write_text_file(o.out + "_bootstrap.csv",
                    bootstrap_csv(bootstrap, comments));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(kToolName) +
               " — entropy-based risk estimation toolkit"};
  app.set_version_flag("--version", std::string(kToolVersion));
  const char* env_config = std::getenv("ENTRORISK_CONFIG");
  app.set_config("--config", env_config ? env_config : "",
                 "config file (INI; sections per subcommand)");
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic panel CSV");
  SynthOpts so;
  synth->add_option("--securities", so.securities, "number of securities")
      ->check(CLI::Range(1, 100000))
      ->capture_default_str();
  synth->add_option("--days", so.days, "number of trading days")
      ->check(CLI::Range(2, 10000000))
      ->capture_default_str();
  synth->add_option("--seed", so.seed, "master seed")->capture_default_str();
  synth->add_option("--market-vol", so.market_vol, "daily market volatility")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth->add_option("--market-drift", so.market_drift,
                    "daily market premium drift")
      ->capture_default_str();
  synth->add_option("--rf", so.rf, "constant daily risk-free rate")
      ->capture_default_str();
  synth->add_option("--beta-min", so.beta_min, "factor loading lower bound")
      ->capture_default_str();
  synth->add_option("--beta-max", so.beta_max, "factor loading upper bound")
      ->capture_default_str();
  synth->add_option("--idio-min", so.idio_min,
                    "idiosyncratic volatility lower bound")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  synth->add_option("--idio-max", so.idio_max,
                    "idiosyncratic volatility upper bound")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  synth->add_option("--start-date", so.start_date, "first calendar day")
      ->capture_default_str();
  synth->add_option("--out", so.out, "output CSV path")->required();

  // risk
  auto* risk = app.add_subcommand("risk", "per-security risk table");
  PanelOpts risk_panel;
  EstimatorOpts risk_est;
  std::string risk_out;
  add_panel_flags(risk, risk_panel);
  add_estimator_flags(risk, risk_est);
  risk->add_option("--out", risk_out, "output CSV path")->required();

  // diversify
  auto* diversify =
      app.add_subcommand("diversify", "diversification curve CSV");
  PanelOpts div_panel;
  EstimatorOpts div_est;
  DiversifyOpts dv;
  add_panel_flags(diversify, div_panel);
  add_estimator_flags(diversify, div_est);
  diversify->add_option("--sizes", dv.sizes, "portfolio sizes")
      ->delimiter(',')
      ->capture_default_str();
  diversify
      ->add_option("--max-per-size", dv.max_per_size,
                   "portfolios per size (cap)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  diversify->add_option("--measures", dv.measures, "measures to average")
      ->delimiter(',')
      ->capture_default_str();
  diversify->add_option("--seed", dv.seed, "master seed")
      ->capture_default_str();
  diversify->add_option("--workers", dv.workers, "worker threads")
      ->check(CLI::Range(1, 1024))
      ->capture_default_str();
  diversify->add_option("--out", dv.out, "output CSV path")->required();

  // evaluate
  auto* evaluate = app.add_subcommand(
      "evaluate", "cross-sectional evaluation report (JSON + CSV)");
  PanelOpts eval_panel;
  EstimatorOpts eval_est;
  EvaluateOpts ev;
  add_panel_flags(evaluate, eval_panel);
  add_estimator_flags(evaluate, eval_est);
  evaluate->add_option("--measures", ev.measures, "measures to evaluate")
      ->delimiter(',')
      ->capture_default_str();
  evaluate->add_option("--regimes", ev.regimes,
                       "bull/bear calendar CSV (start,end,label)");
  evaluate->add_flag("--rolling", ev.rolling,
                     "rolling in/out-of-sample windows");
  evaluate
      ->add_option("--window-years", ev.window_years, "window length, years")
      ->check(CLI::Range(2, 100))
      ->capture_default_str();
  evaluate->add_option("--in-years", ev.in_years, "fit years per window")
      ->check(CLI::Range(1, 99))
      ->capture_default_str();
  evaluate
      ->add_option("--bootstrap", ev.bootstrap,
                   "bootstrap iterations (0 = off)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  evaluate->add_option("--drop", ev.drop, "securities dropped per iteration")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  evaluate->add_option("--seed", ev.seed, "master seed")
      ->capture_default_str();
  evaluate->add_option("--workers", ev.workers, "worker threads")
      ->check(CLI::Range(1, 1024))
      ->capture_default_str();
  evaluate->add_option("--out", ev.out, "output path prefix")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*synth) return run_synth(so);
    if (*risk) return run_risk(risk_panel, risk_est, risk_out);
    if (*diversify) return run_diversify(div_panel, div_est, dv);
    if (*evaluate) return run_evaluate(eval_panel, eval_est, ev);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
