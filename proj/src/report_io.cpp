#include "entrorisk/report_io.hpp"

#include <fstream>

#include "entrorisk/csv.hpp"
#include "entrorisk/errors.hpp"
#include "entrorisk/version.hpp"

namespace entrorisk {

namespace {

using csv::format_double;

std::string header_block(const std::vector<std::string>& comments) {
  std::string out;
  for (const auto& line : comments) {
    out += "# ";
    out += line;
    out += "\n";
  }
  return out;
}

}  // namespace

std::vector<std::string> config_comment_lines(const std::string& command,
                                              const ConfigEcho& config) {
  std::vector<std::string> lines;
  lines.push_back(std::string(kToolName) + " " + kToolVersion + " " + command);
  for (const auto& [key, value] : config) lines.push_back(key + "=" + value);
  return lines;
}

nlohmann::ordered_json report_entry_json(const EvaluationReport& rep) {
  nlohmann::ordered_json j;
  j["measure"] = measure_name(rep.measure);
  j["sample"] = rep.sample_label;
  j["direction"] = rep.out_of_sample ? "out" : "in";
  j["eta"] = rep.eta;
  j["a0"] = rep.fit.a0;
  j["a1"] = rep.fit.a1;
  j["p_a0"] = rep.fit.p_a0;
  j["p_a1"] = rep.fit.p_a1;
  j["n"] = rep.fit.n_points;
  return j;
}

nlohmann::ordered_json bootstrap_json(const BootstrapReport& rep) {
  nlohmann::ordered_json j;
  j["iterations"] = rep.iterations;
  j["drop_count"] = rep.drop_count;
  auto comparisons = nlohmann::ordered_json::array();
  for (const auto& cmp : rep.comparisons) {
    nlohmann::ordered_json c;
    c["measure_a"] = measure_name(cmp.measure_a);
    c["measure_b"] = measure_name(cmp.measure_b);
    c["t"] = cmp.t;
    c["df"] = cmp.df;
    c["p"] = cmp.p;
    c["significance"] = cmp.significance;
    c["degenerate"] = cmp.degenerate;
    comparisons.push_back(std::move(c));
  }
  j["comparisons"] = std::move(comparisons);
  return j;
}

nlohmann::ordered_json evaluation_json(
    const std::string& command, const ConfigEcho& config,
    const std::vector<EvaluationReport>& reports,
    const RollingEvaluation* rolling, const BootstrapReport* bootstrap) {
  nlohmann::ordered_json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = command;
  nlohmann::ordered_json cfg;
  for (const auto& [key, value] : config) cfg[key] = value;
  j["config"] = std::move(cfg);
  auto entries = nlohmann::ordered_json::array();
  for (const auto& rep : reports) entries.push_back(report_entry_json(rep));
  j["reports"] = std::move(entries);
  if (rolling != nullptr) {
    nlohmann::ordered_json r;
    auto windows = nlohmann::ordered_json::array();
    for (const auto& row : rolling->rows) {
      for (const auto& rep : row.in_reports)
        windows.push_back(report_entry_json(rep));
      for (const auto& rep : row.out_reports)
        windows.push_back(report_entry_json(rep));
    }
    r["windows"] = std::move(windows);
    auto summary = nlohmann::ordered_json::array();
    for (const auto& s : rolling->summary) {
      nlohmann::ordered_json e;
      e["measure"] = measure_name(s.measure);
      e["mean_eta_in"] = s.mean_eta_in;
      e["mean_eta_out"] = s.mean_eta_out;
      e["rel_dev_in"] = s.rel_dev_in;
      e["rel_dev_out"] = s.rel_dev_out;
      summary.push_back(std::move(e));
    }
    r["summary"] = std::move(summary);
    j["rolling"] = std::move(r);
  }
  if (bootstrap != nullptr) j["bootstrap"] = bootstrap_json(*bootstrap);
  return j;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

namespace {

void append_report_row(std::string& out, const std::string& window,
                       const EvaluationReport& rep) {
  out += window;
  out += rep.out_of_sample ? ",out," : ",in,";
  out += measure_name(rep.measure);
  out += ',';
  out += format_double(rep.eta);
  out += ',';
  out += format_double(rep.fit.a0);
  out += ',';
  out += format_double(rep.fit.a1);
  out += ',';
  out += format_double(rep.fit.p_a0);
  out += ',';
  out += format_double(rep.fit.p_a1);
  out += ',';
  out += std::to_string(rep.fit.n_points);
  out += '\n';
}

}  // namespace

std::string rolling_csv(const RollingEvaluation& rolling,
                        const std::vector<std::string>& comments) {
  std::string out = header_block(comments);
  out += "window,direction,measure,eta,a0,a1,p_a0,p_a1,n\n";
  for (const auto& row : rolling.rows) {
    for (const auto& rep : row.in_reports)
      append_report_row(out, row.label, rep);
    for (const auto& rep : row.out_reports)
      append_report_row(out, row.label, rep);
  }
  for (const auto& s : rolling.summary) {
    out += "summary_mean,in,";
    out += measure_name(s.measure);
    out += ',';
    out += format_double(s.mean_eta_in);
    out += ",,,,,\n";
    out += "summary_mean,out,";
    out += measure_name(s.measure);
    out += ',';
    out += format_double(s.mean_eta_out);
    out += ",,,,,\n";
    out += "summary_rel_dev,in,";
    out += measure_name(s.measure);
    out += ',';
    out += format_double(s.rel_dev_in);
    out += ",,,,,\n";
    out += "summary_rel_dev,out,";
    out += measure_name(s.measure);
    out += ',';
    out += format_double(s.rel_dev_out);
    out += ",,,,,\n";
  }
  return out;
}

std::string bootstrap_csv(const BootstrapReport& rep,
                          const std::vector<std::string>& comments) {
  std::string out = header_block(comments);
  out += "iteration";
  // Duplicate measures (same measure, different backend) get an index suffix
  // so columns stay distinct.
  std::vector<std::string> names;
  for (std::size_t c = 0; c < rep.configs.size(); ++c) {
    std::string name = measure_name(rep.configs[c].measure);
    int repeats = 0;
    for (std::size_t k = 0; k < c; ++k)
      if (measure_name(rep.configs[k].measure) == name) ++repeats;
    if (repeats > 0) name += "_" + std::to_string(repeats + 1);
    names.push_back(name);
    out += ',';
    out += name;
  }
  out += '\n';
  for (Eigen::Index i = 0; i < rep.r2.rows(); ++i) {
    out += std::to_string(i + 1);
    for (Eigen::Index c = 0; c < rep.r2.cols(); ++c) {
      out += ',';
      out += format_double(rep.r2(i, c));
    }
    out += '\n';
  }
  return out;
}

std::string curves_csv(const std::vector<DiversificationCurve>& curves,
                       const std::vector<std::string>& comments) {
  std::string out = header_block(comments);
  out += "measure,size,mean_risk,reduction\n";
  for (const auto& curve : curves) {
    for (std::size_t k = 0; k < curve.sizes.size(); ++k) {
      out += measure_name(curve.measure);
      out += ',';
      out += std::to_string(curve.sizes[k]);
      out += ',';
      out += format_double(curve.mean_risk[k]);
      out += ',';
      out += format_double(curve.reduction[k]);
      out += '\n';
    }
  }
  return out;
}

std::string scatter_csv(const std::vector<ScatterRow>& rows,
                        const std::vector<std::string>& comments) {
  std::string out = header_block(comments);
  out += "measure,size,risk,mean_premium\n";
  for (const auto& row : rows) {
    out += measure_name(row.measure);
    out += ',';
    out += std::to_string(row.size);
    out += ',';
    out += format_double(row.risk);
    out += ',';
    out += format_double(row.mean_premium);
    out += '\n';
  }
  return out;
}

std::string risk_table_csv(const Dataset& d,
                           const std::vector<MeasureConfig>& configs,
                           const std::vector<Eigen::ArrayXd>& risk_columns,
                           const std::vector<std::string>& comments) {
  if (configs.size() != risk_columns.size())
    throw DomainError("risk table: config/column count mismatch");
  std::string out = header_block(comments);
  out += "security_id";
  for (const auto& cfg : configs) {
    out += ',';
    out += measure_name(cfg.measure);
  }
  out += '\n';
  for (Eigen::Index i = 0; i < d.n_securities(); ++i) {
    out += d.security_ids[static_cast<std::size_t>(i)];
    for (const auto& col : risk_columns) {
      out += ',';
      out += format_double(col(i));
    }
    out += '\n';
  }
  return out;
}

}  // namespace entrorisk
