#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "entrorisk/evaluation.hpp"
#include "entrorisk/portfolio.hpp"

namespace entrorisk {

// Resolved configuration as ordered key/value pairs; echoed into every
// output so a run can be reproduced from its artifacts alone.
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

// "# tool version" + "# key=value" lines for CSV headers.
std::vector<std::string> config_comment_lines(const std::string& command,
                                              const ConfigEcho& config);

nlohmann::ordered_json report_entry_json(const EvaluationReport& rep);
nlohmann::ordered_json bootstrap_json(const BootstrapReport& rep);

// Evaluation summary document: tool/version/config plus a "reports" array
// (fields measure, sample, direction, eta, a0, a1, p_a0, p_a1, n), an
// optional "rolling" summary and an optional "bootstrap" section (fields t,
// df, p, significance per comparison).
nlohmann::ordered_json evaluation_json(
    const std::string& command, const ConfigEcho& config,
    const std::vector<EvaluationReport>& reports,
    const RollingEvaluation* rolling, const BootstrapReport* bootstrap);

void write_text_file(const std::filesystem::path& path,
                     const std::string& content);

// window,direction,measure,eta,a0,a1,p_a0,p_a1,n rows for every rolling
// window, then summary_mean / summary_rel_dev rows per measure.
std::string rolling_csv(const RollingEvaluation& rolling,
                        const std::vector<std::string>& comments);

// iteration,<one column per measure config> of bootstrap R² samples.
std::string bootstrap_csv(const BootstrapReport& rep,
                          const std::vector<std::string>& comments);

// measure,size,mean_risk,reduction rows.
std::string curves_csv(const std::vector<DiversificationCurve>& curves,
                       const std::vector<std::string>& comments);

// measure,size,risk,mean_premium rows.
std::string scatter_csv(const std::vector<ScatterRow>& rows,
                        const std::vector<std::string>& comments);

// security_id,stddev,beta,entropy_shannon,entropy_renyi rows.
std::string risk_table_csv(const Dataset& d,
                           const std::vector<MeasureConfig>& configs,
                           const std::vector<Eigen::ArrayXd>& risk_columns,
                           const std::vector<std::string>& comments);

}  // namespace entrorisk
