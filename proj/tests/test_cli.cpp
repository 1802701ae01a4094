#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "entrorisk/data.hpp"

#ifndef ENTRORISK_CLI_PATH
#error "ENTRORISK_CLI_PATH must point at the built binary"
#endif

using namespace entrorisk;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string err;
};

fs::path work_dir() {
  const fs::path p = fs::temp_directory_path() / "entrorisk_cli_tests";
  fs::create_directories(p);
  return p;
}

RunResult run(const std::string& args, const std::string& env = "") {
  const fs::path errfile = work_dir() / "stderr.txt";
  std::string cmd = env;
  if (!env.empty()) cmd += " ";
  cmd += std::string(ENTRORISK_CLI_PATH) + " " + args + " 2>" +
         errfile.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream f(errfile);
  std::ostringstream ss;
  ss << f.rdbuf();
  r.err = ss.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int count_lines(const std::string& s, bool data_only) {
  std::istringstream in(s);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    if (data_only && (line.empty() || line[0] == '#')) continue;
    ++n;
  }
  return n;
}

// A small panel most tests share.
fs::path shared_panel() {
  static fs::path p = [] {
    const fs::path out = work_dir() / "panel.csv";
    const RunResult r =
        run("synth --securities 20 --days 300 --seed 5 --out " + out.string());
    REQUIRE(r.code == 0);
    return out;
  }();
  return p;
}

}  // namespace

TEST_CASE("version and usage errors") {
  CHECK(run("--version").code == 0);
  CHECK(run("").code == 2);                      // a subcommand is required
  CHECK(run("risk --panel x.csv").code == 2);    // --out missing
  CHECK(run("frobnicate").code == 2);            // unknown subcommand
  CHECK(run("synth --days -3 --out x.csv").code == 2);
  CHECK(run("risk --panel nope.csv --out o.csv").code == 2);  // missing file
}

TEST_CASE("synthetic panels are reproducible CSV") {
  const fs::path a = work_dir() / "synth_a.csv";
  const fs::path b = work_dir() / "synth_b.csv";
  const fs::path c = work_dir() / "synth_c.csv";
  CHECK(run("synth --securities 12 --days 80 --seed 3 --out " + a.string())
            .code == 0);
  CHECK(run("synth --securities 12 --days 80 --seed 3 --out " + b.string())
            .code == 0);
  CHECK(run("synth --securities 12 --days 80 --seed 4 --out " + c.string())
            .code == 0);
  const std::string bytes_a = slurp(a);
  CHECK(bytes_a == slurp(b));
  CHECK(bytes_a != slurp(c));
  CHECK(bytes_a.rfind("# entrorisk 1.0.0 synth", 0) == 0);

  const Dataset d = load_dataset(a);
  CHECK(d.n_securities() == 12);
  CHECK(d.n_days() == 80);
  CHECK(d.security_ids.front() == "S001");
}

TEST_CASE("risk tables cover the four measures") {
  const fs::path out = work_dir() / "risk.csv";
  const RunResult r = run("risk --panel " + shared_panel().string() +
                          " --out " + out.string());
  REQUIRE(r.code == 0);
  const std::string body = slurp(out);
  CHECK(body.find("security_id,stddev,beta,entropy_shannon,entropy_renyi") !=
        std::string::npos);
  CHECK(count_lines(body, true) == 21);  // header + 20 securities
  CHECK(body.find("backend=histogram") != std::string::npos);
  CHECK(body.find("bins-shannon=175") != std::string::npos);
  CHECK(body.find("workers") == std::string::npos);

  const fs::path out2 = work_dir() / "risk2.csv";
  REQUIRE(run("risk --panel " + shared_panel().string() + " --out " +
              out2.string())
              .code == 0);
  CHECK(slurp(out2) == body);

  // Alternate backends flow through the same table.
  const fs::path kout = work_dir() / "risk_kernel.csv";
  const RunResult kr = run("risk --panel " + shared_panel().string() +
                           " --backend kernel --out " + kout.string());
  REQUIRE(kr.code == 0);
  CHECK(slurp(kout) != body);
  CHECK(run("risk --panel " + shared_panel().string() +
            " --backend parzen --out x.csv")
            .code == 2);  // rejected at flag validation
}

TEST_CASE("degenerate panels exit with the estimation code") {
  const fs::path p = work_dir() / "flat.csv";
  std::ofstream f(p);
  f << "date,AAA,BBB,CCC,MKT,RF\n";
  Date day{1991, 1, 1};
  for (int t = 0; t < 30; ++t) {
    if (!is_weekday(day)) day = next_weekday(day);
    f << to_string(day) << ",0.01,0.01,0.01,0.01,0\n";
    day = next_weekday(day);
  }
  f.close();
  const RunResult r =
      run("risk --panel " + p.string() + " --out " +
          (work_dir() / "flat_out.csv").string());
  CHECK(r.code == 1);
  CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("diversification curves are worker-independent") {
  const fs::path one = work_dir() / "curves1.csv";
  const fs::path four = work_dir() / "curves4.csv";
  const std::string base = "diversify --panel " + shared_panel().string() +
                           " --sizes 1,2,5 --max-per-size 60 --seed 11";
  REQUIRE(run(base + " --workers 1 --out " + one.string()).code == 0);
  REQUIRE(run(base + " --workers 4 --out " + four.string()).code == 0);
  const std::string body = slurp(one);
  CHECK(body == slurp(four));
  CHECK(body.find("measure,size,mean_risk,reduction") != std::string::npos);
  CHECK(count_lines(body, true) == 1 + 3 * 3);  // header + 3 measures x 3 sizes
  CHECK(body.find("stddev,1,") != std::string::npos);
  CHECK(body.find("entropy_renyi,5,") != std::string::npos);
}

TEST_CASE("evaluation emits a full JSON report") {
  const fs::path prefix = work_dir() / "eval_plain";
  const RunResult r = run("evaluate --panel " + shared_panel().string() +
                          " --out " + prefix.string());
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(slurp(prefix.string() + ".json"));
  CHECK(doc["tool"] == "entrorisk");
  CHECK(doc["version"] == "1.0.0");
  CHECK(doc["command"] == "evaluate");
  CHECK(doc["config"].is_object());
  CHECK(doc["config"]["backend"] == "histogram");
  CHECK_FALSE(doc["config"].contains("workers"));
  CHECK_FALSE(doc["config"].contains("out"));
  REQUIRE(doc["reports"].size() == 4);
  for (const auto& rep : doc["reports"]) {
    CHECK(rep["sample"] == "full");
    CHECK(rep["direction"] == "in");
    const double eta = rep["eta"].get<double>();
    CHECK(eta >= 0.0);
    CHECK(eta <= 1.0);
    CHECK(rep["n"] == 20);
  }
  CHECK_FALSE(doc.contains("rolling"));
  CHECK_FALSE(doc.contains("bootstrap"));
  CHECK_FALSE(fs::exists(prefix.string() + "_rolling.csv"));
  CHECK_FALSE(fs::exists(prefix.string() + "_bootstrap.csv"));
}

TEST_CASE("rolling and bootstrap outputs are byte-stable across workers") {
  const fs::path panel = work_dir() / "panel_long.csv";
  REQUIRE(run("synth --securities 10 --days 3200 --seed 9 --out " +
              panel.string())
              .code == 0);

  const std::string base = "evaluate --panel " + panel.string() +
                           " --rolling --window-years 10 --in-years 5"
                           " --bootstrap 40 --drop 3 --seed 2";
  const fs::path p1 = work_dir() / "eval_w1";
  const fs::path p8 = work_dir() / "eval_w8";
  const fs::path p1b = work_dir() / "eval_w1b";
  REQUIRE(run(base + " --workers 1 --out " + p1.string()).code == 0);
  REQUIRE(run(base + " --workers 8 --out " + p8.string()).code == 0);
  REQUIRE(run(base + " --workers 1 --out " + p1b.string()).code == 0);

  for (const char* suffix : {".json", "_rolling.csv", "_bootstrap.csv"}) {
    const std::string b1 = slurp(p1.string() + suffix);
    CHECK(b1 == slurp(p8.string() + suffix));
    CHECK(b1 == slurp(p1b.string() + suffix));
  }

  const auto doc = nlohmann::json::parse(slurp(p1.string() + ".json"));
  REQUIRE(doc.contains("rolling"));
  REQUIRE(doc.contains("bootstrap"));
  // 12 complete years -> 3 windows, each contributing an in- and an
  // out-of-sample row per measure.
  CHECK(doc["rolling"]["windows"].size() == 3 * 2 * 4);
  CHECK(doc["bootstrap"]["iterations"] == 40);
  CHECK(doc["bootstrap"]["comparisons"].size() == 6);

  const std::string roll = slurp(p1.string() + "_rolling.csv");
  CHECK(roll.find("window,direction,measure,eta,a0,a1,p_a0,p_a1,n") !=
        std::string::npos);
  CHECK(roll.find("summary_mean") != std::string::npos);
  CHECK(roll.find("summary_rel_dev") != std::string::npos);
  CHECK(roll.find("1985-1994") != std::string::npos);

  const std::string boot = slurp(p1.string() + "_bootstrap.csv");
  CHECK(boot.find("iteration,stddev,beta,entropy_shannon,entropy_renyi") !=
        std::string::npos);
  CHECK(count_lines(boot, true) == 41);  // header + one row per iteration
}

TEST_CASE("config file via environment variable") {
  const fs::path cfg = work_dir() / "defaults.ini";
  std::ofstream f(cfg);
  f << "[synth]\n"
       "days=111\n"
       "seed=77\n";
  f.close();

  const fs::path out = work_dir() / "synth_cfg.csv";
  const RunResult r = run("synth --securities 5 --out " + out.string(),
                          "ENTRORISK_CONFIG=" + cfg.string());
  REQUIRE(r.code == 0);
  const Dataset d = load_dataset(out);
  CHECK(d.n_days() == 111);
  CHECK(d.n_securities() == 5);
  CHECK(slurp(out).find("seed=77") != std::string::npos);

  // Explicit flags outrank the config file.
  const fs::path out2 = work_dir() / "synth_cfg2.csv";
  const RunResult r2 =
      run("synth --securities 5 --days 60 --out " + out2.string(),
          "ENTRORISK_CONFIG=" + cfg.string());
  REQUIRE(r2.code == 0);
  CHECK(load_dataset(out2).n_days() == 60);
}
