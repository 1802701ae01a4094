#include "entrorisk/data.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

#include "entrorisk/csv.hpp"
#include "entrorisk/errors.hpp"
#include "entrorisk/rng.hpp"

namespace entrorisk {

ReturnSeries Dataset::series(Eigen::Index i) const {
  if (i < 0 || i >= n_securities())
    throw DomainError("security index out of range");
  ReturnSeries s;
  s.security_id = security_ids[static_cast<std::size_t>(i)];
  s.dates = dates;
  s.returns = returns.col(i).array();
  return s;
}

void Dataset::validate() const {
  const auto n = n_days();
  if (returns.rows() != n || market.size() != n || risk_free.size() != n)
    throw DomainError("dataset: row count mismatch across columns");
  if (returns.cols() != n_securities())
    throw DomainError("dataset: id/column count mismatch");
  for (Eigen::Index i = 1; i < n; ++i)
    if (!(dates[static_cast<std::size_t>(i - 1)] <
          dates[static_cast<std::size_t>(i)]))
      throw DomainError("dataset: dates not strictly increasing");
}

Dataset load_dataset(const std::filesystem::path& path,
                     const std::string& market_column,
                     const std::string& risk_free_column) {
  const csv::Table t = csv::read_file(path);
  const std::string where = "'" + path.string() + "'";
  if (t.header.empty() || t.header[0] != "date")
    throw IoError(where + ": first column must be 'date'");
  if (market_column == risk_free_column)
    throw IoError("market and risk-free columns must differ");

  Eigen::Index market_col = -1;
  Eigen::Index rf_col = -1;
  std::vector<std::string> ids;
  std::vector<Eigen::Index> sec_cols;
  std::set<std::string> seen;
  for (std::size_t c = 1; c < t.header.size(); ++c) {
    const std::string& name = t.header[c];
    if (name.empty()) throw IoError(where + ": empty column name in header");
    if (!seen.insert(name).second)
      throw IoError(where + ": duplicate column '" + name + "'");
    if (name == market_column)
      market_col = static_cast<Eigen::Index>(c);
    else if (name == risk_free_column)
      rf_col = static_cast<Eigen::Index>(c);
    else {
      ids.push_back(name);
      sec_cols.push_back(static_cast<Eigen::Index>(c));
    }
  }
  if (market_col < 0)
    throw IoError(where + ": market column '" + market_column + "' not found");
  if (rf_col < 0)
    throw IoError(where + ": risk-free column '" + risk_free_column +
                  "' not found");
  if (ids.empty())
    throw IoError(where + ": no security columns besides market/risk-free");
  if (t.rows.size() < 2)
    throw IoError(where + ": need at least 2 data rows, got " +
                  std::to_string(t.rows.size()));

  Dataset d;
  d.market_id = market_column;
  d.risk_free_id = risk_free_column;
  d.security_ids = ids;
  const auto n = static_cast<Eigen::Index>(t.rows.size());
  const auto l = static_cast<Eigen::Index>(ids.size());
  d.dates.reserve(t.rows.size());
  d.returns.resize(n, l);
  d.market.resize(n);
  d.risk_free.resize(n);

  for (Eigen::Index r = 0; r < n; ++r) {
    const auto& row = t.rows[static_cast<std::size_t>(r)];
    const std::string row_ctx = "row " + std::to_string(r + 1);
    Date day;
    try {
      day = parse_date(row[0]);
    } catch (const IoError& e) {
      throw IoError(where + ", " + row_ctx + ": " + e.what());
    }
    if (!d.dates.empty()) {
      const Date& prev = d.dates.back();
      if (day == prev)
        throw IoError(where + ", " + row_ctx + ": duplicate date " +
                      to_string(day));
      if (day < prev)
        throw IoError(where + ", " + row_ctx + ": dates not sorted (" +
                      to_string(day) + " after " + to_string(prev) + ")");
    }
    d.dates.push_back(day);
    auto cell = [&](Eigen::Index c, const std::string& col_name) {
      return csv::parse_double(
          row[static_cast<std::size_t>(c)],
          row_ctx + ", column '" + col_name + "' of " + where);
    };
    for (Eigen::Index j = 0; j < l; ++j)
      d.returns(r, j) = cell(sec_cols[static_cast<std::size_t>(j)],
                             ids[static_cast<std::size_t>(j)]);
    d.market(r) = cell(market_col, market_column);
    d.risk_free(r) = cell(rf_col, risk_free_column);
  }
  return d;
}

void save_dataset_csv(const Dataset& d, const std::filesystem::path& path,
                      const std::vector<std::string>& comment_lines) {
  d.validate();
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  for (const auto& line : comment_lines) out << "# " << line << "\n";
  out << "date";
  for (const auto& id : d.security_ids) out << ',' << id;
  out << ',' << d.market_id << ',' << d.risk_free_id << "\n";
  for (Eigen::Index r = 0; r < d.n_days(); ++r) {
    out << to_string(d.dates[static_cast<std::size_t>(r)]);
    for (Eigen::Index j = 0; j < d.n_securities(); ++j)
      out << ',' << csv::format_double(d.returns(r, j));
    out << ',' << csv::format_double(d.market(r));
    out << ',' << csv::format_double(d.risk_free(r));
    out << "\n";
  }
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

Eigen::ArrayXd market_premium(const Dataset& d) {
  return d.market - d.risk_free;
}

std::vector<PremiumSeries> premiums(const Dataset& d) {
  std::vector<PremiumSeries> out;
  out.reserve(static_cast<std::size_t>(d.n_securities()) + 1);
  for (Eigen::Index j = 0; j < d.n_securities(); ++j)
    out.push_back({d.security_ids[static_cast<std::size_t>(j)],
                   d.returns.col(j).array() - d.risk_free});
  out.push_back({d.market_id, market_premium(d)});
  return out;
}

namespace {

Dataset slice_rows(const Dataset& d, const std::vector<Eigen::Index>& rows) {
  Dataset s;
  s.security_ids = d.security_ids;
  s.market_id = d.market_id;
  s.risk_free_id = d.risk_free_id;
  const auto n = static_cast<Eigen::Index>(rows.size());
  s.dates.reserve(rows.size());
  s.returns.resize(n, d.n_securities());
  s.market.resize(n);
  s.risk_free.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index r = rows[static_cast<std::size_t>(i)];
    s.dates.push_back(d.dates[static_cast<std::size_t>(r)]);
    s.returns.row(i) = d.returns.row(r);
    s.market(i) = d.market(r);
    s.risk_free(i) = d.risk_free(r);
  }
  return s;
}

}  // namespace

Dataset slice_by_interval(const Dataset& d, const DateInterval& interval) {
  std::vector<Eigen::Index> rows;
  for (Eigen::Index r = 0; r < d.n_days(); ++r)
    if (interval.contains(d.dates[static_cast<std::size_t>(r)]))
      rows.push_back(r);
  return slice_rows(d, rows);
}

std::vector<WindowSplit> rolling_windows(const Dataset& d, int window_years,
                                         int in_years) {
  if (window_years < 2 || in_years < 1 || in_years >= window_years)
    throw DomainError("rolling windows: need 1 <= fit years < window years");
  // A calendar year counts as complete when the panel has observations in
  // both its January and its December.
  std::set<int> has_jan, has_dec;
  for (const Date& day : d.dates) {
    if (day.month == 1) has_jan.insert(day.year);
    if (day.month == 12) has_dec.insert(day.year);
  }
  std::vector<int> years;
  for (int y : has_jan)
    if (has_dec.count(y)) years.push_back(y);
  if (years.empty()) throw DomainError("rolling windows: no complete year");
  for (std::size_t i = 1; i < years.size(); ++i)
    if (years[i] != years[i - 1] + 1)
      throw DomainError("rolling windows: complete years not contiguous (" +
                        std::to_string(years[i - 1]) + " then " +
                        std::to_string(years[i]) + ")");
  const int total = static_cast<int>(years.size());
  if (total < window_years)
    throw DomainError("rolling windows: " + std::to_string(total) +
                      " complete years, need at least " +
                      std::to_string(window_years));
  std::vector<WindowSplit> out;
  for (int k = 0; k + window_years <= total; ++k) {
    const int y0 = years[static_cast<std::size_t>(k)];
    WindowSplit w;
    w.start_year = y0;
    w.in_range = {Date{y0, 1, 1}, Date{y0 + in_years - 1, 12, 31}};
    w.out_range = {Date{y0 + in_years, 1, 1},
                   Date{y0 + window_years - 1, 12, 31}};
    out.push_back(w);
  }
  return out;
}

RegimeCalendar load_regime_calendar(const std::filesystem::path& path) {
  const csv::Table t = csv::read_file(path);
  const std::string where = "'" + path.string() + "'";
  if (t.header != std::vector<std::string>{"start", "end", "label"})
    throw IoError(where + ": header must be start,end,label");
  RegimeCalendar cal;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    const std::string row_ctx = where + ", row " + std::to_string(r + 1);
    RegimeInterval entry;
    try {
      entry.range.lo = parse_date(row[0]);
      entry.range.hi = parse_date(row[1]);
    } catch (const IoError& e) {
      throw IoError(row_ctx + ": " + e.what());
    }
    if (entry.range.hi < entry.range.lo)
      throw IoError(row_ctx + ": interval ends before it starts");
    if (row[2] == "bull")
      entry.label = Regime::Bull;
    else if (row[2] == "bear")
      entry.label = Regime::Bear;
    else
      throw IoError(row_ctx + ": label must be 'bull' or 'bear', got '" +
                    row[2] + "'");
    cal.entries.push_back(entry);
  }
  // Overlap check on the intervals sorted by start.
  auto sorted = cal.entries;
  std::sort(sorted.begin(), sorted.end(),
            [](const RegimeInterval& a, const RegimeInterval& b) {
              return a.range.lo < b.range.lo;
            });
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (!(sorted[i - 1].range.hi < sorted[i].range.lo))
      throw IoError(where + ": intervals overlap around " +
                    to_string(sorted[i].range.lo));
  return cal;
}

Dataset filter_by_regime(const Dataset& d, const RegimeCalendar& calendar,
                         Regime label) {
  std::vector<Eigen::Index> rows;
  for (Eigen::Index r = 0; r < d.n_days(); ++r) {
    const Date& day = d.dates[static_cast<std::size_t>(r)];
    for (const auto& entry : calendar.entries) {
      if (entry.label == label && entry.range.contains(day)) {
        rows.push_back(r);
        break;
      }
    }
  }
  return slice_rows(d, rows);
}

namespace {

double normal_at(std::uint64_t seed, std::uint64_t stream, std::uint64_t t) {
  rng::SplitMix64 g(rng::derive(seed, stream, t));
  return g.normal();
}

}  // namespace

Dataset generate_synthetic(const SyntheticSpec& spec) {
  if (spec.n_securities < 1) throw DomainError("synthetic: need >= 1 security");
  if (spec.n_days < 2) throw DomainError("synthetic: need >= 2 days");
  if (spec.betas.size() != spec.n_securities ||
      spec.idio_vols.size() != spec.n_securities)
    throw DomainError("synthetic: betas/idio_vols must match n_securities");
  if (!(spec.market_vol > 0.0))
    throw DomainError("synthetic: market volatility must be positive");
  if ((spec.idio_vols < 0.0).any())
    throw DomainError("synthetic: idiosyncratic volatility must be >= 0");
  if (!is_valid_date(spec.start_date))
    throw DomainError("synthetic: invalid start date");

  Dataset d;
  const auto n = static_cast<Eigen::Index>(spec.n_days);
  const auto l = static_cast<Eigen::Index>(spec.n_securities);
  d.dates.reserve(spec.n_days);
  Date day = spec.start_date;
  if (!is_weekday(day)) day = next_weekday(day);
  for (Eigen::Index t = 0; t < n; ++t) {
    d.dates.push_back(day);
    day = next_weekday(day);
  }
  d.security_ids.reserve(spec.n_securities);
  for (int i = 0; i < spec.n_securities; ++i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "S%03d", i + 1);
    d.security_ids.emplace_back(buf);
  }
  d.returns.resize(n, l);
  d.market.resize(n);
  d.risk_free = Eigen::ArrayXd::Constant(n, spec.risk_free_rate);
  for (Eigen::Index t = 0; t < n; ++t) {
    const auto ut = static_cast<std::uint64_t>(t);
    const double mkt_prem =
        spec.market_drift + spec.market_vol * normal_at(spec.seed, 0, ut);
    d.market(t) = spec.risk_free_rate + mkt_prem;
    for (Eigen::Index i = 0; i < l; ++i) {
      const double z =
          normal_at(spec.seed, static_cast<std::uint64_t>(i) + 1, ut);
      d.returns(t, i) = spec.risk_free_rate + spec.betas(i) * mkt_prem +
                        spec.idio_vols(i) * z;
    }
  }
  return d;
}

}  // namespace entrorisk
