#include "entrorisk/density.hpp"

#include <algorithm>
#include <cmath>

#include "entrorisk/errors.hpp"
#include "entrorisk/stats.hpp"

namespace entrorisk {

const char* density_method_name(DensityMethod m) {
  switch (m) {
    case DensityMethod::Histogram: return "histogram";
    case DensityMethod::Kernel: return "kernel";
    case DensityMethod::SpacingSimple: return "spacing_simple";
    case DensityMethod::SpacingCorrea: return "spacing_correa";
  }
  return "?";
}

DensityMethod density_method_from_name(std::string_view name) {
  if (name == "histogram") return DensityMethod::Histogram;
  if (name == "kernel") return DensityMethod::Kernel;
  if (name == "spacing_simple") return DensityMethod::SpacingSimple;
  if (name == "spacing_correa") return DensityMethod::SpacingCorrea;
  throw DomainError("unknown density backend '" + std::string(name) +
                    "' (expected histogram, kernel, spacing_simple, "
                    "spacing_correa)");
}

namespace {

std::vector<double> sorted_copy(const Eigen::Ref<const Eigen::ArrayXd>& x) {
  std::vector<double> v(x.data(), x.data() + x.size());
  std::sort(v.begin(), v.end());
  return v;
}

// Spacing estimators need strictly increasing order statistics; repeated
// values (daily returns contain exact repeats) get a deterministic rank*eps
// nudge that preserves order and distorts by at most n*eps total.
std::vector<double> tie_broken_sorted(
    const Eigen::Ref<const Eigen::ArrayXd>& x) {
  auto v = sorted_copy(x);
  const double range = v.back() - v.front();
  if (!(range > 0.0)) throw DomainError("zero range: all sample values equal");
  if (std::adjacent_find(v.begin(), v.end()) != v.end()) {
    const double eps = 1e-12 * range;
    for (std::size_t i = 0; i < v.size(); ++i)
      v[i] += static_cast<double>(i) * eps;
  }
  return v;
}

// Right-closed bin index: the bins are (t_{j-1}, t_j], the minimum belongs to
// the first bin, so values sitting exactly on an edge count to the left.
Eigen::Index bin_index(double x, double lo, double width, Eigen::Index k) {
  const auto raw =
      static_cast<Eigen::Index>(std::ceil((x - lo) / width)) - 1;
  return std::clamp<Eigen::Index>(raw, 0, k - 1);
}

}  // namespace

BinChoice bin_count(const Eigen::Ref<const Eigen::ArrayXd>& sample,
                    const BinRule& rule) {
  const auto n = sample.size();
  if (rule.kind == BinRule::Kind::Fixed) {
    if (rule.fixed_k < 2) throw DomainError("bin count must be at least 2");
    return {rule.fixed_k, false};
  }
  if (n < 4)
    throw DomainError("data-driven bin rules need at least 4 observations");
  const double nd = static_cast<double>(n);
  auto sqrt_k = [&] {
    return static_cast<int>(std::ceil(std::sqrt(nd)));
  };
  int k = 2;
  bool fell_back = false;
  switch (rule.kind) {
    case BinRule::Kind::Sqrt:
      k = sqrt_k();
      break;
    case BinRule::Kind::Scott: {
      const double range = sample.maxCoeff() - sample.minCoeff();
      if (!(range > 0.0)) throw DomainError("zero range: all sample values equal");
      const double width =
          3.49 * stats::sample_stddev(sample) * std::pow(nd, -1.0 / 3.0);
      k = static_cast<int>(std::ceil(range / width));
      break;
    }
    case BinRule::Kind::FreedmanDiaconis: {
      const double range = sample.maxCoeff() - sample.minCoeff();
      if (!(range > 0.0)) throw DomainError("zero range: all sample values equal");
      const double iqr = stats::interquartile_range(sample);
      if (iqr > 0.0) {
        const double width = 2.0 * iqr * std::pow(nd, -1.0 / 3.0);
        k = static_cast<int>(std::ceil(range / width));
      } else {
        k = sqrt_k();
        fell_back = true;
      }
      break;
    }
    case BinRule::Kind::Fixed:
      break;  // handled above
  }
  return {std::max(k, 2), fell_back};
}

DensityEstimate histogram_density(
    const Eigen::Ref<const Eigen::ArrayXd>& sample, const BinRule& rule) {
  const auto n = sample.size();
  if (n < 2) throw DomainError("histogram needs at least 2 observations");
  const double lo = sample.minCoeff();
  const double hi = sample.maxCoeff();
  if (!(hi > lo)) throw DomainError("zero range: all sample values equal");
  const BinChoice choice = bin_count(sample, rule);
  const auto k = static_cast<Eigen::Index>(choice.k);
  const double width = (hi - lo) / static_cast<double>(k);

  DensityEstimate d;
  d.method = DensityMethod::Histogram;
  d.n = n;
  d.data_lo = d.support_lo = lo;
  d.data_hi = d.support_hi = hi;
  d.bins = choice.k;
  d.bin_width = width;
  d.fd_fallback = choice.fd_fallback;
  d.counts.assign(static_cast<std::size_t>(k), 0);
  for (Eigen::Index i = 0; i < n; ++i)
    d.counts[static_cast<std::size_t>(bin_index(sample(i), lo, width, k))] += 1;
  d.edges.resize(static_cast<std::size_t>(k) + 1);
  for (Eigen::Index j = 0; j <= k; ++j)
    d.edges[static_cast<std::size_t>(j)] =
        lo + width * static_cast<double>(j);
  d.edges.back() = hi;
  d.values.resize(static_cast<std::size_t>(k));
  const double nh = static_cast<double>(n) * width;
  for (Eigen::Index j = 0; j < k; ++j)
    d.values[static_cast<std::size_t>(j)] =
        static_cast<double>(d.counts[static_cast<std::size_t>(j)]) / nh;
  return d;
}

double epanechnikov(double z) {
  if (z < -1.0 || z > 1.0) return 0.0;
  return 0.75 * (1.0 - z * z);
}

double silverman_bandwidth(const Eigen::Ref<const Eigen::ArrayXd>& sample) {
  const auto n = sample.size();
  if (n < 2) throw DomainError("bandwidth rule needs at least 2 observations");
  const double sd = stats::sample_stddev(sample);
  const double iqr = stats::interquartile_range(sample);
  // min(sd, IQR/1.34); a collapsed IQR on non-constant data falls back to sd
  // so the bandwidth stays usable.
  double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
  if (!(spread > 0.0)) throw DomainError("zero bandwidth: sample has no spread");
  return 1.06 * spread * std::pow(static_cast<double>(n), -0.2);
}

DensityEstimate kernel_density(const Eigen::Ref<const Eigen::ArrayXd>& sample,
                               double h) {
  const auto n = sample.size();
  if (n < 1) throw DomainError("kernel density needs at least 1 observation");
  if (!(h > 0.0)) throw DomainError("bandwidth must be positive");
  DensityEstimate d;
  d.method = DensityMethod::Kernel;
  d.n = n;
  d.bandwidth = h;
  d.sorted = sorted_copy(sample);
  d.data_lo = d.sorted.front();
  d.data_hi = d.sorted.back();
  d.support_lo = d.data_lo - h;
  d.support_hi = d.data_hi + h;
  d.prefix1.assign(static_cast<std::size_t>(n) + 1, 0.0);
  d.prefix2.assign(static_cast<std::size_t>(n) + 1, 0.0);
  for (std::size_t i = 0; i < d.sorted.size(); ++i) {
    d.prefix1[i + 1] = d.prefix1[i] + d.sorted[i];
    d.prefix2[i + 1] = d.prefix2[i] + d.sorted[i] * d.sorted[i];
  }
  return d;
}

int spacing_order(Eigen::Index n, int k) {
  if (n < 1 || k < 1) throw DomainError("spacing order needs n >= 1, k >= 1");
  return static_cast<int>((n + k - 1) / k);
}

DensityEstimate spacing_density_simple(
    const Eigen::Ref<const Eigen::ArrayXd>& sample, int m) {
  const auto n = sample.size();
  if (m < 1) throw DomainError("spacing order must be at least 1");
  if (n <= m)
    throw DomainError("order too large: need more observations than the order");
  const auto s = tie_broken_sorted(sample);

  DensityEstimate d;
  d.method = DensityMethod::SpacingSimple;
  d.n = n;
  d.order = m;
  d.data_lo = d.support_lo = s.front();
  d.data_hi = d.support_hi = s.back();
  const auto last = static_cast<std::size_t>(n - 1);
  const auto step = static_cast<std::size_t>(m);
  d.edges.push_back(s[0]);
  for (std::size_t idx = 0; idx < last;) {
    const std::size_t next = std::min(idx + step, last);
    const double width = s[next] - s[idx];
    if (!(width > 0.0)) throw DomainError("zero spacing between block edges");
    // Each block carries (gaps in block)/n of the mass; the final block keeps
    // however many gaps remain.
    const auto gaps = static_cast<double>(next - idx);
    d.edges.push_back(s[next]);
    d.values.push_back(gaps / static_cast<double>(n) / width);
    d.counts.push_back(static_cast<std::int64_t>(next - idx));
    idx = next;
  }
  return d;
}

DensityEstimate spacing_density_correa(
    const Eigen::Ref<const Eigen::ArrayXd>& sample, int m) {
  const auto n = sample.size();
  if (m < 2) throw DomainError("this spacing estimator needs order >= 2");
  if (n <= m)
    throw DomainError("order too large: need more observations than the order");
  const auto s = tie_broken_sorted(sample);
  const auto nn = static_cast<std::int64_t>(n);
  const std::int64_t w = m / 2;

  DensityEstimate d;
  d.method = DensityMethod::SpacingCorrea;
  d.n = n;
  d.order = m;
  d.data_lo = d.support_lo = s.front();
  d.data_hi = d.support_hi = s.back();
  d.edges.assign(s.begin(), s.end());
  d.values.resize(s.size() - 1);

  for (std::int64_t i = 0; i + 1 < nn; ++i) {
    const std::int64_t a = std::max<std::int64_t>(0, i - w);
    const std::int64_t b = std::min<std::int64_t>(nn - 1, i + w);
    const auto cnt = static_cast<double>(b - a + 1);
    double local_mean = 0.0;
    for (std::int64_t j = a; j <= b; ++j)
      local_mean += s[static_cast<std::size_t>(j)];
    local_mean /= cnt;
    // Slope of order statistic against rank around i; centered accumulation
    // keeps the tiny-denominator case (near-tied data) accurate.
    double num = 0.0;
    double den = 0.0;
    for (std::int64_t j = a; j <= b; ++j) {
      const double dx = s[static_cast<std::size_t>(j)] - local_mean;
      num += dx * static_cast<double>(j - i);
      den += dx * dx;
    }
    if (!(den > 0.0))
      throw DomainError("degenerate window: no spread around rank " +
                        std::to_string(i + 1));
    const double raw = num / (static_cast<double>(n) * den);
    d.values[static_cast<std::size_t>(i)] = std::max(raw, 0.0);
  }

  double mass = 0.0;
  for (std::size_t j = 0; j + 1 < d.edges.size(); ++j)
    mass += d.values[j] * (d.edges[j + 1] - d.edges[j]);
  if (!(mass > 0.0))
    throw DomainError("estimate vanished: no positive slope anywhere");
  for (auto& v : d.values) v /= mass;
  d.raw_mass = mass;
  return d;
}

double DensityEstimate::evaluate(double x) const {
  switch (method) {
    case DensityMethod::Histogram: {
      if (x < support_lo || x > support_hi) return 0.0;
      return values[static_cast<std::size_t>(
          bin_index(x, support_lo, bin_width, static_cast<Eigen::Index>(bins)))];
    }
    case DensityMethod::Kernel: {
      const auto i0 = std::lower_bound(sorted.begin(), sorted.end(),
                                       x - bandwidth) -
                      sorted.begin();
      const auto i1 = std::upper_bound(sorted.begin(), sorted.end(),
                                       x + bandwidth) -
                      sorted.begin();
      const auto cnt = static_cast<double>(i1 - i0);
      if (cnt <= 0.0) return 0.0;
      // Sum of the quadratic kernel over the window via prefix sums:
      // sum K = 0.75 * (cnt - sum (x - x_i)^2 / h^2).
      const double s1 = prefix1[static_cast<std::size_t>(i1)] -
                        prefix1[static_cast<std::size_t>(i0)];
      const double s2 = prefix2[static_cast<std::size_t>(i1)] -
                        prefix2[static_cast<std::size_t>(i0)];
      const double sumsq = cnt * x * x - 2.0 * x * s1 + s2;
      const double sum_k = 0.75 * (cnt - sumsq / (bandwidth * bandwidth));
      return std::max(sum_k, 0.0) / (static_cast<double>(n) * bandwidth);
    }
    case DensityMethod::SpacingSimple:
    case DensityMethod::SpacingCorrea: {
      if (x < support_lo || x > support_hi) return 0.0;
      // Blocks are [e_j, e_{j+1}); the maximum belongs to the last block.
      auto it = std::upper_bound(edges.begin(), edges.end(), x);
      auto idx = static_cast<std::size_t>(it - edges.begin());
      idx = idx > 0 ? idx - 1 : 0;
      if (idx >= values.size()) idx = values.size() - 1;
      return values[idx];
    }
  }
  return 0.0;
}

}  // namespace entrorisk
