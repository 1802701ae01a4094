#include "entrorisk/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "entrorisk/errors.hpp"

namespace entrorisk::stats {

double mean(const Eigen::Ref<const ArrayXd>& x) {
  if (x.size() == 0) throw DomainError("mean of empty sample");
  return x.mean();
}

double sample_variance(const Eigen::Ref<const ArrayXd>& x) {
  const auto n = x.size();
  if (n < 2) throw DomainError("variance needs at least 2 observations");
  const double m = x.mean();
  return (x - m).square().sum() / static_cast<double>(n - 1);
}

double sample_stddev(const Eigen::Ref<const ArrayXd>& x) {
  return std::sqrt(sample_variance(x));
}

double sample_covariance(const Eigen::Ref<const ArrayXd>& x,
                         const Eigen::Ref<const ArrayXd>& y) {
  const auto n = x.size();
  if (n != y.size()) throw DomainError("covariance: length mismatch");
  if (n < 2) throw DomainError("covariance needs at least 2 observations");
  const double mx = x.mean();
  const double my = y.mean();
  return ((x - mx) * (y - my)).sum() / static_cast<double>(n - 1);
}

double quantile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw DomainError("quantile of empty sample");
  if (p < 0.0 || p > 1.0) throw DomainError("quantile level outside [0, 1]");
  const auto n = sorted.size();
  if (n == 1) return sorted[0];
  const double h = p * static_cast<double>(n - 1);
  const auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= n) return sorted[n - 1];
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double quantile(const Eigen::Ref<const ArrayXd>& x, double p) {
  std::vector<double> v(x.data(), x.data() + x.size());
  std::sort(v.begin(), v.end());
  return quantile_sorted(v, p);
}

double interquartile_range(const Eigen::Ref<const ArrayXd>& x) {
  std::vector<double> v(x.data(), x.data() + x.size());
  std::sort(v.begin(), v.end());
  return quantile_sorted(v, 0.75) - quantile_sorted(v, 0.25);
}

namespace {

// Lentz continued fraction for the incomplete beta, as in Numerical Recipes.
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3.0e-14;
  constexpr double kTiny = 1.0e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0))
    throw DomainError("incomplete beta: parameters must be positive");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) -
                          std::lgamma(b) + a * std::log(x) +
                          b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
  if (!(df > 0.0)) throw DomainError("t distribution needs df > 0");
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(t)) return 0.0;
  // P(|T| >= |t|) = I_{df/(df+t^2)}(df/2, 1/2).
  return regularized_incomplete_beta(0.5 * df, 0.5, df / (df + t * t));
}

WelchResult welch_t_test(const Eigen::Ref<const ArrayXd>& a,
                         const Eigen::Ref<const ArrayXd>& b) {
  const auto na = a.size();
  const auto nb = b.size();
  if (na < 2 || nb < 2)
    throw DomainError("t-test needs at least 2 observations per group");
  const double va = sample_variance(a) / static_cast<double>(na);
  const double vb = sample_variance(b) / static_cast<double>(nb);
  WelchResult r;
  const double se2 = va + vb;
  if (se2 <= 0.0) {
    r.degenerate = true;
    r.t = 0.0;
    r.df = static_cast<double>(na + nb - 2);
    r.p = 1.0;
    return r;
  }
  r.t = (a.mean() - b.mean()) / std::sqrt(se2);
  r.df = se2 * se2 /
         (va * va / static_cast<double>(na - 1) +
          vb * vb / static_cast<double>(nb - 1));
  r.p = student_t_two_sided_p(r.t, r.df);
  return r;
}

}  // namespace entrorisk::stats
