#include "entrorisk/entropy.hpp"

#include <cmath>

#include "entrorisk/errors.hpp"

namespace entrorisk {

namespace {

EntropyEstimator describe(const DensityEstimate& f, int quad_points) {
  EntropyEstimator e;
  e.method = density_method_name(f.method);
  e.bins = f.bins;
  e.bandwidth = f.bandwidth;
  e.order = f.order;
  e.quad_points = quad_points;
  return e;
}

double g1(double f) { return f > 0.0 ? -f * std::log(f) : 0.0; }

}  // namespace

EntropyValue discrete_entropy(const Eigen::Ref<const Eigen::ArrayXd>& p,
                              double alpha) {
  if (alpha < 0.0) throw DomainError("entropy order must be >= 0");
  if ((p < 0.0).any()) throw DomainError("negative probability entry");
  if (std::abs(p.sum() - 1.0) > 1e-9)
    throw DomainError("probabilities must sum to 1");
  EntropyValue out;
  out.alpha = alpha;
  out.kind = EntropyKind::Discrete;
  out.estimator.method = "discrete";
  const double ln2 = std::log(2.0);
  if (alpha == 1.0) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i)
      if (p(i) > 0.0) acc -= p(i) * std::log(p(i));
    out.value = acc / ln2;
    return out;
  }
  double sum = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p(i) > 0.0) sum += std::pow(p(i), alpha);
  out.value = std::log(sum) / ln2 / (1.0 - alpha);
  return out;
}

EntropyValue entropy_plugin(const DensityEstimate& f, double alpha,
                            std::optional<Interval> range,
                            const QuadratureSpec& quad) {
  if (alpha != 1.0 && alpha != 2.0)
    throw DomainError("plug-in entropy supports order 1 or 2 only");
  const Interval r = range.value_or(Interval{f.data_lo, f.data_hi});
  if (!(r.hi > r.lo)) throw DomainError("degenerate integration range");
  if (quad.points < 16) throw DomainError("quadrature needs >= 16 points");

  double integral = 0.0;  // -∫ f ln f (order 1) or ∫ f² (order 2)
  bool exact = f.piecewise();
  if (exact) {
    // Piecewise-constant density: integrate block by block over the overlap
    // with the range. No grid, no discretization error.
    for (std::size_t j = 0; j + 1 < f.edges.size(); ++j) {
      const double lo = std::max(f.edges[j], r.lo);
      const double hi = std::min(f.edges[j + 1], r.hi);
      if (hi <= lo) continue;
      const double v = f.values[j];
      integral += (alpha == 1.0 ? g1(v) : v * v) * (hi - lo);
    }
  } else {
    const double step =
        (r.hi - r.lo) / static_cast<double>(quad.points - 1);
    for (int i = 0; i < quad.points; ++i) {
      const double x = r.lo + step * static_cast<double>(i);
      const double v = f.evaluate(x);
      const double term = alpha == 1.0 ? g1(v) : v * v;
      integral += (i == 0 || i == quad.points - 1) ? 0.5 * term : term;
    }
    integral *= step;
  }

  EntropyValue out;
  out.alpha = alpha;
  out.kind = EntropyKind::Differential;
  out.estimator = describe(f, exact ? 0 : quad.points);
  if (alpha == 1.0) {
    out.value = integral;
  } else {
    if (!(integral > 0.0))
      throw DomainError("collision integral is zero over the range");
    out.value = -std::log(integral);
  }
  return out;
}

EntropyValue histogram_entropy_shannon(
    const Eigen::Ref<const Eigen::ArrayXd>& sample, int k) {
  const DensityEstimate d = histogram_density(sample, BinRule::fixed(k));
  const double nh = static_cast<double>(d.n) * d.bin_width;
  double acc = 0.0;
  for (const auto c : d.counts) {
    if (c == 0) continue;
    const auto v = static_cast<double>(c);
    acc += v * std::log(v / nh);
  }
  EntropyValue out;
  out.value = -acc / static_cast<double>(d.n);
  out.alpha = 1.0;
  out.kind = EntropyKind::Differential;
  out.estimator = describe(d, 0);
  return out;
}

EntropyValue histogram_entropy_renyi(
    const Eigen::Ref<const Eigen::ArrayXd>& sample, int k) {
  const DensityEstimate d = histogram_density(sample, BinRule::fixed(k));
  const double nh = static_cast<double>(d.n) * d.bin_width;
  double sum = 0.0;
  for (const auto c : d.counts) {
    const double f = static_cast<double>(c) / nh;
    sum += d.bin_width * f * f;
  }
  if (!(sum > 0.0)) throw DomainError("collision integral is zero");
  EntropyValue out;
  out.value = -std::log(sum);
  out.alpha = 2.0;
  out.kind = EntropyKind::Differential;
  out.estimator = describe(d, 0);
  return out;
}

}  // namespace entrorisk
