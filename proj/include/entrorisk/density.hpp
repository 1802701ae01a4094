#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace entrorisk {

enum class DensityMethod { Histogram, Kernel, SpacingSimple, SpacingCorrea };

const char* density_method_name(DensityMethod m);
DensityMethod density_method_from_name(std::string_view name);

// How to pick the histogram bin count from the sample.
struct BinRule {
  enum class Kind { Fixed, Sqrt, Scott, FreedmanDiaconis };
  Kind kind = Kind::Fixed;
  int fixed_k = 0;

  static BinRule fixed(int k) { return {Kind::Fixed, k}; }
  static BinRule sqrt_rule() { return {Kind::Sqrt, 0}; }
  static BinRule scott() { return {Kind::Scott, 0}; }
  static BinRule freedman_diaconis() { return {Kind::FreedmanDiaconis, 0}; }
};

struct BinChoice {
  int k = 0;
  // Freedman-Diaconis on zero-IQR data degenerates; we then use the sqrt rule
  // and say so.
  bool fd_fallback = false;
};

// Resolves a rule to a bin count (always ≥ 2; data-driven rules need n ≥ 4,
// fixed(k) needs k ≥ 2).
BinChoice bin_count(const Eigen::Ref<const Eigen::ArrayXd>& sample,
                    const BinRule& rule);

double epanechnikov(double z);

// 1.06 * min(sd, IQR/1.34) * n^(-1/5); if the IQR collapses to zero the
// spread term falls back to the standard deviation alone.
double silverman_bandwidth(const Eigen::Ref<const Eigen::ArrayXd>& sample);

// Block order for the spacing estimators given a target resolution of k
// blocks: ceil(n / k).
int spacing_order(Eigen::Index n, int k);

// A fitted one-dimensional density. `support` is where the method may place
// mass ([min−h, max+h] for the kernel, the sample range otherwise); `data`
// is the sample range itself, which is also the default entropy integration
// range. Immutable after construction; evaluate() is safe to call
// concurrently.
struct DensityEstimate {
  DensityMethod method = DensityMethod::Histogram;
  Eigen::Index n = 0;  // sample size
  double support_lo = 0.0;
  double support_hi = 0.0;
  double data_lo = 0.0;  // sample min
  double data_hi = 0.0;  // sample max

  // Piecewise-constant methods: values[j] on (edges[j], edges[j+1]).
  std::vector<double> edges;
  std::vector<double> values;
  std::vector<std::int64_t> counts;  // histogram occupancy, size = bins

  // Kernel method: ascending sample plus prefix sums of x and x^2, so a
  // window sum of the quadratic kernel costs two binary searches.
  std::vector<double> sorted;
  std::vector<double> prefix1;
  std::vector<double> prefix2;

  int bins = 0;
  double bin_width = 0.0;
  double bandwidth = 0.0;
  int order = 0;
  bool fd_fallback = false;
  // Mass of the raw floored estimate before renormalization (renormalizing
  // methods only); 1 means nothing was rescaled.
  double raw_mass = 1.0;

  bool piecewise() const { return method != DensityMethod::Kernel; }
  double evaluate(double x) const;
};

// Equal-width histogram over [min, max]; bins are right-closed
// (t_{j-1}, t_j], the minimum lands in the first bin.
DensityEstimate histogram_density(const Eigen::Ref<const Eigen::ArrayXd>& sample,
                                  const BinRule& rule);

// Epanechnikov kernel estimate with bandwidth h > 0.
DensityEstimate kernel_density(const Eigen::Ref<const Eigen::ArrayXd>& sample,
                               double h);

// m-block sample-spacing estimate: constant (c/n)/width on each block of c
// gaps between order statistics taken m at a time (the final block keeps its
// actual gap count).
DensityEstimate spacing_density_simple(
    const Eigen::Ref<const Eigen::ArrayXd>& sample, int m);

// Local-regression spacing estimate: on each gap (x_(i), x_(i+1)) the value
// is the slope of order statistics against rank over a window of ±floor(m/2)
// ranks (clamped at the ends), scaled by 1/n; negatives floored at 0 and the
// whole curve renormalized to unit mass.
DensityEstimate spacing_density_correa(
    const Eigen::Ref<const Eigen::ArrayXd>& sample, int m);

}  // namespace entrorisk
