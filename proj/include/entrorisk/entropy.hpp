#pragma once

#include <optional>
#include <string>

#include <Eigen/Dense>

#include "entrorisk/density.hpp"

namespace entrorisk {

enum class EntropyKind { Discrete, Differential };

// Composite-trapezoid resolution for integrating smooth (kernel) densities.
// Piecewise-constant densities are integrated segment-exactly instead — the
// value the trapezoid rule converges to, free of discretization error.
struct QuadratureSpec {
  int points = 4096;  // >= 16
};

struct EntropyEstimator {
  std::string method;  // "discrete", "histogram", "kernel", ...
  int bins = 0;
  double bandwidth = 0.0;
  int order = 0;
  int quad_points = 0;  // 0 when a closed/segment-exact form was used
};

// Entropy of order alpha. Discrete values are in bits (base-2 log) and are
// never negative; differential values are in nats (natural log) and may be
// any real.
struct EntropyValue {
  double value = 0.0;
  double alpha = 1.0;
  EntropyKind kind = EntropyKind::Differential;
  EntropyEstimator estimator;
};

// Order-alpha entropy of a probability vector, in bits. alpha = 1 is the
// Shannon limit (0*log 0 := 0); alpha = 2 the collision entropy. Requires
// entries >= 0 summing to 1 within 1e-9 and alpha >= 0.
EntropyValue discrete_entropy(const Eigen::Ref<const Eigen::ArrayXd>& p,
                              double alpha);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Differential entropy of a fitted density by plugging it into the order-1
// integral -∫ f ln f (integrand 0 where f = 0) or the order-2 form
// -ln ∫ f². The default range is the sample's [min, max]. Only alpha 1 and 2
// are supported.
EntropyValue entropy_plugin(const DensityEstimate& f, double alpha,
                            std::optional<Interval> range = std::nullopt,
                            const QuadratureSpec& quad = {});

// Closed-form histogram entropies over k equal bins on [min, max]:
// order 1: -(1/n) Σ v_j ln(v_j / (n h)); order 2: -ln Σ h (v_j/(n h))².
// Empty bins contribute nothing.
EntropyValue histogram_entropy_shannon(
    const Eigen::Ref<const Eigen::ArrayXd>& sample, int k);
EntropyValue histogram_entropy_renyi(
    const Eigen::Ref<const Eigen::ArrayXd>& sample, int k);

}  // namespace entrorisk
