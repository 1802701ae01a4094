#pragma once

#include <vector>

#include <Eigen/Dense>

namespace entrorisk::stats {

using Eigen::ArrayXd;

double mean(const Eigen::Ref<const ArrayXd>& x);

// Unbiased (n-1) variants; throw DomainError for fewer than 2 points.
double sample_variance(const Eigen::Ref<const ArrayXd>& x);
double sample_stddev(const Eigen::Ref<const ArrayXd>& x);
double sample_covariance(const Eigen::Ref<const ArrayXd>& x,
                         const Eigen::Ref<const ArrayXd>& y);

// Linear-interpolation quantile (the convention spreadsheets and most stats
// packages default to): rank h = (n-1)p, result x[floor h] interpolated
// toward x[floor h + 1]. `sorted` must be ascending.
double quantile_sorted(const std::vector<double>& sorted, double p);
double quantile(const Eigen::Ref<const ArrayXd>& x, double p);
double interquartile_range(const Eigen::Ref<const ArrayXd>& x);

// Regularized incomplete beta I_x(a, b) by continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

// Two-sided tail probability of Student's t with `df` degrees of freedom.
double student_t_two_sided_p(double t, double df);

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;
  // True when both group variances vanish; t/df/p are meaningless then.
  bool degenerate = false;
};

// Unpaired two-sample t-test with the Welch-Satterthwaite df correction.
WelchResult welch_t_test(const Eigen::Ref<const ArrayXd>& a,
                         const Eigen::Ref<const ArrayXd>& b);

}  // namespace entrorisk::stats
