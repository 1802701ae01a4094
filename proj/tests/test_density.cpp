#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "entrorisk/density.hpp"
#include "entrorisk/errors.hpp"
#include "entrorisk/rng.hpp"

using namespace entrorisk;

namespace {

Eigen::ArrayXd arr(std::initializer_list<double> xs) {
  Eigen::ArrayXd a(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) a(i++) = x;
  return a;
}

// Total mass of a piecewise-constant estimate.
double piecewise_mass(const DensityEstimate& d) {
  double m = 0.0;
  for (std::size_t j = 0; j + 1 < d.edges.size(); ++j)
    m += d.values[j] * (d.edges[j + 1] - d.edges[j]);
  return m;
}

Eigen::ArrayXd gaussian_sample(Eigen::Index n, std::uint64_t seed) {
  rng::SplitMix64 g(seed);
  Eigen::ArrayXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = g.normal();
  return x;
}

}  // namespace

TEST_CASE("method names round-trip") {
  for (auto m : {DensityMethod::Histogram, DensityMethod::Kernel,
                 DensityMethod::SpacingSimple, DensityMethod::SpacingCorrea})
    CHECK(density_method_from_name(density_method_name(m)) == m);
  CHECK_THROWS_AS(density_method_from_name("parzen"), DomainError);
}

TEST_CASE("bin count rules") {
  const Eigen::ArrayXd y =
      arr({0.1, 0.7, 1.3, 2.2, 3.1, 4.0, 4.9, 5.5, 6.8, 7.9});

  CHECK(bin_count(y, BinRule::fixed(17)).k == 17);
  CHECK_THROWS_AS(bin_count(y, BinRule::fixed(1)), DomainError);

  CHECK(bin_count(y, BinRule::sqrt_rule()).k == 4);  // ceil(sqrt(10))

  // ceil(range / (3.49 s n^(-1/3))) and ceil(range / (2 IQR n^(-1/3))),
  // cross-checked externally: range 7.8, s 2.63154, IQR 3.825.
  CHECK(bin_count(y, BinRule::scott()).k == 2);
  const BinChoice fd = bin_count(y, BinRule::freedman_diaconis());
  CHECK(fd.k == 3);
  CHECK_FALSE(fd.fd_fallback);

  // Collapsed IQR: fall back to the sqrt rule and flag it.
  const Eigen::ArrayXd spike = arr({0, 0, 0, 0, 0, 0, 0, 1});
  const BinChoice fb = bin_count(spike, BinRule::freedman_diaconis());
  CHECK(fb.k == 3);  // ceil(sqrt(8))
  CHECK(fb.fd_fallback);

  CHECK_THROWS_AS(bin_count(arr({1, 2, 3}), BinRule::sqrt_rule()), DomainError);
  CHECK_THROWS_AS(bin_count(arr({2, 2, 2, 2}), BinRule::scott()), DomainError);
}

TEST_CASE("histogram worked example") {
  const DensityEstimate d = histogram_density(arr({0.0, 0.5, 1.0}),
                                              BinRule::fixed(2));
  CHECK(d.bins == 2);
  CHECK(d.bin_width == 0.5);
  REQUIRE(d.counts.size() == 2);
  CHECK(d.counts[0] == 2);  // edge value 0.5 counts left
  CHECK(d.counts[1] == 1);
  CHECK(d.values[0] == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(d.values[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(d.evaluate(0.25) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(d.evaluate(0.5) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(d.evaluate(0.75) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(d.evaluate(0.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(d.evaluate(1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(d.evaluate(-0.01) == 0.0);
  CHECK(d.evaluate(1.01) == 0.0);
  CHECK(d.piecewise());
}

TEST_CASE("histogram edge assignment and mass") {
  const DensityEstimate d =
      histogram_density(arr({0, 1, 2, 2, 3, 5, 6}), BinRule::fixed(3));
  REQUIRE(d.counts.size() == 3);
  CHECK(d.counts[0] == 4);  // 0, 1, 2, 2 (edge 2 counts left)
  CHECK(d.counts[1] == 1);  // 3
  CHECK(d.counts[2] == 2);  // 5, 6
  CHECK(piecewise_mass(d) == doctest::Approx(1.0).epsilon(1e-14));

  // Binning agrees with an independent implementation of the same
  // right-closed scheme on an irregular sample.
  const Eigen::ArrayXd s = arr(
      {0.304717, -1.039984, 0.750451, 0.940565, -1.951035, -1.30218, 0.12784,
       -0.316243, -0.016801, -0.853044, 0.879398, 0.777792, 0.066031,
       1.127241, 0.467509, -0.859292, 0.368751, -0.958883, 0.87845,
       -0.049926, -0.184862, -0.68093, 1.222541, -0.154529, -0.428328,
       -0.352134, 0.532309, 0.365444, 0.412733, 0.430821, 2.141648,
       -0.406415, -0.512243, -0.813773, 0.615979, 1.128972, -0.113947,
       -0.840156, -0.824481, 0.650593, 0.743254, 0.543154, -0.66551,
       0.232161, 0.116686, 0.218689, 0.871429, 0.223596, 0.678914, 0.067579,
       0.289119, 0.631288, -1.457156, -0.319671, -0.470373, -0.638878,
       -0.275142, 1.494941, -0.865831, 0.968278});
  const DensityEstimate g = histogram_density(s, BinRule::fixed(7));
  const std::vector<std::int64_t> expected{2, 9, 11, 16, 17, 4, 1};
  CHECK(g.counts == expected);
  CHECK(piecewise_mass(g) == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(histogram_density(arr({1.0}), BinRule::fixed(2)),
                  DomainError);
  CHECK_THROWS_WITH_AS(histogram_density(arr({3, 3, 3}), BinRule::fixed(2)),
                       doctest::Contains("zero range"), DomainError);
}

TEST_CASE("quadratic kernel shape") {
  CHECK(epanechnikov(0.0) == 0.75);
  CHECK(epanechnikov(1.0) == 0.0);
  CHECK(epanechnikov(-1.0) == 0.0);
  CHECK(epanechnikov(0.5) == doctest::Approx(0.5625).epsilon(1e-15));
  CHECK(epanechnikov(1.0001) == 0.0);
  CHECK(epanechnikov(-3.0) == 0.0);
}

TEST_CASE("bandwidth rule") {
  // 1.06 * min(sd, IQR/1.34) * n^(-1/5) on {1..5}: sd = 1.5811388300841898,
  // IQR = 2 (externally cross-checked).
  CHECK(silverman_bandwidth(arr({1, 2, 3, 4, 5})) ==
        doctest::Approx(1.1466663335796377).epsilon(1e-15));

  // IQR collapses but the sample still has spread: fall back to sd.
  const Eigen::ArrayXd spike = arr({0, 0, 0, 0, 0, 0, 0, 10});
  const double sd = std::sqrt(spike.size() / (spike.size() - 1.0) *
                              (spike - spike.mean()).square().mean());
  CHECK(silverman_bandwidth(spike) ==
        doctest::Approx(1.06 * sd * std::pow(8.0, -0.2)).epsilon(1e-13));

  CHECK_THROWS_WITH_AS(silverman_bandwidth(arr({2, 2, 2})),
                       doctest::Contains("zero bandwidth"), DomainError);
}

TEST_CASE("kernel estimate evaluates exact window sums") {
  const DensityEstimate d = kernel_density(arr({0.0, 1.0}), 1.0);
  CHECK(d.support_lo == -1.0);
  CHECK(d.support_hi == 2.0);
  CHECK_FALSE(d.piecewise());
  CHECK(d.evaluate(0.5) == doctest::Approx(0.5625).epsilon(1e-14));
  CHECK(d.evaluate(0.0) == doctest::Approx(0.375).epsilon(1e-14));
  CHECK(d.evaluate(0.25) == doctest::Approx(0.515625).epsilon(1e-14));
  CHECK(d.evaluate(-1.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(d.evaluate(2.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(d.evaluate(-5.0) == 0.0);

  // Mass over the support integrates to 1 (each kernel bump fully inside).
  const int grid = 200001;
  const double step = (d.support_hi - d.support_lo) / (grid - 1);
  double mass = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double v = d.evaluate(d.support_lo + step * i);
    mass += (i == 0 || i == grid - 1) ? 0.5 * v : v;
  }
  mass *= step;
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));

  // Brute-force agreement on a bigger sample.
  const Eigen::ArrayXd s = gaussian_sample(300, 17);
  const double h = silverman_bandwidth(s);
  const DensityEstimate k = kernel_density(s, h);
  for (double x : {-2.0, -0.5, 0.0, 0.3, 1.7}) {
    double brute = 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
      brute += epanechnikov((x - s(i)) / h);
    brute /= static_cast<double>(s.size()) * h;
    CHECK(k.evaluate(x) == doctest::Approx(brute).epsilon(1e-11));
  }

  CHECK_THROWS_AS(kernel_density(arr({1.0, 2.0}), 0.0), DomainError);
  CHECK_THROWS_AS(kernel_density(arr({1.0, 2.0}), -1.0), DomainError);
}

TEST_CASE("block spacing worked examples") {
  const DensityEstimate d1 = spacing_density_simple(arr({0, 1, 2, 3}), 1);
  REQUIRE(d1.values.size() == 3);
  for (double v : d1.values) CHECK(v == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(d1.counts == std::vector<std::int64_t>{1, 1, 1});
  CHECK(piecewise_mass(d1) == doctest::Approx(0.75).epsilon(1e-15));

  const DensityEstimate d2 = spacing_density_simple(arr({0, 1, 3, 6, 10}), 2);
  REQUIRE(d2.values.size() == 2);
  CHECK(d2.edges == std::vector<double>{0, 3, 10});
  CHECK(d2.values[0] == doctest::Approx(2.0 / 15.0).epsilon(1e-15));
  CHECK(d2.values[1] == doctest::Approx(2.0 / 35.0).epsilon(1e-15));
  CHECK(piecewise_mass(d2) == doctest::Approx(0.8).epsilon(1e-15));

  // Final partial block keeps its own gap count.
  const DensityEstimate d3 = spacing_density_simple(arr({0, 1, 3, 6, 10}), 3);
  REQUIRE(d3.values.size() == 2);
  CHECK(d3.values[0] == doctest::Approx(0.1).epsilon(1e-15));   // 3/(5*6)
  CHECK(d3.values[1] == doctest::Approx(0.05).epsilon(1e-15));  // 1/(5*4)
  CHECK(d3.counts == std::vector<std::int64_t>{3, 1});

  CHECK(d2.evaluate(0.5) == doctest::Approx(2.0 / 15.0).epsilon(1e-15));
  CHECK(d2.evaluate(3.0) == doctest::Approx(2.0 / 35.0).epsilon(1e-15));
  CHECK(d2.evaluate(10.0) == doctest::Approx(2.0 / 35.0).epsilon(1e-15));
  CHECK(d2.evaluate(-0.1) == 0.0);
  CHECK(d2.evaluate(10.1) == 0.0);

  CHECK_THROWS_WITH_AS(spacing_density_simple(arr({0, 1, 2}), 3),
                       doctest::Contains("order too large"), DomainError);
  CHECK_THROWS_AS(spacing_density_simple(arr({0, 1, 2}), 0), DomainError);
  CHECK_THROWS_WITH_AS(spacing_density_simple(arr({5, 5, 5, 5}), 1),
                       doctest::Contains("zero range"), DomainError);
}

TEST_CASE("block spacing mass is (n-1)/n for every order") {
  const Eigen::ArrayXd s = gaussian_sample(101, 23);
  for (int m : {1, 2, 5, 10, 50}) {
    const DensityEstimate d = spacing_density_simple(s, m);
    CHECK(piecewise_mass(d) == doctest::Approx(100.0 / 101.0).epsilon(1e-12));
    for (double v : d.values) CHECK(v > 0.0);
  }
}

TEST_CASE("local-slope spacing worked examples") {
  // Uniform spacing: raw 0.2 everywhere; mass 0.8 renormalizes to 0.25.
  const DensityEstimate u = spacing_density_correa(arr({0, 1, 2, 3, 4}), 2);
  REQUIRE(u.values.size() == 4);
  for (double v : u.values) CHECK(v == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(u.raw_mass == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(piecewise_mass(u) == doctest::Approx(1.0).epsilon(1e-13));

  // Irregular spacing, cross-checked against an independent replica.
  const DensityEstimate d = spacing_density_correa(arr({0, 1, 3, 6, 10}), 2);
  REQUIRE(d.values.size() == 4);
  CHECK(d.raw_mass == doctest::Approx(0.9210119894330421).epsilon(1e-14));
  const double expected_values[] = {0.21715243915892593, 0.13959799660216665,
                                    0.08571806808904969, 0.06162434084239791};
  const double expected_raw[] = {0.2, 0.12857142857142856,
                                 0.07894736842105261, 0.05675675675675677};
  for (int i = 0; i < 4; ++i) {
    CHECK(d.values[i] == doctest::Approx(expected_values[i]).epsilon(1e-13));
    CHECK(d.values[i] * d.raw_mass ==
          doctest::Approx(expected_raw[i]).epsilon(1e-13));
  }
  CHECK(piecewise_mass(d) == doctest::Approx(1.0).epsilon(1e-13));

  CHECK_THROWS_AS(spacing_density_correa(arr({0, 1, 2, 3}), 1), DomainError);
  CHECK_THROWS_WITH_AS(spacing_density_correa(arr({0, 1}), 2),
                       doctest::Contains("order too large"), DomainError);
}

TEST_CASE("local-slope spacing stays a density on random data") {
  const Eigen::ArrayXd s = gaussian_sample(400, 5);
  for (int m : {2, 5, 20}) {
    const DensityEstimate d = spacing_density_correa(s, m);
    CHECK(piecewise_mass(d) == doctest::Approx(1.0).epsilon(1e-12));
    for (double v : d.values) CHECK(v >= 0.0);
  }
}

TEST_CASE("tied samples get a deterministic nudge") {
  const Eigen::ArrayXd tied = arr({1, 1, 1, 2, 2, 3});
  const DensityEstimate a = spacing_density_simple(tied, 2);
  const DensityEstimate b = spacing_density_simple(tied, 2);
  CHECK(a.values == b.values);
  CHECK(a.edges == b.edges);
  for (double v : a.values) {
    CHECK(std::isfinite(v));
    CHECK(v > 0.0);
  }
  const DensityEstimate c = spacing_density_correa(tied, 2);
  CHECK(piecewise_mass(c) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("spacing order from a bin budget") {
  CHECK(spacing_order(1000, 175) == 6);
  CHECK(spacing_order(100, 7) == 15);
  CHECK(spacing_order(10, 1) == 10);
  CHECK(spacing_order(175, 175) == 1);
  CHECK(spacing_order(176, 175) == 2);
  CHECK_THROWS_AS(spacing_order(0, 5), DomainError);
  CHECK_THROWS_AS(spacing_order(5, 0), DomainError);
}
