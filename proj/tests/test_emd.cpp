#include <doctest.h>

#include <cmath>
#include <vector>

#include "met/emd.hpp"
#include "met/errors.hpp"
#include "met/graph.hpp"
#include "met/roots.hpp"
#include "met/semicircle.hpp"
#include "met/treewalk.hpp"

using namespace met;

TEST_CASE("construction sorts; empty samples are rejected") {
  const EmpiricalDistribution d({2.0, -1.0, 0.5});
  CHECK(d.sample() == std::vector<double>{-1.0, 0.5, 2.0});
  CHECK(d.size() == 3);
  CHECK_THROWS_AS(EmpiricalDistribution({}), DomainError);
}

TEST_CASE("step cdf semantics") {
  const EmpiricalDistribution d({-1.0, 0.0, 2.0});
  CHECK(d.eval(-2.0) == 0.0);
  CHECK(d.eval(-1.0) == doctest::Approx(1.0 / 3));  // right continuous
  CHECK(d.eval(-0.5) == doctest::Approx(1.0 / 3));
  CHECK(d.eval(0.0) == doctest::Approx(2.0 / 3));
  CHECK(d.eval(1.9) == doctest::Approx(2.0 / 3));
  CHECK(d.eval(2.0) == doctest::Approx(1.0));
  CHECK(d.eval(99.0) == 1.0);
}

TEST_CASE("moments and mean absolute value") {
  const EmpiricalDistribution d({-2.0, 1.0, 3.0});
  CHECK(d.moment(0) == doctest::Approx(1.0));
  CHECK(d.moment(1) == doctest::Approx(2.0 / 3));
  CHECK(d.moment(2) == doctest::Approx(14.0 / 3));
  CHECK(d.moment(3) == doctest::Approx(20.0 / 3));
  CHECK(d.mean_abs() == doctest::Approx(2.0));
  CHECK_THROWS_AS(d.moment(-1), DomainError);
}

TEST_CASE("ks distance hand cases") {
  // Single sample at 0: F_n jumps 0 -> 1 there while F_sc(0) = 1/2, and both
  // sides of the jump are off by exactly 1/2.
  CHECK(EmpiricalDistribution({0.0}).ks_distance() == doctest::Approx(0.5));
  // All mass outside the support: at x = -3, F_n reaches 1/2 with F_sc = 0.
  CHECK(EmpiricalDistribution({-4.0, -3.0, 3.0, 4.0}).ks_distance() ==
        doctest::Approx(0.5));
}

TEST_CASE("ks distance vanishes on a quantile grid") {
  // Place sample i at the (i+1/2)/n semicircle quantile (bisected); the KS
  // statistic of such a sample is exactly 1/(2n).
  const int n = 400;
  std::vector<double> sample;
  for (int i = 0; i < n; ++i) {
    const double target = (i + 0.5) / n;
    double lo = -2.0, hi = 2.0;
    for (int it = 0; it < 60; ++it) {
      const double mid = (lo + hi) / 2;
      (semicircle::cdf(mid) < target ? lo : hi) = mid;
    }
    sample.push_back((lo + hi) / 2);
  }
  const EmpiricalDistribution d(std::move(sample));
  CHECK(d.ks_distance() == doctest::Approx(1.0 / (2 * n)).epsilon(1e-6));
}

TEST_CASE("normalized complete graph second moment") {
  // At p = 1, sum x_i^2 = 2 m_1 = n(n-1), so moment(2) = (n-1)/n exactly.
  const int n = 50;
  const NormalizedSpectrum ns = normalize(complete_spectrum_fast(n), n, 1.0);
  const EmpiricalDistribution d = EmpiricalDistribution::from_spectrum(ns);
  CHECK(d.moment(2) == doctest::Approx((n - 1.0) / n).epsilon(1e-12));
}

TEST_CASE("sample moments agree with polynomial power sums") {
  // n (np)^(k/2) moment(k) equals the k-th power sum of the raw roots.
  const Graph g = gen_gnp(14, 0.5, SeedSpec{909});
  const MatchingPolynomial poly = matching_counts(g);
  const NormalizedSpectrum ns = normalize(matching_roots(poly), 14, 0.5);
  const EmpiricalDistribution d = EmpiricalDistribution::from_spectrum(ns);
  const std::vector<mpz_class> ps = power_sums(poly, 6);
  for (int k : {2, 4, 6}) {
    const double raw =
        d.moment(k) * 14.0 * std::pow(14.0 * 0.5, k / 2.0);
    CHECK(raw == doctest::Approx(ps[static_cast<std::size_t>(k - 1)].get_d())
                     .epsilon(1e-6));
  }
}
