// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "sddesim/rng.hpp"
#include "sddesim/stats.hpp"

using namespace sddesim;

TEST_CASE("brownian increments basics") {
  const NoiseStream stream(7, 3);
  CHECK(brownian_increments(stream, 0, 0.01, 1).empty());

  // Gaussian moments: mean of 1e6 scalar increments with dt = 0.01 sits
  // within 4e-4 of zero (3 standard errors of 1e-4).
  const auto increments = brownian_increments(stream, 1000000, 0.01, 1);
  CHECK(std::abs(mean(increments)) < 4e-4);

  // Variance close to dt.
  const MomentSummary s = summarize(increments);
  CHECK(s.variance == doctest::Approx(0.01).epsilon(0.01));
}

TEST_CASE("noise streams are deterministic and replica-independent") {
  const NoiseStream a(123, 5);
  const NoiseStream b(123, 5);
  const NoiseStream c(123, 6);
  const auto inc_a = brownian_increments(a, 256, 0.5, 2);
  const auto inc_b = brownian_increments(b, 256, 0.5, 2);
  const auto inc_c = brownian_increments(c, 256, 0.5, 2);
  CHECK(inc_a == inc_b);  // bitwise reproducible
  CHECK(inc_a != inc_c);  // distinct replica stream

  // gaussian(i) agrees with the pairwise variant.
  double g0 = 0.0;
  double g1 = 0.0;
  a.gaussian_pair(17, g0, g1);
  CHECK(a.gaussian(34) == g0);
  CHECK(a.gaussian(35) == g1);
}

TEST_CASE("stream moments") {
  const NoiseStream stream(99, 0);
  std::vector<double> sample(100000);
  for (std::size_t i = 0; i < sample.size(); ++i) sample[i] = stream.gaussian(i);
  const MomentSummary s = summarize(sample);
  CHECK(std::abs(s.mean) < 3.0 * s.std_error + 1e-3);
  CHECK(s.variance == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("pairwise sum matches sequential") {
  std::vector<double> values(10001);
  const NoiseStream stream(11, 0);
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = stream.gaussian(i);
  const double sequential = std::accumulate(values.begin(), values.end(), 0.0);
  CHECK(pairwise_sum(values) == doctest::Approx(sequential).epsilon(1e-12));
  CHECK(pairwise_sum(values) == pairwise_sum(values));  // order-fixed, reproducible
}

TEST_CASE("normal cdf reference points") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
  CHECK(normal_cdf(1.0) == doctest::Approx(0.841344746068543).epsilon(1e-12));
  CHECK(normal_cdf(-1.96) == doctest::Approx(0.0249978951482204).epsilon(1e-9));
}

TEST_CASE("line fit recovers an exact line") {
  const std::vector<double> x = {0.0, 1.0, 2.0, 3.0};
  std::vector<double> y;
  for (double xi : x) y.push_back(2.5 * xi - 0.75);
  const LineFit fit = fit_line(x, y);
  CHECK(fit.slope == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(-0.75).epsilon(1e-12));
  CHECK(fit.slope_std_error == doctest::Approx(0.0));
}

TEST_CASE("KS distance and critical value") {
  const std::vector<double> sample = {0.1, 0.5, 0.9, 1.4};
  CHECK(ks_distance(sample, sample) == 0.0);

  // One-point shift of a two-point sample has KS 1/2.
  CHECK(ks_distance(std::vector<double>{0.0, 1.0}, std::vector<double>{0.5, 1.0}) ==
        doctest::Approx(0.5));

  const double critical = ks_critical_value(100000, 100000, 0.01);
  CHECK(critical == doctest::Approx(std::sqrt(-0.5 * std::log(0.005)) * std::sqrt(2.0 / 100000.0))
                        .epsilon(1e-12));
  CHECK_THROWS_AS(ks_critical_value(0, 10, 0.01), InputError);
  CHECK_THROWS_AS(ks_distance(std::vector<double>{}, sample), InputError);
}

TEST_CASE("binned TV distance") {
  const std::vector<double> sample = {0.0, 0.25, 0.5, 1.0};
  CHECK(binned_tv_distance(sample, sample) == 0.0);
  // Disjoint supports give the maximal value 2.
  CHECK(binned_tv_distance(std::vector<double>{0.0, 0.1}, std::vector<double>{10.0, 10.1}) ==
        doctest::Approx(2.0));
}

TEST_CASE("effective sample size") {
  const std::vector<double> uniform(64, 1.0);
  CHECK(effective_sample_size(uniform) == doctest::Approx(64.0));
  std::vector<double> dominated(64, 1e-12);
  dominated[5] = 1.0;
  CHECK(effective_sample_size(dominated) == doctest::Approx(1.0).epsilon(1e-6));
}
