// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "sddesim/girsanov.hpp"
#include "sddesim/stats.hpp"

using namespace sddesim;

TEST_CASE("drift adjustment solves sigma a = B + b") {
  SUBCASE("no drift gives a = 0 exactly") {
    const ModelSpec model = catalog::make("brownian");
    const Segment x = embed_constant(0.3, 1.0, 0.25);
    const PathRealization path = simulate_driftfree(model, x, 1.0, NoiseStream(3, 0));
    CHECK(drift_adjustment(model, path, 0.5)[0] == 0.0);
  }

  SUBCASE("sigma = 2 I with B = 1 gives a = 0.5") {
    const ModelSpec model =
        catalog::make("sgn-delay-drift", [](const std::string& key, double fallback) {
          return key == "sigma" ? 2.0 : fallback;
        });
    const Segment x = embed_constant(0.7, 1.0, 0.25);  // nonnegative lag: B = +1
    const PathRealization path = simulate_driftfree(model, x, 0.25, NoiseStream(3, 0));
    CHECK(drift_adjustment(model, path, 0.0)[0] == doctest::Approx(0.5));
  }

  SUBCASE("lower-triangular sigma solves by substitution") {
    ModelSpec model = catalog::make("brownian", [](const std::string& key, double fallback) {
      return key == "dim" ? 2.0 : fallback;
    });
    model.point_drift = [](double, const Eigen::Ref<const Vec>&, Eigen::Ref<Vec> out) {
      out.setConstant(1.0);
    };
    model.diffusion = [](double, const Eigen::Ref<const Vec>&, Eigen::Ref<Mat> out) {
      out << 1.0, 0.0, 1.0, 1.0;
    };
    Vec head = Vec::Zero(2);
    const Segment x = embed_constant(head, 1.0, 0.25);
    const PathRealization path = simulate_driftfree(model, x, 0.25, NoiseStream(3, 0));
    const Vec a = drift_adjustment(model, path, 0.0);
    CHECK(a[0] == doctest::Approx(1.0));
    CHECK(a[1] == doctest::Approx(0.0));
  }

  SUBCASE("singular sigma raises a degeneracy error") {
    ModelSpec model = catalog::make("constant-drift");
    model.diffusion = [](double, const Eigen::Ref<const Vec>&, Eigen::Ref<Mat> out) {
      out.setZero();
    };
    const Segment x = embed_constant(0.0, 1.0, 0.25);
    PathRealization path;
    {
      // Build the path with a healthy diffusion, then reweight under the
      // degenerate one.
      const ModelSpec healthy = catalog::make("constant-drift");
      path = simulate_driftfree(healthy, x, 0.5, NoiseStream(3, 0));
    }
    CHECK_THROWS_AS(drift_adjustment(model, path, 0.25), DegeneracyError);
  }
}

TEST_CASE("log weight accumulation") {
  SUBCASE("zero adjustment keeps the weight at one") {
    const ModelSpec model = catalog::make("brownian");
    const Segment x = embed_constant(0.0, 1.0, 0.1);
    const PathRealization path = simulate_driftfree(model, x, 1.0, NoiseStream(9, 4));
    const LogWeightSeries series = accumulate_log_weight(model, path);
    CHECK(series.log_weight.front() == 0.0);
    for (double lw : series.log_weight) CHECK(lw == 0.0);
    CHECK(series.weight_at(1.0) == 1.0);
  }

  SUBCASE("constant adjustment has the lognormal closed form") {
    // b = c, sigma = 1: log D(t) = c W(t) - c^2 t / 2 with W(t) the summed
    // increments; check the identity pathwise against the noise record.
    const double c = 0.8;
    const ModelSpec model = catalog::make("constant-drift", [&](const std::string& key, double fb) {
      return key == "c" ? c : fb;
    });
    const Segment x = embed_constant(0.0, 1.0, 0.01);
    const PathRealization path = simulate_driftfree(model, x, 1.0, NoiseStream(9, 11));
    const LogWeightSeries series = accumulate_log_weight(model, path);
    double brownian = 0.0;
    double time = 0.0;
    for (int k = 0; k < path.grid.horizon_steps(); ++k) {
      brownian += path.noise[static_cast<std::size_t>(k)];
      time += path.grid.dt();
    }
    CHECK(series.log_weight.back() ==
          doctest::Approx(c * brownian - 0.5 * c * c * time).epsilon(1e-12));

    // Quadratic variation is deterministic here and nondecreasing always.
    for (std::size_t k = 1; k < series.quad_variation.size(); ++k) {
      CHECK(series.quad_variation[k] >= series.quad_variation[k - 1]);
    }
    CHECK(series.quad_variation.back() == doctest::Approx(c * c * 1.0).epsilon(1e-12));
  }

  SUBCASE("mean weight is one and log-weight variance is c^2 at t = 1") {
    const double c = 1.0;
    const ModelSpec model = catalog::make("constant-drift");
    const Segment x = embed_constant(0.0, 1.0, 0.01);
    const std::size_t n = 20000;
    std::vector<double> weights(n);
    std::vector<double> log_weights(n);
    for (std::size_t r = 0; r < n; ++r) {
      const PathRealization path = simulate_driftfree(model, x, 1.0, NoiseStream(71, r));
      const LogWeightSeries series = accumulate_log_weight(model, path);
      log_weights[r] = series.log_weight_at(1.0);
      weights[r] = series.weight_at(1.0);
    }
    const MomentSummary w = summarize(weights);
    CHECK(std::abs(w.mean - 1.0) <= 3.0 * w.std_error);
    const MomentSummary lw = summarize(log_weights);
    // Var log D(1) = c^2; the sample variance estimator has SE ~ c^2 sqrt(2/n).
    CHECK(std::abs(lw.variance - c * c) <= 3.0 * c * c * std::sqrt(2.0 / static_cast<double>(n)));
  }
}

TEST_CASE("weak expectation") {
  SUBCASE("without drift it coincides with plain Monte Carlo bitwise") {
    const ModelSpec model = catalog::make("brownian");
    const Segment x = embed_constant(0.0, 1.0, 0.05);
    const auto head = [](const SegmentView& seg) { return seg.head()[0]; };
    const WeightedEstimate weighted = weak_expectation(model, x, head, 1.0, 500, 13);

    std::vector<double> plain(500);
    for (std::size_t r = 0; r < plain.size(); ++r) {
      const PathRealization path = simulate_driftfree(model, x, 1.0, NoiseStream(13, r));
      plain[r] = path.value_at_time(1.0)[0];
    }
    CHECK(weighted.estimate == mean(plain));
    CHECK(weighted.mean_weight == 1.0);
  }

  SUBCASE("unit constant drift shifts the head expectation to one") {
    const ModelSpec model = catalog::make("constant-drift");
    const Segment x = embed_constant(0.0, 1.0, 0.01);
    const auto head = [](const SegmentView& seg) { return seg.head()[0]; };
    const WeightedEstimate est = weak_expectation(model, x, head, 1.0, 20000, 29);
    CHECK(std::abs(est.estimate - 1.0) <= 3.0 * est.std_error);
  }

  SUBCASE("discontinuous lagged drift still lands on the pathwise identity") {
    const ModelSpec model = catalog::make("sgn-delay-drift");
    const Segment x = embed_constant(0.0, 1.0, 0.01);
    const auto head = [](const SegmentView& seg) { return seg.head()[0]; };
    const WeightedEstimate est = weak_expectation(model, x, head, 1.0, 20000, 31);
    CHECK(std::abs(est.estimate - 1.0) <= 3.0 * est.std_error);
  }

  SUBCASE("f == 1 returns exactly the mean weight") {
    const ModelSpec model = catalog::make("constant-drift");
    const Segment x = embed_constant(0.0, 1.0, 0.05);
    const auto one = [](const SegmentView&) { return 1.0; };
    const WeightedEstimate est = weak_expectation(model, x, one, 1.0, 2000, 37);
    CHECK(est.estimate == est.mean_weight);
    CHECK(est.std_error == est.mean_weight_std_error);
  }

  SUBCASE("self-normalized estimator stays close to the raw one") {
    const ModelSpec model = catalog::make("constant-drift");
    const Segment x = embed_constant(0.0, 1.0, 0.01);
    const auto head = [](const SegmentView& seg) { return seg.head()[0]; };
    WeakExpectationOptions options;
    options.self_normalized = true;
    const WeightedEstimate est = weak_expectation(model, x, head, 1.0, 20000, 29, options);
    CHECK(std::abs(est.estimate - 1.0) <= 4.0 * est.std_error + 0.02);
  }

  SUBCASE("heavy-tailed weights trigger the low-ESS warning") {
    const ModelSpec model = catalog::make("constant-drift", [](const std::string& key, double fb) {
      return key == "c" ? 30.0 : fb;
    });
    const Segment x = embed_constant(0.0, 1.0, 0.01);
    const auto one = [](const SegmentView&) { return 1.0; };
    const WeightedEstimate est = weak_expectation(model, x, one, 1.0, 500, 41);
    CHECK(est.low_ess_warning);
  }
}

TEST_CASE("weight diagnostics") {
  SUBCASE("all-one weights") {
    std::vector<LogWeightSeries> series(8);
    for (auto& s : series) {
      s.dt = 0.5;
      s.log_weight = {0.0, 0.0, 0.0};
      s.quad_variation = {0.0, 0.0, 0.0};
    }
    const WeightDiagnostics d = weight_diagnostics(series, 1.0);
    CHECK(d.mean_weight == doctest::Approx(1.0));
    CHECK(d.ess == doctest::Approx(8.0));
    CHECK(d.novikov_estimate == doctest::Approx(1.0));
  }

  SUBCASE("constant adjustment of size one: deterministic Novikov factor exp(1/2)") {
    const ModelSpec model = catalog::make("constant-drift");
    const Segment x = embed_constant(0.0, 1.0, 0.01);
    std::vector<LogWeightSeries> series;
    for (std::uint64_t r = 0; r < 400; ++r) {
      const PathRealization path = simulate_driftfree(model, x, 1.0, NoiseStream(53, r));
      series.push_back(accumulate_log_weight(model, path));
    }
    const WeightDiagnostics d = weight_diagnostics(series, 1.0);
    CHECK(d.novikov_estimate == doctest::Approx(std::exp(0.5)).epsilon(1e-12));
    CHECK(d.novikov_std_error == doctest::Approx(0.0));
    CHECK(std::abs(d.mean_weight - 1.0) <= 3.0 * d.mean_weight_std_error);
  }

  SUBCASE("one dominating weight collapses the ESS") {
    std::vector<LogWeightSeries> series(16);
    for (std::size_t i = 0; i < series.size(); ++i) {
      series[i].dt = 1.0;
      series[i].log_weight = {0.0, i == 3 ? 10.0 : -10.0};
      series[i].quad_variation = {0.0, 1.0};
    }
    const WeightDiagnostics d = weight_diagnostics(series, 1.0);
    CHECK(d.ess == doctest::Approx(1.0).epsilon(1e-6));
  }

  SUBCASE("empty input is rejected") {
    CHECK_THROWS_AS(weight_diagnostics({}, 1.0), InputError);
  }
}

TEST_CASE("log-domain accumulation stays finite for large adjustments") {
  // |a| = 1e3 over T = 10 at dt = 1e-3: log weights reach ~ -5e6 without
  // overflowing; the exponentiated weight underflows to zero gracefully.
  const ModelSpec model = catalog::make("constant-drift", [](const std::string& key, double fb) {
    return key == "c" ? 1e3 : fb;
  });
  const Segment x = embed_constant(0.0, 1.0, 1e-3);
  const PathRealization path = simulate_driftfree(model, x, 10.0, NoiseStream(61, 0));
  const LogWeightSeries series = accumulate_log_weight(model, path);
  for (double lw : series.log_weight) CHECK(std::isfinite(lw));
  CHECK(series.log_weight.back() < -1e5);
}

TEST_CASE("paths without an increment record cannot be reweighted") {
  const ModelSpec model = catalog::make("constant-drift");
  PathRealization path;
  path.grid = TimeGrid(1.0, 1.0, 0.5);
  path.dim = 1;
  path.values.assign(static_cast<std::size_t>(path.grid.total_nodes()), 0.0);
  path.noise.clear();
  CHECK_THROWS_AS(accumulate_log_weight(model, path), InputError);
}
