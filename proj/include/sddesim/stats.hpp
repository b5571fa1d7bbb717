// SPDX-License-Identifier: Apache-2.0
//
// Small numeric helpers shared across modules: deterministic pairwise
// reductions, moment summaries, the standard normal CDF, least squares on a
// line, and distribution distances.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "sddesim/errors.hpp"

namespace sddesim {

// Pairwise (cascade) sum: result depends only on the element order, not on
// any threading, and rounding error grows like log(n).
inline double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

inline double mean(std::span<const double> values) {
  if (values.empty()) throw InputError("mean of empty sample");
  return pairwise_sum(values) / static_cast<double>(values.size());
}

struct MomentSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased, 0 when count < 2
  double std_error = 0.0;
};

inline MomentSummary summarize(std::span<const double> values) {
  MomentSummary s;
  s.count = values.size();
  if (s.count == 0) throw InputError("summary of empty sample");
  s.mean = mean(values);
  if (s.count >= 2) {
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double d = values[i] - s.mean;
      sq[i] = d * d;
    }
    s.variance = pairwise_sum(sq) / static_cast<double>(s.count - 1);
    s.std_error = std::sqrt(s.variance / static_cast<double>(s.count));
  }
  return s;
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

inline double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * 3.14159265358979323846);
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_std_error = 0.0;
};

// Ordinary least squares y = intercept + slope * x.
inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw InputError("line fit needs >= 2 points");
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw InputError("line fit abscissae are all equal");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (x.size() > 2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - fit.intercept - fit.slope * x[i];
      rss += r * r;
    }
    fit.slope_std_error = std::sqrt(rss / static_cast<double>(x.size() - 2) / sxx);
  }
  return fit;
}

// (sum w)^2 / sum w^2 — the effective sample size of a weighted sample.
inline double effective_sample_size(std::span<const double> weights) {
  if (weights.empty()) throw InputError("ESS of empty sample");
  std::vector<double> sq(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) sq[i] = weights[i] * weights[i];
  const double sum = pairwise_sum(weights);
  const double sum_sq = pairwise_sum(sq);
  if (sum_sq == 0.0) return 0.0;
  return sum * sum / sum_sq;
}

// Two-sample Kolmogorov-Smirnov statistic, sup_z |F_a(z) - F_b(z)|.
double ks_distance(std::span<const double> a, std::span<const double> b);

// Large-sample two-sample KS critical value at significance alpha.
inline double ks_critical_value(std::size_t n, std::size_t m, double alpha) {
  if (n == 0 || m == 0) throw InputError("KS critical value needs nonempty samples");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("alpha must lie in (0, 1)");
  const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  return c * std::sqrt(static_cast<double>(n + m) / (static_cast<double>(n) * static_cast<double>(m)));
}

// L1 distance between binned empirical densities on equal-width bins
// spanning the pooled range; values in [0, 2].
double binned_tv_distance(std::span<const double> a, std::span<const double> b, int bins = 64);

}  // namespace sddesim
