// SPDX-License-Identifier: Apache-2.0
#include "sddesim/stats.hpp"

#include <algorithm>
#include <vector>

namespace sddesim {

double ks_distance(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw InputError("KS distance needs nonempty samples");
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  double best = 0.0;
  std::size_t ia = 0;
  std::size_t ib = 0;
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  while (ia < sa.size() && ib < sb.size()) {
    const double z = std::min(sa[ia], sb[ib]);
    while (ia < sa.size() && sa[ia] <= z) ++ia;
    while (ib < sb.size() && sb[ib] <= z) ++ib;
    best = std::max(best, std::abs(static_cast<double>(ia) / na - static_cast<double>(ib) / nb));
  }
  return best;
}

double binned_tv_distance(std::span<const double> a, std::span<const double> b, int bins) {
  if (a.empty() || b.empty()) throw InputError("TV distance needs nonempty samples");
  if (bins < 1) throw InputError("TV distance needs at least one bin");
  double lo = a[0];
  double hi = a[0];
  for (double v : a) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  for (double v : b) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (lo == hi) return 0.0;
  const double width = (hi - lo) / bins;
  std::vector<double> pa(static_cast<std::size_t>(bins), 0.0);
  std::vector<double> pb(static_cast<std::size_t>(bins), 0.0);
  const auto bin_of = [&](double v) {
    int k = static_cast<int>((v - lo) / width);
    return std::clamp(k, 0, bins - 1);
  };
  for (double v : a) pa[static_cast<std::size_t>(bin_of(v))] += 1.0 / static_cast<double>(a.size());
  for (double v : b) pb[static_cast<std::size_t>(bin_of(v))] += 1.0 / static_cast<double>(b.size());
  double total = 0.0;
  for (int k = 0; k < bins; ++k) {
    total += std::abs(pa[static_cast<std::size_t>(k)] - pb[static_cast<std::size_t>(k)]);
  }
  return total;
}

}  // namespace sddesim
