#pragma once

#include <span>
#include <vector>

namespace pairlink {

/// 1-based fractional ranks; tied values share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> v);

/// Pearson correlation of the average ranks. Returns NaN when either side is constant.
double spearman_rho(std::span<const double> a, std::span<const double> b);

/// Kendall τ-b in O(n log n) (Knight's merge-sort algorithm). Returns NaN when
/// either side is constant.
double kendall_tau_b(std::span<const double> a, std::span<const double> b);

}  // namespace pairlink
