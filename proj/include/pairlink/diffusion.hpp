#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pairlink/graph.hpp"
#include "pairlink/triangles.hpp"

namespace pairlink {

/// Dense per-node scores plus a tag naming the method that produced them.
struct ScoreVector {
  std::vector<double> values;
  std::string method;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  double sum() const;
};

/// Sparse teleport distribution. Weights are nonnegative and sum to one.
class SeedVector {
 public:
  using Entry = std::pair<NodeId, double>;

  /// Normalizes `weights` to unit mass. Rejects empty support and negative weights.
  static SeedVector normalized(std::vector<Entry> weights);

  std::span<const Entry> entries() const noexcept { return entries_; }
  std::vector<double> dense(std::size_t n) const;

 private:
  std::vector<Entry> entries_;
};

enum class SeedKind { single, pair, star, weighted_star };

/// `v` is only read for SeedKind::pair.
SeedVector make_seed(const Graph& g, SeedKind kind, NodeId u, NodeId v = 0);
SeedVector single_seed(const Graph& g, NodeId u);
SeedVector pair_seed(const Graph& g, NodeId u, NodeId v);
SeedVector star_seed(const Graph& g, NodeId u);
/// Degree d(u) at u and 1 at each neighbor, normalized by 2·d(u).
SeedVector weighted_star_seed(const Graph& g, NodeId u);

struct DiffusionParams {
  double alpha = 0.85;
  /// Fixed TRPR iteration count.
  std::size_t iterations = 10;
  /// L1 residual bound for the PageRank solve; unset means 1e-15·n.
  std::optional<double> tolerance;

  void validate() const;
  double resolved_tolerance(std::size_t n) const;
};

/// Seeded PageRank: solves (I - αP)x = (1-α)s by power iteration, with
/// P(i,j) = A(i,j)/|Γ(j)|. Stops when the L1 residual reaches the tolerance,
/// when it stops improving (round-off floor), or after 10⁶/(1-α) steps.
ScoreVector pagerank(const Graph& g, const SeedVector& seed, const DiffusionParams& params);
ScoreVector single_seeded_pagerank(const Graph& g, NodeId u, const DiffusionParams& params);
ScoreVector pair_seeded_pagerank(const Graph& g, NodeId u, NodeId v, const DiffusionParams& params);

/// Exactly `steps` power-iteration updates starting from the seed itself.
std::vector<double> pagerank_power_steps(const Graph& g, const SeedVector& seed, double alpha,
                                         std::size_t steps);

/// Step-by-step TRPR / TRPR-Weighted iteration.
///
/// Each step contracts the triangle tensor against the current iterate,
/// forms M = γ·T[x] + A, column-normalizes it and applies one damped
/// power-method update toward the seed. Column sums of M come from
/// tensor_row_sums plus the degree vector; nothing n×n is ever built.
class TrprIteration {
 public:
  TrprIteration(const Graph& g, const TriangleSet& ts, const SeedVector& seed, double alpha,
                bool weighted);

  /// Advances one iteration and returns the new iterate.
  const std::vector<double>& step();

  const std::vector<double>& current() const noexcept { return x_; }
  std::size_t iteration() const noexcept { return iteration_; }
  /// γ used by the most recent step.
  double last_gamma() const noexcept { return gamma_; }
  /// Σ over all entries of T[x] from the most recent step.
  double last_tensor_mass() const noexcept { return tensor_mass_; }
  /// Σ over all entries of A (= 2m).
  double adjacency_mass() const noexcept { return adjacency_mass_; }

 private:
  const Graph* g_;
  const TriangleSet* ts_;
  std::vector<double> x0_;
  std::vector<double> x_;
  std::vector<double> degree_;
  double alpha_;
  bool weighted_;
  std::size_t iteration_ = 0;
  double gamma_ = 0.0;
  double tensor_mass_ = 0.0;
  double adjacency_mass_ = 0.0;
};

/// Runs exactly params.iterations TRPR steps.
ScoreVector trpr(const Graph& g, const TriangleSet& ts, const SeedVector& seed,
                 const DiffusionParams& params, bool weighted);

enum class Combine { max, mul };

ScoreVector combine_scores(const ScoreVector& a, const ScoreVector& b, Combine mode);

struct TraceRow {
  std::size_t iteration;
  double l1_delta;
};

/// ‖x_i − x_{i−1}‖₁ for i = 1..max_iters, with x_0 = seed.
std::vector<TraceRow> convergence_trace(const Graph& g, const TriangleSet& ts,
                                        const SeedVector& seed, const DiffusionParams& params,
                                        std::size_t max_iters, bool weighted = false);

/// Same trace for the plain power iteration.
std::vector<TraceRow> pagerank_trace(const Graph& g, const SeedVector& seed, double alpha,
                                     std::size_t max_iters);

struct RankCorrelation {
  double spearman;
  double kendall;
};

/// Spearman ρ (average ranks) and Kendall τ-b between two score vectors. With
/// top_k, both are restricted to the union of the two top-k node sets first.
RankCorrelation rank_stability(std::span<const double> prev, std::span<const double> next,
                               std::optional<std::size_t> top_k = std::nullopt);

/// Indices of the k largest entries; ties go to the smaller index.
std::vector<NodeId> top_k_indices(std::span<const double> values, std::size_t k);

}  // namespace pairlink
