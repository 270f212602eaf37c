#include "pairlink/diffusion.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "pairlink/rank_correlation.hpp"

namespace pairlink {

double ScoreVector::sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }

SeedVector SeedVector::normalized(std::vector<Entry> weights) {
  if (weights.empty()) throw std::invalid_argument("seed vector needs nonempty support");
  std::sort(weights.begin(), weights.end());
  std::vector<Entry> merged;
  for (const auto& [node, w] : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("seed weights must be finite and nonnegative");
    if (!merged.empty() && merged.back().first == node) {
      merged.back().second += w;
    } else {
      merged.emplace_back(node, w);
    }
  }
  double total = 0.0;
  for (const auto& e : merged) total += e.second;
  if (total <= 0.0) throw std::invalid_argument("seed vector has zero mass");
  for (auto& e : merged) e.second /= total;
  SeedVector s;
  s.entries_ = std::move(merged);
  return s;
}

std::vector<double> SeedVector::dense(std::size_t n) const {
  std::vector<double> out(n, 0.0);
  for (const auto& [node, w] : entries_) {
    if (node >= n) throw std::out_of_range("seed node out of range");
    out[node] = w;
  }
  return out;
}

SeedVector single_seed(const Graph& g, NodeId u) {
  (void)g.degree(u);
  return SeedVector::normalized({{u, 1.0}});
}

SeedVector pair_seed(const Graph& g, NodeId u, NodeId v) {
  (void)g.degree(u);
  (void)g.degree(v);
  if (u == v) throw std::invalid_argument("pair seed requires distinct nodes");
  return SeedVector::normalized({{u, 0.5}, {v, 0.5}});
}

SeedVector star_seed(const Graph& g, NodeId u) {
  auto nbrs = g.neighbors(u);
  if (nbrs.empty()) throw DataError("star seed on isolated node " + g.label(u));
  std::vector<SeedVector::Entry> w{{u, 1.0}};
  for (NodeId z : nbrs) w.emplace_back(z, 1.0);
  return SeedVector::normalized(std::move(w));
}

SeedVector weighted_star_seed(const Graph& g, NodeId u) {
  auto nbrs = g.neighbors(u);
  if (nbrs.empty()) throw DataError("weighted star seed on isolated node " + g.label(u));
  std::vector<SeedVector::Entry> w{{u, static_cast<double>(nbrs.size())}};
  for (NodeId z : nbrs) w.emplace_back(z, 1.0);
  return SeedVector::normalized(std::move(w));
}

SeedVector make_seed(const Graph& g, SeedKind kind, NodeId u, NodeId v) {
  switch (kind) {
    case SeedKind::single:
      return single_seed(g, u);
    case SeedKind::pair:
      return pair_seed(g, u, v);
    case SeedKind::star:
      return star_seed(g, u);
    case SeedKind::weighted_star:
      return weighted_star_seed(g, u);
  }
  throw std::invalid_argument("unknown seed kind");
}

void DiffusionParams::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (iterations < 1) throw std::invalid_argument("iterations must be at least 1");
  if (tolerance && !(*tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
}

double DiffusionParams::resolved_tolerance(std::size_t n) const {
  return tolerance.value_or(1e-15 * static_cast<double>(n));
}

namespace {

std::vector<double> degree_vector(const Graph& g) {
  if (g.num_nodes() == 0) throw DataError("diffusion on an empty graph");
  std::vector<double> d(g.num_nodes());
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    d[i] = static_cast<double>(g.degree(i));
    if (d[i] == 0.0) throw DataError("node " + g.label(i) + " has degree zero; cannot normalize its column");
  }
  return d;
}

// next = alpha * P * x + (1 - alpha) * s
void power_step(const Graph& g, std::span<const double> degree, std::span<const double> x,
                std::span<const double> s, double alpha, std::vector<double>& y, std::vector<double>& next) {
  const std::size_t n = g.num_nodes();
  for (std::size_t j = 0; j < n; ++j) y[j] = x[j] / degree[j];
  for (NodeId i = 0; i < n; ++i) {
    double acc = 0.0;
    for (NodeId j : g.neighbors(i)) acc += y[j];
    next[i] = alpha * acc + (1.0 - alpha) * s[i];
  }
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

}  // namespace

ScoreVector pagerank(const Graph& g, const SeedVector& seed, const DiffusionParams& params) {
  params.validate();
  const auto degree = degree_vector(g);
  const std::size_t n = g.num_nodes();
  const auto s = seed.dense(n);
  const double tol = params.resolved_tolerance(n);
  const auto max_steps = static_cast<std::size_t>(1e6 / (1.0 - params.alpha));
  constexpr std::size_t stall_window = 50;

  std::vector<double> x = s, next(n), y(n);
  double best = std::numeric_limits<double>::infinity();
  std::size_t since_best = 0;
  for (std::size_t step = 0; step < max_steps; ++step) {
    power_step(g, degree, x, s, params.alpha, y, next);
    const double residual = l1_distance(next, x);
    x.swap(next);
    if (residual <= tol) break;
    if (residual < best) {
      best = residual;
      since_best = 0;
    } else if (++since_best >= stall_window) {
      break;
    }
  }
  return {std::move(x), "pagerank"};
}

ScoreVector single_seeded_pagerank(const Graph& g, NodeId u, const DiffusionParams& params) {
  auto x = pagerank(g, single_seed(g, u), params);
  x.method = "single";
  return x;
}

ScoreVector pair_seeded_pagerank(const Graph& g, NodeId u, NodeId v, const DiffusionParams& params) {
  auto x = pagerank(g, pair_seed(g, u, v), params);
  x.method = "pairseed";
  return x;
}

std::vector<double> pagerank_power_steps(const Graph& g, const SeedVector& seed, double alpha,
                                         std::size_t steps) {
  const auto degree = degree_vector(g);
  const std::size_t n = g.num_nodes();
  const auto s = seed.dense(n);
  std::vector<double> x = s, next(n), y(n);
  for (std::size_t i = 0; i < steps; ++i) {
    power_step(g, degree, x, s, alpha, y, next);
    x.swap(next);
  }
  return x;
}

std::vector<TraceRow> pagerank_trace(const Graph& g, const SeedVector& seed, double alpha,
                                     std::size_t max_iters) {
  const auto degree = degree_vector(g);
  const std::size_t n = g.num_nodes();
  const auto s = seed.dense(n);
  std::vector<double> x = s, next(n), y(n);
  std::vector<TraceRow> out;
  out.reserve(max_iters);
  for (std::size_t i = 1; i <= max_iters; ++i) {
    power_step(g, degree, x, s, alpha, y, next);
    out.push_back({i, l1_distance(next, x)});
    x.swap(next);
  }
  return out;
}

TrprIteration::TrprIteration(const Graph& g, const TriangleSet& ts, const SeedVector& seed,
                             double alpha, bool weighted)
    : g_(&g), ts_(&ts), x0_(seed.dense(g.num_nodes())), x_(x0_), degree_(degree_vector(g)),
      alpha_(alpha), weighted_(weighted) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (ts.num_nodes() != g.num_nodes()) throw std::invalid_argument("triangle set does not belong to this graph");
  adjacency_mass_ = std::accumulate(degree_.begin(), degree_.end(), 0.0);
}

const std::vector<double>& TrprIteration::step() {
  const std::size_t n = x_.size();
  // Column sums of T[x]; T[x] is symmetric so these are also its row sums.
  const auto tensor_cols = tensor_row_sums(*ts_, x_);
  tensor_mass_ = std::accumulate(tensor_cols.begin(), tensor_cols.end(), 0.0);
  if (!weighted_) {
    gamma_ = 1.0;
  } else {
    // No triangle mass reachable: drop the reinforcement for this step.
    gamma_ = tensor_mass_ > 0.0 ? adjacency_mass_ / tensor_mass_ : 0.0;
  }

  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = x_[i] / (gamma_ * tensor_cols[i] + degree_[i]);
  auto z = reinforced_matrix_apply(*g_, *ts_, x_, y, gamma_);
  for (std::size_t i = 0; i < n; ++i) z[i] = alpha_ * z[i] + (1.0 - alpha_) * x0_[i];
  x_ = std::move(z);
  ++iteration_;
  return x_;
}

ScoreVector trpr(const Graph& g, const TriangleSet& ts, const SeedVector& seed,
                 const DiffusionParams& params, bool weighted) {
  params.validate();
  TrprIteration it(g, ts, seed, params.alpha, weighted);
  for (std::size_t i = 0; i < params.iterations; ++i) it.step();
  return {it.current(), weighted ? "trprw" : "trpr"};
}

ScoreVector combine_scores(const ScoreVector& a, const ScoreVector& b, Combine mode) {
  if (a.size() != b.size()) throw std::invalid_argument("combine_scores: length mismatch");
  ScoreVector out;
  out.values.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.values[i] = mode == Combine::max ? std::max(a[i], b[i]) : a[i] * b[i];
  }
  out.method = std::string(mode == Combine::max ? "max" : "mul") + "(" + a.method + "," + b.method + ")";
  return out;
}

std::vector<TraceRow> convergence_trace(const Graph& g, const TriangleSet& ts,
                                        const SeedVector& seed, const DiffusionParams& params,
                                        std::size_t max_iters, bool weighted) {
  params.validate();
  TrprIteration it(g, ts, seed, params.alpha, weighted);
  std::vector<TraceRow> out;
  out.reserve(max_iters);
  std::vector<double> prev = it.current();
  for (std::size_t i = 1; i <= max_iters; ++i) {
    const auto& x = it.step();
    out.push_back({i, l1_distance(x, prev)});
    prev = x;
  }
  return out;
}

std::vector<NodeId> top_k_indices(std::span<const double> values, std::size_t k) {
  std::vector<NodeId> idx(values.size());
  std::iota(idx.begin(), idx.end(), NodeId{0});
  k = std::min(k, idx.size());
  auto better = [&](NodeId a, NodeId b) { return values[a] > values[b] || (values[a] == values[b] && a < b); };
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(), better);
  idx.resize(k);
  return idx;
}

RankCorrelation rank_stability(std::span<const double> prev, std::span<const double> next,
                               std::optional<std::size_t> top_k) {
  if (prev.size() != next.size()) throw std::invalid_argument("rank_stability: length mismatch");
  if (!top_k) {
    if (prev.size() < 2) throw std::invalid_argument("rank_stability needs at least two items");
    return {spearman_rho(prev, next), kendall_tau_b(prev, next)};
  }
  auto a = top_k_indices(prev, *top_k);
  auto b = top_k_indices(next, *top_k);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<NodeId> keep;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(keep));
  if (keep.size() < 2) throw std::invalid_argument("rank_stability needs at least two items after top-k restriction");
  std::vector<double> pa, pb;
  pa.reserve(keep.size());
  pb.reserve(keep.size());
  for (NodeId i : keep) {
    pa.push_back(prev[i]);
    pb.push_back(next[i]);
  }
  return {spearman_rho(pa, pb), kendall_tau_b(pa, pb)};
}

}  // namespace pairlink
