#pragma once

// Fixtures and brute-force oracles shared by the unit and acceptance suites.
// The oracles deliberately avoid the library's own routines (CSR neighbor
// lists, triangle lists, power iteration) so they can check them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pairlink/graph.hpp"

namespace pairlink::testing {

inline Graph graph_of(const std::vector<std::pair<std::string, std::string>>& edges) {
  EdgeList list;
  for (const auto& [u, v] : edges) list.records.push_back({u, v, std::nullopt});
  return build_graph(list);
}

inline NodeId id(const Graph& g, const std::string& label) { return g.find(label).value(); }

inline Graph complete_graph(int n) {
  std::vector<std::pair<std::string, std::string>> e;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) e.emplace_back(std::to_string(i), std::to_string(j));
  }
  return graph_of(e);
}

/// Blue couple b1–b2, six shared friends k1..k6, and a red node r who knows
/// every friend but neither blue node.
inline Graph couple_graph(int black = 6) {
  std::vector<std::pair<std::string, std::string>> e{{"b1", "b2"}};
  for (int i = 1; i <= black; ++i) {
    const auto k = "k" + std::to_string(i);
    e.emplace_back("b1", k);
    e.emplace_back("b2", k);
    e.emplace_back("r", k);
  }
  return graph_of(e);
}

/// Triangle {1,2,3} with pendant 4 hanging off 3.
inline Graph triangle_pendant() { return graph_of({{"1", "2"}, {"2", "3"}, {"1", "3"}, {"3", "4"}}); }

/// Random simple graph on n nodes labelled 0..n-1 (all nodes present).
inline Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  std::vector<NodePair> pairs;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      if (coin(rng)) pairs.emplace_back(i, j);
    }
  }
  return Graph::from_pairs(labels, pairs);
}

/// Dense 0/1 adjacency built from the edge list alone.
inline std::vector<std::vector<int>> dense_adjacency(const Graph& g) {
  std::vector<std::vector<int>> a(g.num_nodes(), std::vector<int>(g.num_nodes(), 0));
  for (const auto& r : g.to_edge_list().records) {
    auto i = *g.find(r.u), j = *g.find(r.v);
    a[i][j] = a[j][i] = 1;
  }
  return a;
}

/// Explicit n×n×n triangle tensor, symmetric in all index permutations.
struct DenseTensor {
  std::size_t n;
  std::vector<double> t;
  double operator()(std::size_t i, std::size_t j, std::size_t k) const { return t[(i * n + j) * n + k]; }
};

inline DenseTensor dense_triangle_tensor(const Graph& g) {
  const auto a = dense_adjacency(g);
  const std::size_t n = g.num_nodes();
  DenseTensor T{n, std::vector<double>(n * n * n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (i != j && j != k && i != k && a[i][j] && a[j][k] && a[i][k]) T.t[(i * n + j) * n + k] = 1.0;
      }
    }
  }
  return T;
}

inline std::size_t brute_force_triangle_count(const Graph& g) {
  const auto a = dense_adjacency(g);
  const std::size_t n = g.num_nodes();
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) count += a[i][j] && a[j][k] && a[i][k];
    }
  }
  return count;
}

/// z_i = Σ_{j,k} T(i,j,k) y(j) x(k) by explicit summation.
inline std::vector<double> dense_bilinear(const DenseTensor& T, const std::vector<double>& x,
                                          const std::vector<double>& y) {
  std::vector<double> z(T.n, 0.0);
  for (std::size_t i = 0; i < T.n; ++i) {
    for (std::size_t j = 0; j < T.n; ++j) {
      for (std::size_t k = 0; k < T.n; ++k) z[i] += T(i, j, k) * y[j] * x[k];
    }
  }
  return z;
}

/// Solves (I - αP)x = (1-α)s by Gaussian elimination with partial pivoting.
inline std::vector<double> dense_pagerank(const Graph& g, const std::vector<double>& s, double alpha) {
  const auto a = dense_adjacency(g);
  const std::size_t n = g.num_nodes();
  std::vector<double> deg(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) deg[j] += a[i][j];
  }
  std::vector<std::vector<double>> m(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = (i == j ? 1.0 : 0.0) - alpha * a[i][j] / deg[j];
    m[i][n] = (1.0 - alpha) * s[i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    }
    std::swap(m[c], m[piv]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = m[r][c] / m[c][c];
      for (std::size_t k = c; k <= n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n] / m[i][i];
  return x;
}

inline std::set<NodeId> neighbor_set(const Graph& g, NodeId i) {
  const auto a = g.neighbors(i);
  return {a.begin(), a.end()};
}

/// O(n²) Kendall τ-b by direct pair classification.
inline double brute_kendall_tau_b(const std::vector<double>& a, const std::vector<double>& b) {
  double concordant = 0, discordant = 0, tie_a = 0, tie_b = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const double da = a[i] - a[j], db = b[i] - b[j];
      if (da == 0 && db == 0) continue;
      if (da == 0) {
        tie_a += 1;
      } else if (db == 0) {
        tie_b += 1;
      } else if ((da > 0) == (db > 0)) {
        concordant += 1;
      } else {
        discordant += 1;
      }
    }
  }
  return (concordant - discordant) / std::sqrt((concordant + discordant + tie_a) * (concordant + discordant + tie_b));
}

/// Rank of each entry counted directly: 1 + #smaller + (#equal - 1)/2.
inline std::vector<double> brute_average_ranks(const std::vector<double>& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double less = 0, equal = 0;
    for (double w : v) {
      less += w < v[i];
      equal += w == v[i];
    }
    r[i] = 1.0 + less + (equal - 1.0) / 2.0;
  }
  return r;
}

inline double brute_spearman(const std::vector<double>& a, const std::vector<double>& b) {
  const auto ra = brute_average_ranks(a), rb = brute_average_ranks(b);
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    ma += ra[i] / n;
    mb += rb[i] / n;
  }
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

/// Fraction of (positive, negative) pairs where the positive scores higher; ties ½.
inline double brute_auc(const std::vector<double>& scores, const std::vector<NodeId>& positives,
                        const std::vector<NodeId>& candidates) {
  std::set<NodeId> pos(positives.begin(), positives.end());
  double wins = 0, pairs = 0;
  for (NodeId p : candidates) {
    if (!pos.count(p)) continue;
    for (NodeId q : candidates) {
      if (pos.count(q)) continue;
      pairs += 1;
      if (scores[p] > scores[q]) wins += 1;
      if (scores[p] == scores[q]) wins += 0.5;
    }
  }
  return wins / pairs;
}

/// Sorts every candidate and reports the 1-based position of the first truth node (0 if none).
inline std::size_t brute_best_rank(const std::vector<double>& scores, std::vector<NodeId> candidates,
                                   const std::vector<NodeId>& truth) {
  std::stable_sort(candidates.begin(), candidates.end(), [&](NodeId a, NodeId b) {
    return scores[a] > scores[b] || (scores[a] == scores[b] && a < b);
  });
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (std::find(truth.begin(), truth.end(), candidates[i]) != truth.end()) return i + 1;
  }
  return 0;
}

}  // namespace pairlink::testing
