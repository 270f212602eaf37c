#include "pairlink/triangles.hpp"

#include <algorithm>
#include <stdexcept>

namespace pairlink {

namespace {

void require_length(const TriangleSet& ts, std::span<const double> v, const char* name) {
  if (v.size() != ts.num_nodes()) {
    throw std::invalid_argument(std::string("vector '") + name + "' has length " +
                                std::to_string(v.size()) + ", expected " +
                                std::to_string(ts.num_nodes()));
  }
}

}  // namespace

TriangleSet enumerate_triangles(const Graph& g) {
  std::vector<TriangleSet::Triple> out;
  for (NodeId a = 0; a < g.num_nodes(); ++a) {
    auto na = g.neighbors(a);
    auto a_tail = std::upper_bound(na.begin(), na.end(), a);
    for (auto it = a_tail; it != na.end(); ++it) {
      const NodeId b = *it;
      auto nb = g.neighbors(b);
      auto b_tail = std::upper_bound(nb.begin(), nb.end(), b);
      // Merge the parts of both lists above b.
      auto p = it + 1;
      auto q = b_tail;
      while (p != na.end() && q != nb.end()) {
        if (*p < *q) {
          ++p;
        } else if (*q < *p) {
          ++q;
        } else {
          out.push_back({a, b, *p});
          ++p;
          ++q;
        }
      }
    }
  }
  return TriangleSet(g.num_nodes(), std::move(out));
}

std::vector<double> tensor_bilinear(const TriangleSet& ts, std::span<const double> x,
                                    std::span<const double> y) {
  require_length(ts, x, "x");
  require_length(ts, y, "y");
  std::vector<double> z(ts.num_nodes(), 0.0);
  for (const auto& [a, b, c] : ts.triples()) {
    z[a] += y[b] * x[c] + y[c] * x[b];
    z[b] += y[a] * x[c] + y[c] * x[a];
    z[c] += y[a] * x[b] + y[b] * x[a];
  }
  return z;
}

std::vector<double> tensor_row_sums(const TriangleSet& ts, std::span<const double> x) {
  require_length(ts, x, "x");
  std::vector<double> z(ts.num_nodes(), 0.0);
  for (const auto& [a, b, c] : ts.triples()) {
    z[a] += x[b] + x[c];
    z[b] += x[a] + x[c];
    z[c] += x[a] + x[b];
  }
  return z;
}

std::vector<double> adjacency_apply(const Graph& g, std::span<const double> y) {
  if (y.size() != g.num_nodes()) throw std::invalid_argument("adjacency_apply: length mismatch");
  std::vector<double> z(g.num_nodes(), 0.0);
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    double acc = 0.0;
    for (NodeId j : g.neighbors(i)) acc += y[j];
    z[i] = acc;
  }
  return z;
}

std::vector<double> reinforced_matrix_apply(const Graph& g, const TriangleSet& ts,
                                            std::span<const double> x, std::span<const double> y,
                                            double gamma) {
  if (ts.num_nodes() != g.num_nodes()) {
    throw std::invalid_argument("triangle set does not belong to this graph");
  }
  if (gamma < 0.0) throw std::invalid_argument("gamma must be nonnegative");
  auto z = adjacency_apply(g, y);
  if (gamma == 0.0) {
    require_length(ts, x, "x");
    return z;
  }
  auto t = tensor_bilinear(ts, x, y);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] += gamma * t[i];
  return z;
}

}  // namespace pairlink
