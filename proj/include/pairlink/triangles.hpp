#pragma once

#include <array>
#include <span>
#include <vector>

#include "pairlink/graph.hpp"

namespace pairlink {

/// Canonical triangle list (i < j < k) of a graph.
///
/// This is the storage behind every implicit triangle-tensor product. The
/// symmetric tensor T(i,j,k) = 1 iff {i,j,k} is a triangle is never formed;
/// contractions replay this list, so their cost is linear in its length.
class TriangleSet {
 public:
  using Triple = std::array<NodeId, 3>;

  TriangleSet() = default;
  TriangleSet(std::size_t num_nodes, std::vector<Triple> triples)
      : num_nodes_(num_nodes), triples_(std::move(triples)) {}

  std::size_t num_nodes() const noexcept { return num_nodes_; }
  std::size_t size() const noexcept { return triples_.size(); }
  bool empty() const noexcept { return triples_.empty(); }
  std::span<const Triple> triples() const noexcept { return triples_; }

 private:
  std::size_t num_nodes_ = 0;
  std::vector<Triple> triples_;
};

/// Forward neighbor-intersection enumeration: each triangle found once from
/// its smallest-index edge, intersecting the higher-index tails of both
/// neighbor lists.
TriangleSet enumerate_triangles(const Graph& g);

/// z_i = Σ_{j,k} T(i,j,k) y(j) x(k). Each triangle {a,b,c} adds
/// y(b)x(c) + y(c)x(b) to corner a, and likewise for b and c.
std::vector<double> tensor_bilinear(const TriangleSet& ts, std::span<const double> x,
                                    std::span<const double> y);

/// Row (equivalently column) sums of T[x]: tensor_bilinear(ts, x, 1).
std::vector<double> tensor_row_sums(const TriangleSet& ts, std::span<const double> x);

/// (γ·T[x] + A)·y without forming T[x].
std::vector<double> reinforced_matrix_apply(const Graph& g, const TriangleSet& ts,
                                            std::span<const double> x, std::span<const double> y,
                                            double gamma);

/// A·y.
std::vector<double> adjacency_apply(const Graph& g, std::span<const double> y);

}  // namespace pairlink
