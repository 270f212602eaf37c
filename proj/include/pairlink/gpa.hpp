#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pairlink/graph.hpp"

namespace pairlink {

struct GpaParams {
  /// Probability that an event adds an edge; otherwise it adds a node.
  double p_edge = 0.5;
  std::size_t steps = 1000;
  std::size_t seed_clique = 5;
  std::uint64_t rng_seed = 1;

  void validate() const;
};

/// Generalized preferential attachment growth.
///
/// Starts from K_{seed_clique}. An edge event joins two existing nodes drawn
/// proportionally to degree; self-pairs and existing edges are redrawn up to
/// 50 times, after which the event becomes a node event. A node event adds
/// one node attached to a degree-proportional target. Every event adds
/// exactly one edge, so m = C(seed_clique, 2) + steps.
struct GpaGraph {
  std::size_t num_nodes = 0;
  /// Edges in creation order; clique edges first.
  std::vector<NodePair> edges;
  std::size_t edge_events = 0;
  std::size_t node_events = 0;
  /// Edge events that fell back to node events after exhausting retries.
  std::size_t degraded_events = 0;
};

GpaGraph generate_gpa_edges(const GpaParams& params);

/// Labels are the decimal node indices.
Graph generate_gpa(const GpaParams& params);

/// Edge list with timestamps: clique edges at t=0, event i at t=i+1.
EdgeList gpa_edge_list(const GpaParams& params);

}  // namespace pairlink
