#include "pairlink/gpa.hpp"

#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace pairlink {

void GpaParams::validate() const {
  if (!(p_edge >= 0.0 && p_edge <= 1.0)) throw std::invalid_argument("p_edge must lie in [0, 1]");
  if (seed_clique < 2) throw std::invalid_argument("seed clique must have at least 2 nodes");
}

GpaGraph generate_gpa_edges(const GpaParams& params) {
  params.validate();
  constexpr int max_retries = 50;

  std::mt19937_64 rng(params.rng_seed);
  std::bernoulli_distribution edge_event(params.p_edge);

  GpaGraph out;
  std::vector<NodeId> ends;  // each node appears once per incident edge
  std::unordered_set<std::uint64_t> present;
  auto key = [](NodeId a, NodeId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
  };
  auto add_edge = [&](NodeId a, NodeId b) {
    out.edges.emplace_back(a, b);
    present.insert(key(a, b));
    ends.push_back(a);
    ends.push_back(b);
  };
  auto draw = [&] {
    std::uniform_int_distribution<std::size_t> pick(0, ends.size() - 1);
    return ends[pick(rng)];
  };

  out.num_nodes = params.seed_clique;
  for (NodeId a = 0; a < params.seed_clique; ++a) {
    for (NodeId b = a + 1; b < params.seed_clique; ++b) add_edge(a, b);
  }

  for (std::size_t step = 0; step < params.steps; ++step) {
    if (edge_event(rng)) {
      bool placed = false;
      for (int attempt = 0; attempt < max_retries && !placed; ++attempt) {
        NodeId a = draw();
        NodeId b = draw();
        if (a == b || present.contains(key(a, b))) continue;
        add_edge(a, b);
        placed = true;
      }
      if (placed) {
        ++out.edge_events;
        continue;
      }
      ++out.degraded_events;
    }
    const auto fresh = static_cast<NodeId>(out.num_nodes++);
    const NodeId target = draw();
    add_edge(fresh, target);
    ++out.node_events;
  }
  return out;
}

Graph generate_gpa(const GpaParams& params) {
  auto gen = generate_gpa_edges(params);
  std::vector<std::string> labels;
  labels.reserve(gen.num_nodes);
  for (std::size_t i = 0; i < gen.num_nodes; ++i) labels.push_back(std::to_string(i));
  return Graph::from_pairs(std::move(labels), gen.edges);
}

EdgeList gpa_edge_list(const GpaParams& params) {
  auto gen = generate_gpa_edges(params);
  const std::size_t clique_edges = params.seed_clique * (params.seed_clique - 1) / 2;
  EdgeList out;
  out.has_timestamps = true;
  out.records.reserve(gen.edges.size());
  for (std::size_t i = 0; i < gen.edges.size(); ++i) {
    const auto t = i < clique_edges ? 0 : static_cast<std::int64_t>(i - clique_edges + 1);
    out.records.push_back({std::to_string(gen.edges[i].first), std::to_string(gen.edges[i].second), t});
  }
  return out;
}

}  // namespace pairlink
