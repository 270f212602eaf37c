#include "pairlink/local_scores.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iterator>
#include <limits>
#include <stdexcept>

namespace pairlink {

namespace {

std::atomic<std::size_t> degenerate_aa{0};

std::vector<NodeId> intersect(std::span<const NodeId> a, std::span<const NodeId> b) {
  std::vector<NodeId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::size_t union_size(std::span<const NodeId> a, std::span<const NodeId> b, std::size_t common) {
  return a.size() + b.size() - common;
}

double aa_weight(const Graph& g, NodeId z) {
  const auto d = g.degree(z);
  if (d <= 1) {
    degenerate_aa.fetch_add(1, std::memory_order_relaxed);
    return 0.0;
  }
  return 1.0 / std::log(static_cast<double>(d));
}

double jaccard(std::span<const NodeId> a, std::span<const NodeId> b) {
  const auto common = intersect(a, b).size();
  const auto uni = union_size(a, b, common);
  return uni == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(uni);
}

double adamic_adar(const Graph& g, std::span<const NodeId> a, std::span<const NodeId> b) {
  double s = 0.0;
  for (NodeId z : intersect(a, b)) s += aa_weight(g, z);
  return s;
}

void require_distinct(NodeId w, NodeId u) {
  if (w == u) throw std::invalid_argument("node similarity requires distinct nodes");
}

void require_outside(NodeId w, NodeId u, NodeId v) {
  if (w == u || w == v) throw std::invalid_argument("scored node must not be an endpoint of the pair");
}

}  // namespace

std::size_t aa_degenerate_terms() { return degenerate_aa.load(); }

double js_node(const Graph& g, NodeId w, NodeId u) {
  require_distinct(w, u);
  return jaccard(g.neighbors(w), g.neighbors(u));
}

double aa_node(const Graph& g, NodeId w, NodeId u) {
  require_distinct(w, u);
  return adamic_adar(g, g.neighbors(w), g.neighbors(u));
}

double pa_node(const Graph& g, NodeId w, NodeId u) {
  require_distinct(w, u);
  return static_cast<double>(g.degree(w)) * static_cast<double>(g.degree(u));
}

double js_edge(const Graph& g, NodeId w, NodeId u, NodeId v) {
  require_outside(w, u, v);
  return jaccard(g.neighbors(w), edge_neighborhood(g, u, v));
}

double aa_edge(const Graph& g, NodeId w, NodeId u, NodeId v) {
  require_outside(w, u, v);
  return adamic_adar(g, g.neighbors(w), edge_neighborhood(g, u, v));
}

double pa_edge(const Graph& g, NodeId w, NodeId u, NodeId v) {
  require_outside(w, u, v);
  return static_cast<double>(g.degree(w)) * static_cast<double>(edge_neighborhood(g, u, v).size());
}

double local_combined(const Graph& g, NodeId w, NodeId u, NodeId v, LocalBase base, Combine mode) {
  require_outside(w, u, v);
  const double a = base == LocalBase::js ? js_node(g, w, u) : aa_node(g, w, u);
  const double b = base == LocalBase::js ? js_node(g, w, v) : aa_node(g, w, v);
  return mode == Combine::max ? std::max(a, b) : a * b;
}

std::string_view to_string(LocalMethod m) {
  switch (m) {
    case LocalMethod::js: return "js";
    case LocalMethod::aa: return "aa";
    case LocalMethod::pa: return "pa";
    case LocalMethod::js_max: return "js-max";
    case LocalMethod::js_mul: return "js-mul";
    case LocalMethod::aa_max: return "aa-max";
    case LocalMethod::aa_mul: return "aa-mul";
  }
  return "?";
}

std::optional<LocalMethod> parse_local_method(std::string_view name) {
  for (auto m : {LocalMethod::js, LocalMethod::aa, LocalMethod::pa, LocalMethod::js_max, LocalMethod::js_mul,
                 LocalMethod::aa_max, LocalMethod::aa_mul}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

namespace {

// For every node w: |Γ(w) ∩ S| and Σ_{z ∈ Γ(w) ∩ S} 1/ln|Γ(z)|, by scattering
// from each z ∈ S to its neighbors.
struct Overlap {
  std::vector<double> common;
  std::vector<double> aa;
};

Overlap overlap_with(const Graph& g, std::span<const NodeId> set) {
  Overlap o{std::vector<double>(g.num_nodes(), 0.0), std::vector<double>(g.num_nodes(), 0.0)};
  for (NodeId z : set) {
    const auto d = g.degree(z);
    // Degree-one z only reaches the endpoint it hangs off, which is never scored.
    const double weight = d > 1 ? 1.0 / std::log(static_cast<double>(d)) : 0.0;
    for (NodeId w : g.neighbors(z)) {
      o.common[w] += 1.0;
      o.aa[w] += weight;
    }
  }
  return o;
}

std::vector<double> jaccard_all(const Graph& g, const Overlap& o, std::size_t set_size) {
  std::vector<double> out(g.num_nodes());
  for (NodeId w = 0; w < g.num_nodes(); ++w) {
    const double uni = static_cast<double>(g.degree(w) + set_size) - o.common[w];
    out[w] = uni == 0.0 ? 0.0 : o.common[w] / uni;
  }
  return out;
}

}  // namespace

ScoreVector score_all_nodes(const Graph& g, NodeId u, NodeId v, LocalMethod method) {
  if (u == v) throw std::invalid_argument("score_all_nodes requires distinct endpoints");
  const std::size_t n = g.num_nodes();
  std::vector<double> s(n, 0.0);

  switch (method) {
    case LocalMethod::js:
    case LocalMethod::aa:
    case LocalMethod::pa: {
      const auto hood = edge_neighborhood(g, u, v);
      if (method == LocalMethod::pa) {
        for (NodeId w = 0; w < n; ++w) s[w] = static_cast<double>(g.degree(w)) * static_cast<double>(hood.size());
      } else {
        auto o = overlap_with(g, hood);
        s = method == LocalMethod::js ? jaccard_all(g, o, hood.size()) : std::move(o.aa);
      }
      break;
    }
    case LocalMethod::js_max:
    case LocalMethod::js_mul:
    case LocalMethod::aa_max:
    case LocalMethod::aa_mul: {
      const bool js = method == LocalMethod::js_max || method == LocalMethod::js_mul;
      const bool max = method == LocalMethod::js_max || method == LocalMethod::aa_max;
      auto ou = overlap_with(g, g.neighbors(u));
      auto ov = overlap_with(g, g.neighbors(v));
      auto su = js ? jaccard_all(g, ou, g.degree(u)) : std::move(ou.aa);
      auto sv = js ? jaccard_all(g, ov, g.degree(v)) : std::move(ov.aa);
      for (NodeId w = 0; w < n; ++w) s[w] = max ? std::max(su[w], sv[w]) : su[w] * sv[w];
      break;
    }
  }

  s[u] = -std::numeric_limits<double>::infinity();
  s[v] = -std::numeric_limits<double>::infinity();
  return {std::move(s), std::string(to_string(method))};
}

}  // namespace pairlink
