#pragma once

#include <optional>
#include <string_view>

#include "pairlink/diffusion.hpp"
#include "pairlink/graph.hpp"

namespace pairlink {

// Node–node scores. All require w != u.
double js_node(const Graph& g, NodeId w, NodeId u);
double aa_node(const Graph& g, NodeId w, NodeId u);
double pa_node(const Graph& g, NodeId w, NodeId u);

// Edge–node scores: Γ(u) is replaced by the edge neighborhood Γ((u,v)).
// All require w ∉ {u, v}.
double js_edge(const Graph& g, NodeId w, NodeId u, NodeId v);
double aa_edge(const Graph& g, NodeId w, NodeId u, NodeId v);
double pa_edge(const Graph& g, NodeId w, NodeId u, NodeId v);

enum class LocalBase { js, aa };

/// MAX or MUL of base(w, u) and base(w, v).
double local_combined(const Graph& g, NodeId w, NodeId u, NodeId v, LocalBase base, Combine mode);

enum class LocalMethod { js, aa, pa, js_max, js_mul, aa_max, aa_mul };

std::string_view to_string(LocalMethod m);
std::optional<LocalMethod> parse_local_method(std::string_view name);

/// Scores every node against the pair (u, v). Entries at u and v hold -inf.
ScoreVector score_all_nodes(const Graph& g, NodeId u, NodeId v, LocalMethod method);

/// Number of Adamic–Adar terms dropped because the shared neighbor had degree one.
std::size_t aa_degenerate_terms();

}  // namespace pairlink
