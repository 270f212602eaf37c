#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace pairlink {

/// Dense 0-based node index.
using NodeId = std::uint32_t;
using NodePair = std::pair<NodeId, NodeId>;

/// Raised for malformed input data; carries the offending line when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Raised when input is well-formed but unusable (empty graph, isolated seed, ...).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EdgeRecord {
  std::string u;
  std::string v;
  std::optional<std::int64_t> t;

  friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

struct EdgeList {
  std::vector<EdgeRecord> records;
  bool has_timestamps = false;
  std::size_t self_loops_dropped = 0;
};

/// Parses whitespace-delimited "u v" (or "u v t") lines. '#' and '%' start comments.
EdgeList load_edge_list(std::istream& in, bool has_timestamps);
EdgeList load_edge_list_file(const std::string& path, bool has_timestamps);

/// Immutable undirected simple graph in CSR form.
///
/// Neighbor lists are sorted ascending and symmetric. Each dense index carries
/// the opaque label it was read with, so results can be reported in the
/// input's own node IDs after any number of re-indexings.
class Graph {
 public:
  Graph() = default;

  /// Builds from dense-index pairs over `labels.size()` nodes. Self-loops are
  /// dropped and duplicate or reversed pairs collapsed. Isolated nodes are kept.
  static Graph from_pairs(std::vector<std::string> labels, std::span<const NodePair> pairs);

  std::size_t num_nodes() const noexcept { return labels_.size(); }
  std::size_t num_edges() const noexcept { return neighbors_.size() / 2; }

  std::size_t degree(NodeId i) const;
  std::span<const NodeId> neighbors(NodeId i) const;
  bool has_edge(NodeId a, NodeId b) const;

  const std::string& label(NodeId i) const;
  std::optional<NodeId> find(const std::string& label) const;
  std::span<const std::string> labels() const noexcept { return labels_; }

  /// Every undirected edge once, as (a, b) with a < b, in ascending order.
  std::vector<NodePair> edges() const;
  EdgeList to_edge_list() const;

  /// Number of duplicate / reversed records collapsed during construction.
  std::size_t duplicates_collapsed() const noexcept { return duplicates_; }

 private:
  void check(NodeId i) const;

  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> neighbors_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
  std::size_t duplicates_ = 0;
};

/// Dense indices are assigned in first-appearance order.
Graph build_graph(const EdgeList& edges);

/// Induced subgraph on the largest component. Ties go to the component
/// holding the smallest dense index. Relative node order is preserved.
Graph largest_connected_component(const Graph& g);

/// Component id per node, numbered in order of each component's smallest index.
std::vector<std::size_t> connected_components(const Graph& g);

/// Γ(u) ∪ Γ(v) \ {u, v}, sorted. (u, v) need not be an edge.
std::vector<NodeId> edge_neighborhood(const Graph& g, NodeId u, NodeId v);

/// Induced subgraph on the listed nodes (in the given order), labels kept.
Graph induced_subgraph(const Graph& g, std::span<const NodeId> keep);

}  // namespace pairlink
