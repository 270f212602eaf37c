#include "pairlink/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

namespace pairlink {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
    fields.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return fields;
}

}  // namespace

EdgeList load_edge_list(std::istream& in, bool has_timestamps) {
  EdgeList out;
  out.has_timestamps = has_timestamps;
  const std::size_t expected = has_timestamps ? 3 : 2;

  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (lineno == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);

    auto fields = split_fields(line);
    if (fields.empty() || fields[0].front() == '#' || fields[0].front() == '%') continue;
    if (fields.size() != expected) {
      throw ParseError(lineno, "expected " + std::to_string(expected) + " fields, found " +
                                   std::to_string(fields.size()));
    }

    EdgeRecord rec{std::string(fields[0]), std::string(fields[1]), std::nullopt};
    if (has_timestamps) {
      std::int64_t t = 0;
      auto f = fields[2];
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), t);
      if (ec != std::errc{} || ptr != f.data() + f.size()) {
        throw ParseError(lineno, "timestamp '" + std::string(f) + "' is not an integer");
      }
      rec.t = t;
    }
    if (rec.u == rec.v) {
      ++out.self_loops_dropped;
      continue;
    }
    out.records.push_back(std::move(rec));
  }
  return out;
}

EdgeList load_edge_list_file(const std::string& path, bool has_timestamps) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open edge list '" + path + "'");
  return load_edge_list(in, has_timestamps);
}

Graph Graph::from_pairs(std::vector<std::string> labels, std::span<const NodePair> pairs) {
  const std::size_t n = labels.size();
  std::vector<NodePair> arcs;
  arcs.reserve(pairs.size() * 2);
  for (auto [a, b] : pairs) {
    if (a >= n || b >= n) throw std::out_of_range("edge endpoint out of range");
    if (a == b) continue;
    arcs.emplace_back(a, b);
    arcs.emplace_back(b, a);
  }
  std::sort(arcs.begin(), arcs.end());
  const std::size_t before = arcs.size();
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

  Graph g;
  g.duplicates_ = (before - arcs.size()) / 2;
  g.offsets_.assign(n + 1, 0);
  for (auto [a, b] : arcs) ++g.offsets_[a + 1];
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.neighbors_.reserve(arcs.size());
  for (auto [a, b] : arcs) g.neighbors_.push_back(b);

  g.index_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!g.index_.emplace(labels[i], static_cast<NodeId>(i)).second) {
      throw DataError("duplicate node label '" + labels[i] + "'");
    }
  }
  g.labels_ = std::move(labels);
  return g;
}

void Graph::check(NodeId i) const {
  if (i >= num_nodes()) {
    throw std::out_of_range("node " + std::to_string(i) + " out of range (n=" +
                            std::to_string(num_nodes()) + ")");
  }
}

std::size_t Graph::degree(NodeId i) const {
  check(i);
  return offsets_[i + 1] - offsets_[i];
}

std::span<const NodeId> Graph::neighbors(NodeId i) const {
  check(i);
  return {neighbors_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
}

bool Graph::has_edge(NodeId a, NodeId b) const {
  auto na = neighbors(a);
  check(b);
  return std::binary_search(na.begin(), na.end(), b);
}

const std::string& Graph::label(NodeId i) const {
  check(i);
  return labels_[i];
}

std::optional<NodeId> Graph::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<NodePair> Graph::edges() const {
  std::vector<NodePair> out;
  out.reserve(num_edges());
  for (NodeId a = 0; a < num_nodes(); ++a) {
    for (NodeId b : neighbors(a)) {
      if (a < b) out.emplace_back(a, b);
    }
  }
  return out;
}

EdgeList Graph::to_edge_list() const {
  EdgeList out;
  for (auto [a, b] : edges()) out.records.push_back({labels_[a], labels_[b], std::nullopt});
  return out;
}

Graph build_graph(const EdgeList& edges) {
  if (edges.records.empty()) throw DataError("cannot build a graph from an empty edge list");
  std::vector<std::string> labels;
  std::unordered_map<std::string, NodeId> index;
  auto intern = [&](const std::string& s) {
    auto [it, inserted] = index.emplace(s, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(s);
    return it->second;
  };
  std::vector<NodePair> pairs;
  pairs.reserve(edges.records.size());
  for (const auto& r : edges.records) {
    NodeId a = intern(r.u);
    NodeId b = intern(r.v);
    pairs.emplace_back(a, b);
  }
  return Graph::from_pairs(std::move(labels), pairs);
}

std::vector<std::size_t> connected_components(const Graph& g) {
  constexpr auto unseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> comp(g.num_nodes(), unseen);
  std::vector<NodeId> stack;
  std::size_t next = 0;
  for (NodeId s = 0; s < g.num_nodes(); ++s) {
    if (comp[s] != unseen) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId a = stack.back();
      stack.pop_back();
      for (NodeId b : g.neighbors(a)) {
        if (comp[b] == unseen) {
          comp[b] = next;
          stack.push_back(b);
        }
      }
    }
    ++next;
  }
  return comp;
}

Graph induced_subgraph(const Graph& g, std::span<const NodeId> keep) {
  constexpr auto absent = static_cast<NodeId>(-1);
  std::vector<NodeId> remap(g.num_nodes(), absent);
  std::vector<std::string> labels;
  labels.reserve(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    remap[keep[i]] = static_cast<NodeId>(i);
    labels.push_back(g.label(keep[i]));
  }
  std::vector<NodePair> pairs;
  for (NodeId a : keep) {
    for (NodeId b : g.neighbors(a)) {
      if (a < b && remap[b] != absent) pairs.emplace_back(remap[a], remap[b]);
    }
  }
  return Graph::from_pairs(std::move(labels), pairs);
}

Graph largest_connected_component(const Graph& g) {
  if (g.num_nodes() == 0) return g;
  auto comp = connected_components(g);
  std::size_t ncomp = *std::max_element(comp.begin(), comp.end()) + 1;
  if (ncomp == 1) return g;
  std::vector<std::size_t> sizes(ncomp, 0);
  for (auto c : comp) ++sizes[c];
  // Components are numbered by smallest member, so the first maximum wins ties.
  std::size_t best = static_cast<std::size_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  std::vector<NodeId> keep;
  keep.reserve(sizes[best]);
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    if (comp[i] == best) keep.push_back(i);
  }
  return induced_subgraph(g, keep);
}

std::vector<NodeId> edge_neighborhood(const Graph& g, NodeId u, NodeId v) {
  if (u == v) throw std::invalid_argument("edge_neighborhood requires distinct endpoints");
  auto nu = g.neighbors(u);
  auto nv = g.neighbors(v);
  std::vector<NodeId> out;
  out.reserve(nu.size() + nv.size());
  std::set_union(nu.begin(), nu.end(), nv.begin(), nv.end(), std::back_inserter(out));
  std::erase_if(out, [&](NodeId z) { return z == u || z == v; });
  return out;
}

}  // namespace pairlink
