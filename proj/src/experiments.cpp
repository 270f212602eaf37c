#include "pairlink/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "pairlink/local_scores.hpp"

namespace pairlink {

// ---------------------------------------------------------------------------
// enums

std::string_view to_string(Protocol p) {
  switch (p) {
    case Protocol::loeto: return "loeto";
    case Protocol::holdout: return "holdout";
    case Protocol::temporal: return "temporal";
  }
  return "?";
}

std::string_view to_string(TruthMode t) { return t == TruthMode::both ? "and" : "or"; }

std::string_view to_string(CandidateRule r) {
  return r == CandidateRule::non_adjacent_to_either ? "non-adjacent-to-either" : "non-adjacent-to-both";
}

std::optional<Protocol> parse_protocol(std::string_view s) {
  for (auto p : {Protocol::loeto, Protocol::holdout, Protocol::temporal}) {
    if (to_string(p) == s) return p;
  }
  return std::nullopt;
}

std::optional<TruthMode> parse_truth_mode(std::string_view s) {
  if (s == "and") return TruthMode::both;
  if (s == "or") return TruthMode::exactly_one;
  return std::nullopt;
}

EvalPolicy EvalPolicy::for_truth(TruthMode truth, std::size_t k) {
  return {k, truth,
          truth == TruthMode::both ? CandidateRule::non_adjacent_to_either : CandidateRule::non_adjacent_to_both};
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

template <class F>
void parallel_for(std::size_t count, std::size_t threads, F&& body) {
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = count;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string general(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double rank_key(double s) { return std::isnan(s) ? -std::numeric_limits<double>::infinity() : s; }

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t value) {
  for (int i = 0; i < 8; ++i) {
    h ^= (value >> (8 * i)) & 0xFF;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::vector<NodeId> sorted_intersection(std::span<const NodeId> a, std::span<const NodeId> b) {
  std::vector<NodeId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// splits

SplitDataset::SplitDataset(Graph train, std::span<const std::pair<std::string, std::string>> test,
                           Protocol protocol)
    : train_(std::move(train)), test_adj_(train_.num_nodes()), protocol_(protocol) {
  test_.reserve(test.size());
  for (const auto& [u, v] : test) {
    TestEdge e{u, v, train_.find(u), train_.find(v)};
    if (e.usable()) {
      test_adj_[*e.a].push_back(*e.b);
      test_adj_[*e.b].push_back(*e.a);
    }
    test_.push_back(std::move(e));
  }
  for (auto& row : test_adj_) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
}

std::size_t SplitDataset::unusable_test_edges() const {
  return static_cast<std::size_t>(std::count_if(test_.begin(), test_.end(), [](const TestEdge& e) { return !e.usable(); }));
}

bool SplitDataset::is_test_edge(NodeId a, NodeId b) const {
  const auto row = test_neighbors(a);
  return std::binary_search(row.begin(), row.end(), b);
}

std::span<const NodeId> SplitDataset::test_neighbors(NodeId a) const {
  if (a >= test_adj_.size()) throw std::out_of_range("node out of range for split");
  return test_adj_[a];
}

namespace {

std::vector<std::string> label_copy(const Graph& g) { return {g.labels().begin(), g.labels().end()}; }

}  // namespace

SplitDataset split_holdout(const Graph& g, double test_fraction, std::uint64_t rng_seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) throw std::invalid_argument("test fraction must lie in (0, 1)");
  auto edges = g.edges();
  const std::size_t m = edges.size();
  if (m < 2) throw DataError("hold-out split needs at least two edges");
  auto n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(m)));
  n_test = std::clamp<std::size_t>(n_test, 1, m - 1);

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(rng_seed);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<std::size_t> test_idx(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_test));
  std::sort(test_idx.begin(), test_idx.end());
  std::vector<bool> is_test(m, false);
  for (auto i : test_idx) is_test[i] = true;

  std::vector<NodePair> train_pairs;
  train_pairs.reserve(m - n_test);
  for (std::size_t i = 0; i < m; ++i) {
    if (!is_test[i]) train_pairs.push_back(edges[i]);
  }
  std::vector<std::pair<std::string, std::string>> test;
  test.reserve(n_test);
  for (auto i : test_idx) test.emplace_back(g.label(edges[i].first), g.label(edges[i].second));

  auto full = Graph::from_pairs(label_copy(g), train_pairs);
  auto train = largest_connected_component(full);
  if (train.num_nodes() < 3) throw DataError("training graph's largest component has fewer than 3 nodes");
  const std::size_t dropped = full.num_edges() - train.num_edges();

  SplitDataset split(std::move(train), test, Protocol::holdout);
  split.lcc_dropped_edges = dropped;
  split.fraction = test_fraction;
  split.rng_seed = rng_seed;
  return split;
}

SplitDataset split_temporal(const EdgeList& edges, double train_fraction) {
  if (!edges.has_timestamps) throw DataError("temporal split requires timestamps");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw std::invalid_argument("train fraction must lie in (0, 1)");

  struct Unique {
    std::string u, v;
    std::int64_t t;
    std::size_t first;
  };
  std::vector<Unique> unique;
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < edges.records.size(); ++i) {
    const auto& r = edges.records[i];
    if (!r.t) throw DataError("temporal split requires a timestamp on every record");
    if (r.u == r.v) continue;
    const bool ordered = r.u < r.v;
    const std::string& lo = ordered ? r.u : r.v;
    const std::string& hi = ordered ? r.v : r.u;
    std::string key = lo;
    key.push_back('\0');
    key += hi;
    auto [it, inserted] = seen.emplace(std::move(key), unique.size());
    if (inserted) {
      unique.push_back({r.u, r.v, *r.t, i});
    } else {
      unique[it->second].t = std::min(unique[it->second].t, *r.t);
    }
  }
  if (unique.size() < 2) throw DataError("temporal split needs at least two unique edges");
  std::stable_sort(unique.begin(), unique.end(), [](const Unique& a, const Unique& b) {
    return a.t < b.t || (a.t == b.t && a.first < b.first);
  });

  auto n_train = static_cast<std::size_t>(std::ceil(train_fraction * static_cast<double>(unique.size()) - 1e-9));
  n_train = std::clamp<std::size_t>(n_train, 1, unique.size() - 1);

  EdgeList train_list;
  for (std::size_t i = 0; i < n_train; ++i) train_list.records.push_back({unique[i].u, unique[i].v, unique[i].t});
  auto full = build_graph(train_list);
  auto train = largest_connected_component(full);
  if (train.num_nodes() < 3) throw DataError("training graph's largest component has fewer than 3 nodes");
  const std::size_t dropped = full.num_edges() - train.num_edges();

  std::vector<std::pair<std::string, std::string>> test;
  for (std::size_t i = n_train; i < unique.size(); ++i) test.emplace_back(unique[i].u, unique[i].v);

  SplitDataset split(std::move(train), test, Protocol::temporal);
  split.lcc_dropped_edges = dropped;
  split.fraction = train_fraction;
  return split;
}

SplitDataset split_loeto(const Graph& g, NodeId u, NodeId v) {
  if (u == v || !g.has_edge(u, v)) throw std::invalid_argument("LOETO seed must be an edge of the graph");
  const auto wedge_tips = sorted_intersection(g.neighbors(u), g.neighbors(v));
  if (wedge_tips.empty()) throw DataError("seed edge " + g.label(u) + "-" + g.label(v) + " lies in no triangle");

  std::vector<bool> tip(g.num_nodes(), false);
  for (NodeId w : wedge_tips) tip[w] = true;
  std::vector<NodePair> train_pairs;
  std::vector<std::pair<std::string, std::string>> test;
  for (auto [a, b] : g.edges()) {
    const bool wedge = ((a == u || a == v) && tip[b]) || ((b == u || b == v) && tip[a]);
    if (wedge) {
      test.emplace_back(g.label(a), g.label(b));
    } else {
      train_pairs.emplace_back(a, b);
    }
  }
  auto full = Graph::from_pairs(label_copy(g), train_pairs);
  auto train = largest_connected_component(full);
  const std::size_t dropped = full.num_edges() - train.num_edges();

  SplitDataset split(std::move(train), test, Protocol::loeto);
  split.lcc_dropped_edges = dropped;
  split.seed_edge = std::make_pair(g.label(u), g.label(v));
  return split;
}

// ---------------------------------------------------------------------------
// truth, candidates, metrics

std::vector<NodeId> ground_truth(const SplitDataset& split, NodeId u, NodeId v, const EvalPolicy& policy) {
  const Graph& train = split.train();
  std::vector<NodeId> out;
  if (policy.truth == TruthMode::both) {
    out = sorted_intersection(split.test_neighbors(u), split.test_neighbors(v));
  } else {
    auto one_sided = [&](NodeId held, NodeId kept) {
      for (NodeId w : split.test_neighbors(held)) {
        if (w != kept && train.has_edge(kept, w) && !split.is_test_edge(kept, w)) out.push_back(w);
      }
    };
    one_sided(u, v);
    one_sided(v, u);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  std::erase_if(out, [&](NodeId w) { return w == u || w == v; });
  return out;
}

std::vector<NodeId> candidate_nodes(const Graph& train, NodeId u, NodeId v, CandidateRule rule) {
  std::vector<unsigned char> touch(train.num_nodes(), 0);
  for (NodeId w : train.neighbors(u)) touch[w] |= 1;
  for (NodeId w : train.neighbors(v)) touch[w] |= 2;
  std::vector<NodeId> out;
  for (NodeId w = 0; w < train.num_nodes(); ++w) {
    if (w == u || w == v) continue;
    const bool excluded = rule == CandidateRule::non_adjacent_to_either ? touch[w] != 0 : touch[w] == 3;
    if (!excluded) out.push_back(w);
  }
  return out;
}

std::size_t best_truth_rank(std::span<const double> scores, std::span<const NodeId> candidates,
                            std::span<const NodeId> truth) {
  auto before = [&](NodeId a, NodeId b) {
    const double sa = rank_key(scores[a]), sb = rank_key(scores[b]);
    return sa > sb || (sa == sb && a < b);
  };
  std::optional<NodeId> best;
  for (NodeId w : truth) {
    if (!std::binary_search(candidates.begin(), candidates.end(), w)) continue;
    if (!best || before(w, *best)) best = w;
  }
  if (!best) return 0;
  std::size_t ahead = 0;
  for (NodeId c : candidates) {
    if (before(c, *best)) ++ahead;
  }
  return ahead + 1;
}

TrialReport success_probability(const ScoreVector& scores, const SplitDataset& split, NodeId u, NodeId v,
                                const EvalPolicy& policy) {
  if (policy.k < 1) throw std::invalid_argument("k must be at least 1");
  const Graph& train = split.train();
  if (scores.size() != train.num_nodes()) throw std::invalid_argument("score vector length does not match train graph");
  const auto truth = ground_truth(split, u, v, policy);
  if (truth.empty()) throw DataError("seed edge has no ground-truth node");
  const auto cand = candidate_nodes(train, u, v, policy.candidates);
  TrialReport r;
  r.method = scores.method;
  r.seed_u = train.label(u);
  r.seed_v = train.label(v);
  r.truth_count = truth.size();
  r.best_rank = best_truth_rank(scores.values, cand, truth);
  r.sp = (r.best_rank > 0 && r.best_rank <= policy.k) ? 1 : 0;
  r.k = policy.k;
  return r;
}

double auc(std::span<const double> scores, std::span<const NodeId> positives, std::span<const NodeId> candidates) {
  std::vector<NodeId> cand(candidates.begin(), candidates.end());
  std::sort(cand.begin(), cand.end());
  std::vector<NodeId> pos(positives.begin(), positives.end());
  std::sort(pos.begin(), pos.end());
  pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
  for (NodeId p : pos) {
    if (!std::binary_search(cand.begin(), cand.end(), p)) throw std::invalid_argument("positive node is not a candidate");
  }
  const std::size_t n_pos = pos.size();
  const std::size_t n_neg = cand.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) throw std::invalid_argument("AUC needs at least one positive and one negative");

  std::vector<std::pair<double, bool>> items;
  items.reserve(cand.size());
  for (NodeId c : cand) items.emplace_back(rank_key(scores[c]), std::binary_search(pos.begin(), pos.end(), c));
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  double wins = 0.0;
  double negatives_below = 0.0;
  std::size_t i = 0;
  while (i < items.size()) {
    std::size_t j = i;
    double p = 0, n = 0;
    while (j < items.size() && items[j].first == items[i].first) {
      (items[j].second ? p : n) += 1.0;
      ++j;
    }
    wins += p * negatives_below + 0.5 * p * n;
    negatives_below += n;
    i = j;
  }
  return wins / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

// ---------------------------------------------------------------------------
// pairwise methods

namespace {

const std::vector<std::string>& pairwise_names() {
  static const std::vector<std::string> names{"pairseed", "trpr",   "trprw",  "ss",     "ss-other", "max",
                                              "mul",      "js",     "aa",     "pa",     "js-max",   "js-mul",
                                              "aa-max",   "aa-mul", "oracle", "antioracle"};
  return names;
}

// Scores one trial; single-seed vectors are shared between ss/max/mul.
class PairScorer {
 public:
  explicit PairScorer(const TrialContext& ctx) : ctx_(ctx) {}

  ScoreVector score(std::string_view method) {
    const Graph& g = ctx_.train;
    const NodeId lo = std::min(ctx_.u, ctx_.v), hi = std::max(ctx_.u, ctx_.v);
    ScoreVector out;
    if (method == "pairseed") {
      out = pair_seeded_pagerank(g, ctx_.u, ctx_.v, ctx_.params);
    } else if (method == "trpr" || method == "trprw") {
      out = trpr(g, ctx_.triangles, pair_seed(g, ctx_.u, ctx_.v), ctx_.params, method == "trprw");
    } else if (method == "ss") {
      out = single(lo);
    } else if (method == "ss-other") {
      out = single(hi);
    } else if (method == "max" || method == "mul") {
      out = combine_scores(single(ctx_.u), single(ctx_.v), method == "max" ? Combine::max : Combine::mul);
    } else if (auto local = parse_local_method(method)) {
      out = score_all_nodes(g, ctx_.u, ctx_.v, *local);
    } else if (method == "oracle" || method == "antioracle") {
      out.values.assign(g.num_nodes(), 0.0);
      const double mark = method == "oracle" ? 1.0 : -1.0;
      for (NodeId w : ctx_.truth) out.values[w] = mark;
    } else {
      throw std::invalid_argument("unknown pairwise method '" + std::string(method) + "'");
    }
    out.method = std::string(method);
    return out;
  }

 private:
  const ScoreVector& single(NodeId s) {
    auto& slot = s == ctx_.u ? su_ : sv_;
    if (!slot) slot = single_seeded_pagerank(ctx_.train, s, ctx_.params);
    return *slot;
  }

  const TrialContext& ctx_;
  std::optional<ScoreVector> su_;
  std::optional<ScoreVector> sv_;
};

}  // namespace

bool is_pairwise_method(std::string_view name) {
  const auto& names = pairwise_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::vector<std::string> default_pairwise_methods() {
  return {"pairseed", "trpr", "trprw", "ss", "max", "mul", "js", "aa", "pa", "js-max", "js-mul", "aa-max", "aa-mul"};
}

ScoreVector score_pairwise(std::string_view method, const TrialContext& ctx) { return PairScorer(ctx).score(method); }

void PairwiseConfig::validate() const {
  params.validate();
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (methods.empty()) throw std::invalid_argument("at least one method is required");
  for (const auto& m : methods) {
    if (!is_pairwise_method(m)) throw std::invalid_argument("unknown pairwise method '" + m + "'");
  }
  if (ks.empty()) throw std::invalid_argument("at least one k is required");
  for (auto k : ks) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
  }
  if (protocol != Protocol::loeto && !(fraction > 0.0 && fraction < 1.0)) {
    throw std::invalid_argument("fraction must lie in (0, 1)");
  }
}

namespace {

EvalPolicy resolved_policy(const PairwiseConfig& cfg) {
  auto p = EvalPolicy::for_truth(cfg.truth, cfg.ks.front());
  if (cfg.candidate_rule) p.candidates = *cfg.candidate_rule;
  return p;
}

PairwiseTrial evaluate_trial(const SplitDataset& split, const TriangleSet& ts, NodeId u, NodeId v,
                             std::span<const NodeId> truth, const EvalPolicy& policy, const PairwiseConfig& cfg) {
  const Graph& train = split.train();
  const auto cand = candidate_nodes(train, u, v, policy.candidates);

  std::uint64_t digest = 0xCBF29CE484222325ULL;
  digest = fnv1a(digest, train.num_nodes());
  digest = fnv1a(digest, train.num_edges());
  digest = fnv1a(digest, u);
  digest = fnv1a(digest, v);
  for (NodeId c : cand) digest = fnv1a(digest, c);
  for (NodeId w : truth) digest = fnv1a(digest, w ^ 0x80000000u);

  PairwiseTrial trial;
  trial.seed_u = train.label(u);
  trial.seed_v = train.label(v);
  trial.truth_count = truth.size();

  TrialContext ctx{train, ts, u, v, truth, cfg.params};
  PairScorer scorer(ctx);
  for (const auto& m : cfg.methods) {
    trial.context_digest.push_back(digest);
    const auto scores = scorer.score(m);
    trial.best_rank.push_back(truth.empty() ? 0 : best_truth_rank(scores.values, cand, truth));
  }
  return trial;
}

nlohmann::json base_metadata(const PairwiseConfig& cfg, const EvalPolicy& policy) {
  nlohmann::json meta;
  meta["command"] = "pairwise";
  meta["protocol"] = to_string(cfg.protocol);
  meta["fraction"] = cfg.fraction;
  meta["methods"] = cfg.methods;
  meta["k"] = cfg.ks;
  meta["truth_mode"] = to_string(cfg.truth);
  meta["candidate_rule"] = to_string(policy.candidates);
  meta["trials"] = cfg.trials;
  meta["rng"] = {{"generator", "std::mt19937_64"},
                 {"seed_derivation", "splitmix64(master + golden_gamma * (stream + 1))"},
                 {"master_seed", cfg.rng_seed}};
  meta["alpha"] = cfg.params.alpha;
  meta["iterations"] = cfg.params.iterations;
  if (cfg.params.tolerance) {
    meta["tolerance"] = *cfg.params.tolerance;
  } else {
    meta["tolerance"] = "1e-15*n";
  }
  meta["allow_empty_truth"] = cfg.allow_empty_truth;
  return meta;
}

PairwiseResult finish(const PairwiseConfig& cfg, std::vector<PairwiseTrial> trials, nlohmann::json meta) {
  PairwiseResult r;
  r.methods = cfg.methods;
  r.ks = cfg.ks;
  std::size_t discards = 0;
  for (const auto& t : trials) discards += t.discards;
  for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
    for (auto k : cfg.ks) {
      std::size_t hits = 0;
      for (const auto& t : trials) {
        if (t.best_rank[mi] > 0 && t.best_rank[mi] <= k) ++hits;
      }
      r.summary.push_back({cfg.methods[mi], k, trials.size(), discards,
                           static_cast<double>(hits) / static_cast<double>(trials.size())});
    }
  }
  meta["discards"] = discards;
  r.metadata = std::move(meta);
  r.trials = std::move(trials);
  return r;
}

PairwiseResult run_on_split(const SplitDataset& split, const PairwiseConfig& cfg) {
  const auto policy = resolved_policy(cfg);
  const Graph& train = split.train();
  const auto ts = enumerate_triangles(train);

  std::vector<NodePair> eligible;
  for (auto [a, b] : train.edges()) {
    if (cfg.allow_empty_truth || !ground_truth(split, a, b, policy).empty()) eligible.emplace_back(a, b);
  }
  if (eligible.empty()) throw DataError("no training edge has a ground-truth node; nothing to evaluate");

  std::vector<PairwiseTrial> trials(cfg.trials);
  parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
    std::mt19937_64 rng(derive_seed(cfg.rng_seed, t + 1));
    std::uniform_int_distribution<std::size_t> pick(0, eligible.size() - 1);
    const auto [u, v] = eligible[pick(rng)];
    const auto truth = ground_truth(split, u, v, policy);
    trials[t] = evaluate_trial(split, ts, u, v, truth, policy, cfg);
  });

  auto meta = base_metadata(cfg, policy);
  meta["train"] = {{"nodes", train.num_nodes()}, {"edges", train.num_edges()}, {"triangles", ts.size()}};
  meta["test_edges"] = split.test_edges().size();
  meta["unusable_test_edges"] = split.unusable_test_edges();
  meta["lcc_dropped_train_edges"] = split.lcc_dropped_edges;
  meta["eligible_seed_edges"] = eligible.size();
  return finish(cfg, std::move(trials), std::move(meta));
}

PairwiseResult run_loeto(const Graph& g, const PairwiseConfig& cfg) {
  constexpr std::size_t max_attempts = 1000;
  const auto policy = resolved_policy(cfg);
  const auto all_ts = enumerate_triangles(g);
  std::vector<NodePair> in_triangle;
  in_triangle.reserve(all_ts.size() * 3);
  for (const auto& [a, b, c] : all_ts.triples()) {
    in_triangle.emplace_back(a, b);
    in_triangle.emplace_back(a, c);
    in_triangle.emplace_back(b, c);
  }
  std::sort(in_triangle.begin(), in_triangle.end());
  in_triangle.erase(std::unique(in_triangle.begin(), in_triangle.end()), in_triangle.end());
  if (in_triangle.empty()) throw DataError("LOETO needs at least one edge inside a triangle");

  std::vector<PairwiseTrial> trials(cfg.trials);
  parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
    std::mt19937_64 rng(derive_seed(cfg.rng_seed, t + 1));
    std::uniform_int_distribution<std::size_t> pick(0, in_triangle.size() - 1);
    std::size_t discards = 0;
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
      const auto [a, b] = in_triangle[pick(rng)];
      const auto split = split_loeto(g, a, b);
      const Graph& train = split.train();
      const auto u = train.find(g.label(a));
      const auto v = train.find(g.label(b));
      if (!u || !v) {
        ++discards;
        continue;
      }
      const auto truth = ground_truth(split, *u, *v, policy);
      if (truth.empty() && !cfg.allow_empty_truth) {
        ++discards;
        continue;
      }
      const auto ts = enumerate_triangles(train);
      trials[t] = evaluate_trial(split, ts, *u, *v, truth, policy, cfg);
      trials[t].discards = discards;
      return;
    }
    throw DataError("LOETO could not find a valid seed edge in " + std::to_string(max_attempts) + " attempts");
  });

  auto meta = base_metadata(cfg, policy);
  meta["graph"] = {{"nodes", g.num_nodes()}, {"edges", g.num_edges()}, {"triangles", all_ts.size()}};
  meta["eligible_seed_edges"] = in_triangle.size();
  return finish(cfg, std::move(trials), std::move(meta));
}

}  // namespace

std::vector<TrialReport> PairwiseResult::trial_reports() const {
  std::vector<TrialReport> out;
  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    for (const auto& t : trials) {
      for (auto k : ks) {
        const auto rank = t.best_rank[mi];
        out.push_back({methods[mi], t.seed_u, t.seed_v, t.truth_count, rank, (rank > 0 && rank <= k) ? 1 : 0, k});
      }
    }
  }
  return out;
}

PairwiseResult run_pairwise_experiment(const Graph& g, const PairwiseConfig& cfg) {
  cfg.validate();
  const auto lcc = largest_connected_component(g);
  switch (cfg.protocol) {
    case Protocol::loeto:
      return run_loeto(lcc, cfg);
    case Protocol::holdout: {
      const auto split = split_holdout(lcc, cfg.fraction, derive_seed(cfg.rng_seed, 0));
      return run_on_split(split, cfg);
    }
    case Protocol::temporal:
      break;
  }
  throw std::invalid_argument("temporal protocol needs a timestamped edge list");
}

PairwiseResult run_pairwise_experiment(const EdgeList& edges, const PairwiseConfig& cfg) {
  cfg.validate();
  if (cfg.protocol == Protocol::temporal) {
    return run_on_split(split_temporal(edges, cfg.fraction), cfg);
  }
  return run_pairwise_experiment(build_graph(edges), cfg);
}

void write_pairwise_summary_csv(std::ostream& out, const PairwiseResult& r) {
  out << "method,k,trials,discards,mean_sp\n";
  for (const auto& row : r.summary) {
    out << row.method << ',' << row.k << ',' << row.trials << ',' << row.discards << ',' << fixed6(row.mean_sp)
        << '\n';
  }
}

void write_pairwise_trials_csv(std::ostream& out, const PairwiseResult& r) {
  out << "method,seed_u,seed_v,truth_count,best_rank,sp,k\n";
  for (const auto& t : r.trial_reports()) {
    out << t.method << ',' << t.seed_u << ',' << t.seed_v << ',' << t.truth_count << ',' << t.best_rank << ','
        << t.sp << ',' << t.k << '\n';
  }
}

// ---------------------------------------------------------------------------
// standard link prediction

namespace {

const std::vector<std::string>& linkpred_names() {
  static const std::vector<std::string> names{"single", "sum", "max", "max-single", "star", "trpr", "oracle"};
  return names;
}

std::vector<double> elementwise_max(std::vector<double> acc, std::span<const double> x) {
  if (acc.empty()) return {x.begin(), x.end()};
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = std::max(acc[i], x[i]);
  return acc;
}

}  // namespace

bool is_linkpred_method(std::string_view name) {
  const auto& names = linkpred_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::vector<std::string> default_linkpred_methods() { return {"single", "sum", "max", "star", "trpr"}; }

void LinkpredConfig::validate() const {
  params.validate();
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) throw std::invalid_argument("test fraction must lie in (0, 1)");
  if (num_nodes < 1) throw std::invalid_argument("num_nodes must be at least 1");
  for (const auto& m : methods) {
    if (!is_linkpred_method(m)) throw std::invalid_argument("unknown link prediction method '" + m + "'");
  }
}

ScoreVector score_linkpred(std::string_view method, const Graph& train, const TriangleSet& ts, NodeId i,
                           std::span<const NodeId> positives, const DiffusionParams& params) {
  ScoreVector out;
  if (method == "single") {
    out = single_seeded_pagerank(train, i, params);
  } else if (method == "sum") {
    out = pagerank(train, weighted_star_seed(train, i), params);
  } else if (method == "max") {
    // Literal form: element-wise max over the pair-seeded vectors of the edges at i.
    std::vector<double> acc;
    for (NodeId j : train.neighbors(i)) acc = elementwise_max(std::move(acc), pair_seeded_pagerank(train, i, j, params).values);
    out.values = std::move(acc);
  } else if (method == "max-single") {
    auto acc = single_seeded_pagerank(train, i, params).values;
    for (NodeId j : train.neighbors(i)) acc = elementwise_max(std::move(acc), single_seeded_pagerank(train, j, params).values);
    out.values = std::move(acc);
  } else if (method == "star") {
    out = pagerank(train, star_seed(train, i), params);
  } else if (method == "trpr") {
    out = trpr(train, ts, star_seed(train, i), params, false);
  } else if (method == "oracle") {
    out.values.assign(train.num_nodes(), 0.0);
    for (NodeId p : positives) out.values[p] = 1.0;
  } else {
    throw std::invalid_argument("unknown link prediction method '" + std::string(method) + "'");
  }
  out.method = std::string(method);
  return out;
}

LinkpredResult run_standard_linkpred(const Graph& g, const LinkpredConfig& cfg) {
  cfg.validate();
  std::vector<std::string> methods{"single"};
  for (const auto& m : cfg.methods) {
    if (std::find(methods.begin(), methods.end(), m) == methods.end()) methods.push_back(m);
  }

  const auto lcc = largest_connected_component(g);
  const auto split = split_holdout(lcc, cfg.test_fraction, derive_seed(cfg.rng_seed, 0));
  const Graph& train = split.train();
  const bool need_triangles = std::find(methods.begin(), methods.end(), "trpr") != methods.end();
  const auto ts = need_triangles ? enumerate_triangles(train) : TriangleSet(train.num_nodes(), {});

  LinkpredResult r;
  std::vector<NodeId> order(train.num_nodes());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return train.degree(a) > train.degree(b); });
  if (order.size() < cfg.num_nodes) {
    r.warnings.push_back("training graph has only " + std::to_string(order.size()) + " nodes; cohort shrinks from " +
                         std::to_string(cfg.num_nodes));
  }
  order.resize(std::min(order.size(), cfg.num_nodes));
  r.cohort_size = order.size();

  // AUC per cohort node per method; empty for skipped nodes.
  std::vector<std::vector<double>> aucs(order.size());
  parallel_for(order.size(), cfg.threads, [&](std::size_t idx) {
    const NodeId i = order[idx];
    std::vector<NodeId> cand;
    for (NodeId w = 0; w < train.num_nodes(); ++w) {
      if (w != i && !train.has_edge(i, w)) cand.push_back(w);
    }
    std::vector<NodeId> positives = sorted_intersection(split.test_neighbors(i), cand);
    if (positives.empty() || positives.size() == cand.size()) return;
    for (const auto& m : methods) {
      const auto s = score_linkpred(m, train, ts, i, positives, cfg.params);
      aucs[idx].push_back(auc(s.values, positives, cand));
    }
  });

  std::vector<double> sum_auc(methods.size(), 0.0), sum_delta(methods.size(), 0.0);
  std::size_t evaluated = 0;
  for (std::size_t idx = 0; idx < order.size(); ++idx) {
    if (aucs[idx].empty()) {
      ++r.skipped_nodes;
      continue;
    }
    ++evaluated;
    const NodeId i = order[idx];
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      r.per_node.push_back({train.label(i), train.degree(i), methods[mi], aucs[idx][mi]});
      sum_auc[mi] += aucs[idx][mi];
      sum_delta[mi] += aucs[idx][mi] - aucs[idx][0];
    }
  }
  if (r.skipped_nodes > 0) {
    r.warnings.push_back(std::to_string(r.skipped_nodes) + " cohort nodes skipped (no held-out edge among candidates)");
  }
  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    LinkpredSummaryRow row{methods[mi], 0.0, 0.0, 0.0, evaluated};
    if (evaluated > 0) {
      const double n = static_cast<double>(evaluated);
      row.mean_auc = sum_auc[mi] / n;
      row.mean_delta_vs_baseline = sum_delta[mi] / n;
      row.mean_dist_to_diag = row.mean_delta_vs_baseline / std::sqrt(2.0);
    }
    r.summary.push_back(row);
  }

  nlohmann::json meta;
  meta["command"] = "linkpred";
  meta["test_fraction"] = cfg.test_fraction;
  meta["num_nodes"] = cfg.num_nodes;
  meta["methods"] = methods;
  meta["rng"] = {{"generator", "std::mt19937_64"}, {"master_seed", cfg.rng_seed}};
  meta["alpha"] = cfg.params.alpha;
  meta["iterations"] = cfg.params.iterations;
  meta["train"] = {{"nodes", train.num_nodes()}, {"edges", train.num_edges()}};
  meta["test_edges"] = split.test_edges().size();
  meta["unusable_test_edges"] = split.unusable_test_edges();
  meta["cohort_size"] = r.cohort_size;
  meta["skipped_nodes"] = r.skipped_nodes;
  meta["warnings"] = r.warnings;
  r.metadata = std::move(meta);
  return r;
}

void write_linkpred_nodes_csv(std::ostream& out, const LinkpredResult& r) {
  out << "node,degree,method,auc\n";
  for (const auto& row : r.per_node) out << row.node << ',' << row.degree << ',' << row.method << ',' << fixed6(row.auc) << '\n';
}

void write_linkpred_summary_csv(std::ostream& out, const LinkpredResult& r) {
  out << "method,mean_auc,mean_delta_vs_baseline,mean_dist_to_diag\n";
  for (const auto& row : r.summary) {
    out << row.method << ',' << fixed6(row.mean_auc) << ',' << fixed6(row.mean_delta_vs_baseline) << ','
        << fixed6(row.mean_dist_to_diag) << '\n';
  }
}

// ---------------------------------------------------------------------------
// diagnostics

DiagnosticReport trpr_diagnostics(const Graph& g, const TriangleSet& ts, const SeedVector& seed,
                                  const DiffusionParams& params, std::size_t max_iters, bool weighted,
                                  std::size_t top_k, std::size_t early) {
  params.validate();
  if (max_iters < 1) throw std::invalid_argument("max_iters must be at least 1");
  DiagnosticReport rep;
  rep.early = std::min(early, max_iters);
  rep.late = max_iters;
  TrprIteration it(g, ts, seed, params.alpha, weighted);
  std::vector<double> prev = it.current();
  std::vector<double> at_early;
  for (std::size_t i = 1; i <= max_iters; ++i) {
    const auto& x = it.step();
    DiagnosticRow row;
    row.iteration = i;
    for (std::size_t j = 0; j < x.size(); ++j) row.l1_delta += std::abs(x[j] - prev[j]);
    row.full = rank_stability(prev, x);
    row.top = rank_stability(prev, x, top_k);
    rep.rows.push_back(row);
    if (i == rep.early) at_early = x;
    prev = x;
  }
  rep.endpoints_full = rank_stability(at_early, prev);
  rep.endpoints_top = rank_stability(at_early, prev, top_k);
  return rep;
}

void write_diagnostics_csv(std::ostream& out, const DiagnosticReport& r) {
  out << "iter,l1_delta,spearman_full,kendall_full,spearman_top100,kendall_top100\n";
  char buf[64];
  for (const auto& row : r.rows) {
    std::snprintf(buf, sizeof buf, "%.17g", row.l1_delta);
    out << row.iteration << ',' << buf << ',' << general(row.full.spearman) << ',' << general(row.full.kendall) << ','
        << general(row.top.spearman) << ',' << general(row.top.kendall) << '\n';
  }
  out << r.early << "-vs-" << r.late << ",," << general(r.endpoints_full.spearman) << ','
      << general(r.endpoints_full.kendall) << ',' << general(r.endpoints_top.spearman) << ','
      << general(r.endpoints_top.kendall) << '\n';
}

}  // namespace pairlink
