#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "pairlink/diffusion.hpp"
#include "pairlink/graph.hpp"
#include "pairlink/triangles.hpp"

namespace pairlink {

enum class Protocol { loeto, holdout, temporal };
enum class TruthMode { both, exactly_one };  // "and" / "or"
enum class CandidateRule {
  /// Nodes adjacent to neither endpoint.
  non_adjacent_to_either,
  /// Nodes not adjacent to both endpoints (i.e. not already closing a triangle).
  non_adjacent_to_both,
};

std::string_view to_string(Protocol p);
std::string_view to_string(TruthMode t);
std::string_view to_string(CandidateRule r);
std::optional<Protocol> parse_protocol(std::string_view s);
std::optional<TruthMode> parse_truth_mode(std::string_view s);

struct EvalPolicy {
  std::size_t k = 5;
  TruthMode truth = TruthMode::both;
  CandidateRule candidates = CandidateRule::non_adjacent_to_either;

  /// Under OR the truth node is by definition adjacent to one endpoint, so
  /// only nodes already adjacent to both are excluded.
  static EvalPolicy for_truth(TruthMode truth, std::size_t k);
};

/// A held-out edge, in original labels plus its train indices when both
/// endpoints survived into the training graph.
struct TestEdge {
  std::string u;
  std::string v;
  std::optional<NodeId> a;
  std::optional<NodeId> b;

  bool usable() const noexcept { return a.has_value() && b.has_value(); }
};

class SplitDataset {
 public:
  SplitDataset(Graph train, std::span<const std::pair<std::string, std::string>> test, Protocol protocol);

  const Graph& train() const noexcept { return train_; }
  std::span<const TestEdge> test_edges() const noexcept { return test_; }
  Protocol protocol() const noexcept { return protocol_; }

  std::size_t unusable_test_edges() const;
  bool is_test_edge(NodeId a, NodeId b) const;
  /// Train-index partners of `a` across usable test edges, sorted.
  std::span<const NodeId> test_neighbors(NodeId a) const;

  /// Train edges lost when the largest component was extracted.
  std::size_t lcc_dropped_edges = 0;
  double fraction = 0.0;
  std::uint64_t rng_seed = 0;
  std::optional<std::pair<std::string, std::string>> seed_edge;

 private:
  Graph train_;
  std::vector<TestEdge> test_;
  std::vector<std::vector<NodeId>> test_adj_;
  Protocol protocol_;
};

/// Uniform random edge partition; round(fraction·m) edges held out (at least one).
SplitDataset split_holdout(const Graph& g, double test_fraction, std::uint64_t rng_seed);

/// Unique undirected edges ordered by earliest timestamp (ties by input
/// order); the first ⌈fraction·|unique|⌉ train, the rest test.
SplitDataset split_temporal(const EdgeList& edges, double train_fraction);

/// Leave One Edge's Triangles Out: both wedge edges of every triangle through
/// (u, v) are held out.
SplitDataset split_loeto(const Graph& g, NodeId u, NodeId v);

/// Ground-truth nodes (train indices) for seed edge (u, v) of the train graph.
std::vector<NodeId> ground_truth(const SplitDataset& split, NodeId u, NodeId v, const EvalPolicy& policy);

/// Candidate nodes for a seed edge, ascending.
std::vector<NodeId> candidate_nodes(const Graph& train, NodeId u, NodeId v, CandidateRule rule);

/// 1-based rank of the best truth node among candidates (score descending,
/// ties by ascending index); 0 if no truth node is a candidate.
std::size_t best_truth_rank(std::span<const double> scores, std::span<const NodeId> candidates,
                            std::span<const NodeId> truth);

struct TrialReport {
  std::string method;
  std::string seed_u;
  std::string seed_v;
  std::size_t truth_count = 0;
  std::size_t best_rank = 0;
  int sp = 0;
  std::size_t k = 0;
};

TrialReport success_probability(const ScoreVector& scores, const SplitDataset& split, NodeId u, NodeId v,
                                const EvalPolicy& policy);

/// Mann–Whitney AUC over `candidates`; ties count one half.
double auc(std::span<const double> scores, std::span<const NodeId> positives, std::span<const NodeId> candidates);

// ---------------------------------------------------------------------------
// Pairwise link prediction harness

/// Everything a pairwise method may look at for one trial.
struct TrialContext {
  const Graph& train;
  const TriangleSet& triangles;
  NodeId u;
  NodeId v;
  /// Only the oracle pseudo-methods read this.
  std::span<const NodeId> truth;
  const DiffusionParams& params;
};

/// Known pairwise method names: pairseed, trpr, trprw, ss, ss-other, max, mul,
/// js, aa, pa, js-max, js-mul, aa-max, aa-mul, oracle, antioracle.
bool is_pairwise_method(std::string_view name);
std::vector<std::string> default_pairwise_methods();
ScoreVector score_pairwise(std::string_view method, const TrialContext& ctx);

struct PairwiseConfig {
  Protocol protocol = Protocol::holdout;
  /// Held-out fraction for holdout; training fraction for temporal; unused by LOETO.
  double fraction = 0.3;
  std::vector<std::string> methods = default_pairwise_methods();
  std::vector<std::size_t> ks{5, 25};
  TruthMode truth = TruthMode::both;
  std::optional<CandidateRule> candidate_rule;
  std::size_t trials = 500;
  std::uint64_t rng_seed = 0;
  DiffusionParams params;
  bool allow_empty_truth = false;
  std::size_t threads = 1;

  void validate() const;
};

struct PairwiseSummaryRow {
  std::string method;
  std::size_t k = 0;
  std::size_t trials = 0;
  std::size_t discards = 0;
  double mean_sp = 0.0;
};

struct PairwiseTrial {
  std::string seed_u;
  std::string seed_v;
  std::size_t truth_count = 0;
  std::size_t discards = 0;
  /// One per configured method, in config order.
  std::vector<std::size_t> best_rank;
  /// Digest of (split, seed edge, candidates, truth) as handed to each method.
  std::vector<std::uint64_t> context_digest;
};

struct PairwiseResult {
  std::vector<PairwiseSummaryRow> summary;
  std::vector<PairwiseTrial> trials;
  std::vector<std::string> methods;
  std::vector<std::size_t> ks;
  nlohmann::json metadata;

  std::vector<TrialReport> trial_reports() const;
};

/// Input graph (LCC is taken first). Protocol must be loeto or holdout.
PairwiseResult run_pairwise_experiment(const Graph& g, const PairwiseConfig& cfg);
/// Any protocol; temporal requires timestamps.
PairwiseResult run_pairwise_experiment(const EdgeList& edges, const PairwiseConfig& cfg);

void write_pairwise_summary_csv(std::ostream& out, const PairwiseResult& r);
void write_pairwise_trials_csv(std::ostream& out, const PairwiseResult& r);

// ---------------------------------------------------------------------------
// Multi-seeded standard link prediction

/// single (baseline), sum, max, max-single, star, trpr, oracle.
bool is_linkpred_method(std::string_view name);
std::vector<std::string> default_linkpred_methods();

struct LinkpredConfig {
  double test_fraction = 0.2;
  std::size_t num_nodes = 100;
  std::vector<std::string> methods = default_linkpred_methods();
  std::uint64_t rng_seed = 0;
  DiffusionParams params;
  std::size_t threads = 1;

  void validate() const;
};

struct NodeAucRow {
  std::string node;
  std::size_t degree = 0;
  std::string method;
  double auc = 0.0;
};

struct LinkpredSummaryRow {
  std::string method;
  double mean_auc = 0.0;
  double mean_delta_vs_baseline = 0.0;
  /// Mean signed perpendicular distance of (baseline AUC, method AUC) to y = x;
  /// positive above the line.
  double mean_dist_to_diag = 0.0;
  std::size_t nodes = 0;
};

struct LinkpredResult {
  std::vector<NodeAucRow> per_node;
  std::vector<LinkpredSummaryRow> summary;
  std::size_t cohort_size = 0;
  std::size_t skipped_nodes = 0;
  std::vector<std::string> warnings;
  nlohmann::json metadata;
};

ScoreVector score_linkpred(std::string_view method, const Graph& train, const TriangleSet& ts, NodeId i,
                           std::span<const NodeId> positives, const DiffusionParams& params);

LinkpredResult run_standard_linkpred(const Graph& g, const LinkpredConfig& cfg);

void write_linkpred_nodes_csv(std::ostream& out, const LinkpredResult& r);
void write_linkpred_summary_csv(std::ostream& out, const LinkpredResult& r);

// ---------------------------------------------------------------------------
// TRPR diagnostics

struct DiagnosticRow {
  std::size_t iteration = 0;
  double l1_delta = 0.0;
  RankCorrelation full{};
  RankCorrelation top{};
};

struct DiagnosticReport {
  std::vector<DiagnosticRow> rows;
  /// Correlation between iterates `early` and `late` (full and top-k).
  std::size_t early = 10;
  std::size_t late = 200;
  RankCorrelation endpoints_full{};
  RankCorrelation endpoints_top{};
};

/// Iterates TRPR `max_iters` times and records per-step L1 deltas and
/// consecutive-iterate rank correlations.
DiagnosticReport trpr_diagnostics(const Graph& g, const TriangleSet& ts, const SeedVector& seed,
                                  const DiffusionParams& params, std::size_t max_iters, bool weighted,
                                  std::size_t top_k = 100, std::size_t early = 10);

void write_diagnostics_csv(std::ostream& out, const DiagnosticReport& r);

/// Deterministic per-stream seed derived from a master seed (splitmix64).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

}  // namespace pairlink
