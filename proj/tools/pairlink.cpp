// pairlink: command-line front end for the pairwise and standard link
// prediction experiments, TRPR diagnostics and GPA generation.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "pairlink/diffusion.hpp"
#include "pairlink/experiments.hpp"
#include "pairlink/gpa.hpp"
#include "pairlink/graph.hpp"
#include "pairlink/triangles.hpp"

namespace {

using namespace pairlink;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string config;
  std::string input;
  bool timestamps = false;
  std::string out;
  std::uint64_t seed = 0;
  double alpha = 0.85;
  std::size_t iterations = 10;
  double tolerance = 0.0;
  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());

  DiffusionParams params() const {
    DiffusionParams p;
    p.alpha = alpha;
    p.iterations = iterations;
    if (tolerance > 0.0) p.tolerance = tolerance;
    return p;
  }
};

void add_diffusion_options(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--alpha", o.alpha, "Teleport damping factor")->capture_default_str();
  cmd->add_option("--iterations", o.iterations, "TRPR iteration count")->capture_default_str();
  cmd->add_option("--tolerance", o.tolerance, "PageRank L1 residual bound (default 1e-15*n)");
}

void add_common_options(CLI::App* cmd, CommonOptions& o, const std::string& default_out) {
  o.out = default_out;
  cmd->add_option("--config", o.config, "JSON file supplying any long option; command-line flags win");
  cmd->add_option("--input", o.input, "Whitespace-separated edge list");
  cmd->add_flag("--timestamps", o.timestamps, "Input has a third integer timestamp column");
  cmd->add_option("--out", o.out, "Output path prefix")->capture_default_str();
  cmd->add_option("--seed", o.seed, "Master RNG seed")->capture_default_str();
  cmd->add_option("--threads", o.threads, "Worker threads (results do not depend on this)")->capture_default_str();
}

// Options not given on the command line are filled from the JSON object.
void apply_config(CLI::App* cmd, const std::string& path) {
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config file " + path + " is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw UsageError("config file must hold a JSON object");
  auto text = [](const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return std::string(v.get<bool>() ? "true" : "false");
    return v.dump();
  };
  for (const auto& [key, value] : j.items()) {
    if (key == "config") continue;
    CLI::Option* opt = cmd->get_option_no_throw("--" + key);
    if (opt == nullptr) throw UsageError("unknown config key '" + key + "'");
    if (opt->count() > 0) continue;
    if (value.is_array()) {
      for (const auto& v : value) opt->add_result(text(v));
    } else {
      opt->add_result(text(value));
    }
    opt->run_callback();
  }
}

std::vector<std::string> split_list(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) out.push_back(part);
    }
  }
  return out;
}

EdgeList load_input(const CommonOptions& o, bool need_timestamps) {
  if (o.input.empty()) throw UsageError("--input is required");
  return load_edge_list_file(o.input, need_timestamps || o.timestamps);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot write " + path);
  return f;
}

void write_meta(const std::string& path, nlohmann::json meta, const CommonOptions& o) {
  meta["input"] = o.input;
  auto f = open_out(path);
  f << meta.dump(2) << '\n';
}

struct PairwiseOptions {
  CommonOptions common;
  std::string protocol = "holdout";
  double fraction = -1.0;
  std::vector<std::string> methods;
  std::vector<std::string> ks{"5", "25"};
  std::size_t trials = 500;
  std::string truth_mode = "and";
  std::string candidates;
  bool allow_empty_truth = false;
};

int cmd_pairwise(const PairwiseOptions& o) {
  PairwiseConfig cfg;
  auto protocol = parse_protocol(o.protocol);
  if (!protocol) throw UsageError("unknown protocol '" + o.protocol + "'");
  cfg.protocol = *protocol;
  if (o.fraction >= 0.0) {
    cfg.fraction = o.fraction;
  } else {
    cfg.fraction = cfg.protocol == Protocol::temporal ? 0.8 : 0.3;
  }
  if (!o.methods.empty()) cfg.methods = split_list(o.methods);
  cfg.ks.clear();
  for (const auto& k : split_list(o.ks)) {
    try {
      cfg.ks.push_back(static_cast<std::size_t>(std::stoull(k)));
    } catch (const std::exception&) {
      throw UsageError("bad --k value '" + k + "'");
    }
  }
  cfg.trials = o.trials;
  auto truth = parse_truth_mode(o.truth_mode);
  if (!truth) throw UsageError("--truth-mode must be 'and' or 'or'");
  cfg.truth = *truth;
  if (o.candidates == "either") {
    cfg.candidate_rule = CandidateRule::non_adjacent_to_either;
  } else if (o.candidates == "both") {
    cfg.candidate_rule = CandidateRule::non_adjacent_to_both;
  } else if (!o.candidates.empty()) {
    throw UsageError("--candidates must be 'either' or 'both'");
  }
  cfg.rng_seed = o.common.seed;
  cfg.params = o.common.params();
  cfg.allow_empty_truth = o.allow_empty_truth;
  cfg.threads = o.common.threads;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const auto edges = load_input(o.common, cfg.protocol == Protocol::temporal);
  std::cout << "pairwise: " << o.common.input << ", " << edges.records.size() << " edge records, protocol "
            << to_string(cfg.protocol) << ", " << cfg.trials << " trials\n";
  const auto result = run_pairwise_experiment(edges, cfg);

  const std::string prefix = o.common.out;
  {
    auto f = open_out(prefix + "_summary.csv");
    write_pairwise_summary_csv(f, result);
  }
  {
    auto f = open_out(prefix + "_trials.csv");
    write_pairwise_trials_csv(f, result);
  }
  write_meta(prefix + "_meta.json", result.metadata, o.common);
  for (const auto& row : result.summary) {
    std::printf("  %-10s k=%-3zu SP=%.4f\n", row.method.c_str(), row.k, row.mean_sp);
  }
  std::cout << "wrote " << prefix << "_summary.csv, " << prefix << "_trials.csv, " << prefix << "_meta.json\n";
  return kExitOk;
}

struct LinkpredOptions {
  CommonOptions common;
  double fraction = 0.2;
  std::size_t num_nodes = 100;
  std::vector<std::string> methods;
};

int cmd_linkpred(const LinkpredOptions& o) {
  LinkpredConfig cfg;
  cfg.test_fraction = o.fraction;
  cfg.num_nodes = o.num_nodes;
  if (!o.methods.empty()) cfg.methods = split_list(o.methods);
  cfg.rng_seed = o.common.seed;
  cfg.params = o.common.params();
  cfg.threads = o.common.threads;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const auto g = build_graph(load_input(o.common, false));
  std::cout << "linkpred: " << g.num_nodes() << " nodes, " << g.num_edges() << " edges\n";
  const auto result = run_standard_linkpred(g, cfg);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';

  const std::string prefix = o.common.out;
  {
    auto f = open_out(prefix + "_nodes.csv");
    write_linkpred_nodes_csv(f, result);
  }
  {
    auto f = open_out(prefix + "_summary.csv");
    write_linkpred_summary_csv(f, result);
  }
  write_meta(prefix + "_meta.json", result.metadata, o.common);
  for (const auto& row : result.summary) {
    std::printf("  %-10s AUC=%.4f delta=%+.4f dist=%+.4f\n", row.method.c_str(), row.mean_auc,
                row.mean_delta_vs_baseline, row.mean_dist_to_diag);
  }
  std::cout << "wrote " << prefix << "_nodes.csv, " << prefix << "_summary.csv, " << prefix << "_meta.json\n";
  return kExitOk;
}

struct DiagnoseOptions {
  CommonOptions common;
  std::string seed_u;
  std::string seed_v;
  std::size_t max_iters = 200;
  std::size_t top_k = 100;
  bool weighted = false;
};

int cmd_diagnose(const DiagnoseOptions& o) {
  if (o.max_iters < 10) throw UsageError("--max-iters must be at least 10");
  const auto g = largest_connected_component(build_graph(load_input(o.common, false)));
  const auto ts = enumerate_triangles(g);

  NodeId u = 0, v = 0;
  if (!o.seed_u.empty() || !o.seed_v.empty()) {
    auto fu = g.find(o.seed_u), fv = g.find(o.seed_v);
    if (!fu || !fv) throw DataError("seed edge endpoints must both lie in the largest component");
    u = *fu;
    v = *fv;
  } else {
    const auto edges = g.edges();
    std::mt19937_64 rng(derive_seed(o.common.seed, 0));
    std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
    std::tie(u, v) = edges[pick(rng)];
  }
  if (u == v) throw UsageError("seed endpoints must differ");

  std::cout << "diagnose: seed (" << g.label(u) << ", " << g.label(v) << "), " << ts.size() << " triangles\n";
  const auto params = o.common.params();
  const auto rep = trpr_diagnostics(g, ts, pair_seed(g, u, v), params, o.max_iters, o.weighted, o.top_k);

  const std::string prefix = o.common.out;
  {
    auto f = open_out(prefix + "_diagnostics.csv");
    write_diagnostics_csv(f, rep);
  }
  nlohmann::json meta;
  meta["command"] = "diagnose";
  meta["seed_edge"] = {g.label(u), g.label(v)};
  meta["rng"] = {{"generator", "std::mt19937_64"}, {"master_seed", o.common.seed}};
  meta["alpha"] = params.alpha;
  meta["max_iters"] = o.max_iters;
  meta["top_k"] = o.top_k;
  meta["weighted"] = o.weighted;
  meta["graph"] = {{"nodes", g.num_nodes()}, {"edges", g.num_edges()}, {"triangles", ts.size()}};
  write_meta(prefix + "_meta.json", meta, o.common);
  std::printf("  iterate %zu vs %zu: spearman=%.4f kendall=%.4f (top-%zu: %.4f / %.4f)\n", rep.early, rep.late,
              rep.endpoints_full.spearman, rep.endpoints_full.kendall, o.top_k, rep.endpoints_top.spearman,
              rep.endpoints_top.kendall);
  std::cout << "wrote " << prefix << "_diagnostics.csv, " << prefix << "_meta.json\n";
  return kExitOk;
}

int cmd_triangles(const CommonOptions& o) {
  const auto edges = load_input(o, false);
  const auto g = build_graph(edges);
  const auto ts = enumerate_triangles(g);
  std::cout << "nodes " << g.num_nodes() << "\nedges " << g.num_edges() << "\ntriangles " << ts.size()
            << "\nself_loops_dropped " << edges.self_loops_dropped << "\nduplicates_collapsed "
            << g.duplicates_collapsed() << '\n';
  return kExitOk;
}

struct GpaOptions {
  std::string config;
  GpaParams params;
  std::string out;
  bool timestamps = false;
};

int cmd_gen_gpa(const GpaOptions& o) {
  if (o.out.empty()) throw UsageError("--out is required");
  try {
    o.params.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto edges = gpa_edge_list(o.params);
  auto f = open_out(o.out);
  for (const auto& r : edges.records) {
    f << r.u << '\t' << r.v;
    if (o.timestamps) f << '\t' << *r.t;
    f << '\n';
  }
  std::cout << "gen-gpa: wrote " << edges.records.size() << " edges to " << o.out << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pair-seeded diffusion and local-score link prediction experiments"};
  app.require_subcommand(1);
  app.allow_windows_style_options(false);

  PairwiseOptions pw;
  auto* pairwise = app.add_subcommand("pairwise", "Pairwise (edge-seeded) link prediction, success probability");
  add_common_options(pairwise, pw.common, "pairwise");
  add_diffusion_options(pairwise, pw.common);
  pairwise->add_option("--protocol", pw.protocol, "loeto, holdout or temporal")->capture_default_str();
  pairwise->add_option("--fraction", pw.fraction,
                       "Held-out fraction (holdout, default 0.3) or training fraction (temporal, default 0.8)");
  pairwise->add_option("--methods", pw.methods, "Comma-separated method list")->delimiter(',');
  pairwise->add_option("--k", pw.ks, "Comma-separated top-k cutoffs")->delimiter(',')->capture_default_str();
  pairwise->add_option("--trials", pw.trials, "Number of seed edges")->capture_default_str();
  pairwise->add_option("--truth-mode", pw.truth_mode, "and / or")->capture_default_str();
  pairwise->add_option("--candidates", pw.candidates, "either / both (default follows truth mode)");
  pairwise->add_flag("--allow-empty-truth", pw.allow_empty_truth, "Sample seed edges without ground truth too");

  LinkpredOptions lp;
  auto* linkpred = app.add_subcommand("linkpred", "Multi-seeded standard link prediction, per-node AUC");
  add_common_options(linkpred, lp.common, "linkpred");
  add_diffusion_options(linkpred, lp.common);
  linkpred->add_option("--fraction", lp.fraction, "Held-out fraction")->capture_default_str();
  linkpred->add_option("--num-nodes", lp.num_nodes, "Top-degree cohort size")->capture_default_str();
  linkpred->add_option("--methods", lp.methods, "Comma-separated method list")->delimiter(',');

  DiagnoseOptions dg;
  auto* diagnose = app.add_subcommand("diagnose", "TRPR convergence and rank-stability trace");
  add_common_options(diagnose, dg.common, "diagnose");
  add_diffusion_options(diagnose, dg.common);
  diagnose->add_option("--seed-u", dg.seed_u, "Seed edge endpoint label (default: random edge)");
  diagnose->add_option("--seed-v", dg.seed_v, "Seed edge endpoint label");
  diagnose->add_option("--max-iters", dg.max_iters, "Iterations to trace")->capture_default_str();
  diagnose->add_option("--top-k", dg.top_k, "Top-k restriction for the rank correlations")->capture_default_str();
  diagnose->add_flag("--weighted", dg.weighted, "Trace TRPR-Weighted instead");

  CommonOptions tri;
  auto* triangles = app.add_subcommand("triangles", "Graph and triangle counts for an edge list");
  add_common_options(triangles, tri, "");

  GpaOptions gpa;
  auto* gen = app.add_subcommand("gen-gpa", "Generate a generalized preferential attachment graph");
  gen->add_option("--config", gpa.config, "JSON file supplying any long option");
  gen->add_option("--steps", gpa.params.steps, "Growth events")->capture_default_str();
  gen->add_option("--p-edge", gpa.params.p_edge, "Edge event probability")->capture_default_str();
  gen->add_option("--clique", gpa.params.seed_clique, "Initial clique size")->capture_default_str();
  gen->add_option("--seed", gpa.params.rng_seed, "RNG seed")->capture_default_str();
  gen->add_option("--out", gpa.out, "Output edge-list path");
  gen->add_flag("--timestamps", gpa.timestamps, "Append the creation step as a timestamp column");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (pairwise->parsed()) {
      apply_config(pairwise, pw.common.config);
      return cmd_pairwise(pw);
    }
    if (linkpred->parsed()) {
      apply_config(linkpred, lp.common.config);
      return cmd_linkpred(lp);
    }
    if (diagnose->parsed()) {
      apply_config(diagnose, dg.common.config);
      return cmd_diagnose(dg);
    }
    if (triangles->parsed()) {
      apply_config(triangles, tri.config);
      return cmd_triangles(tri);
    }
    if (gen->parsed()) {
      apply_config(gen, gpa.config);
      return cmd_gen_gpa(gpa);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}
