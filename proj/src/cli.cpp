// Copyright 2026 The rptree Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rptree/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rptree/digest.hpp"
#include "rptree/error.hpp"
#include "rptree/formats.hpp"
#include "rptree/network.hpp"
#include "rptree/ranking.hpp"
#include "rptree/salience.hpp"
#include "rptree/stats.hpp"
#include "rptree/tree.hpp"

namespace rpt::cli {
namespace {

struct RunConfig {
  std::string model;
  std::string tree_file;
  std::string rank = "weights";
  std::uint64_t seed = kDefaultSeed;
  std::string ref_inputs;
  int half_branch = 2;
  std::string aggregator = "abs-average";
  std::string method = "tree";
  int top = 0;
  std::string ranking_out;
  std::string modules;
  std::string pred;
  std::string truth;
  int k = 20;
  bool by_magnitude = false;
  std::string groups;
  std::string targets;
  long long population = 0;
  std::string sample_a;
  std::string sample_b;
  std::string direction = "a-above-b";
  std::string column;
  std::string input;
  std::string output;
};

std::uint64_t leaf_cap() {
  const char* env = std::getenv("RPT_LEAF_CAP");
  if (env == nullptr || *env == '\0') return kDefaultLeafCap;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) {
    throw Error(Errc::invalid_argument, "RPT_LEAF_CAP must be a positive integer, got '" +
                                            std::string(env) + "'");
  }
  return v;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty() || cfg.output == "-") {
    out << text;
  } else {
    write_file(cfg.output, text);
  }
}

std::string file_digest(const std::string& path) { return sha256_hex(read_file(path)); }

RankingSpec ranking_spec(const RunConfig& cfg) {
  RankingSpec spec;
  spec.kind = parse_rank_kind(cfg.rank);
  spec.seed = cfg.seed;
  if (!cfg.ref_inputs.empty()) spec.reference_inputs = parse_reference_inputs(read_file(cfg.ref_inputs));
  return spec;
}

Provenance tree_provenance(const std::string& command, const RankProjectionTree& tree) {
  Provenance p;
  p.emplace_back("command", command);
  p.emplace_back("network_digest", tree.network_digest());
  p.emplace_back("rank", std::string(to_string(tree.spec().kind)));
  p.emplace_back("seed", std::to_string(tree.spec().seed));
  p.emplace_back("reference_inputs", std::to_string(tree.spec().reference_inputs.size()));
  p.emplace_back("half_branch", std::to_string(tree.half_branch()));
  return p;
}

// The tree either comes from a tree file or is built from the model.
RankProjectionTree obtain_tree(const RunConfig& cfg) {
  if (!cfg.tree_file.empty()) return parse_tree(read_file(cfg.tree_file));
  if (cfg.model.empty()) throw Error(Errc::invalid_argument, "either --model or --tree is required");
  const Network net = load_network(cfg.model);
  return build_tree(net, ranking_spec(cfg), cfg.half_branch, leaf_cap());
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  const Network net = load_network(cfg.model);
  std::string report;
  report += "digest: " + net.digest() + "\n";
  report += "depth: " + std::to_string(net.depth()) + "\n";
  report += "layer_sizes (output first):";
  for (int n : net.layer_sizes()) report += " " + std::to_string(n);
  report += "\nactivations (layer 0 first):";
  for (int l = 0; l < net.depth(); ++l) report += " " + std::string(to_string(net.activation(l)));
  report += "\nmax_B per layer:";
  for (int l = 1; l <= net.depth(); ++l) {
    report += " " + std::to_string(l) + ":" + std::to_string((net.size(l) - 1) / 2);
  }
  report += "\nmax_B: " + std::to_string(max_half_branch(net)) + "\n";
  emit(cfg, report, out);
  return kExitOk;
}

int cmd_tree(const RunConfig& cfg, std::ostream& out) {
  const auto tree = obtain_tree(cfg);
  emit(cfg, serialize_tree(tree, tree_provenance("tree", tree)), out);
  return kExitOk;
}

int cmd_salience(const RunConfig& cfg, std::ostream& out) {
  SalienceMap map;
  Provenance prov;
  if (cfg.method == "gradient") {
    if (cfg.model.empty() || cfg.ref_inputs.empty()) {
      throw Error(Errc::invalid_argument, "gradient salience needs --model and --ref-inputs");
    }
    const Network net = load_network(cfg.model);
    map = gradient_salience(net, parse_reference_inputs(read_file(cfg.ref_inputs)));
    prov = {{"command", "salience"},
            {"method", "gradient"},
            {"network_digest", net.digest()},
            {"reference_inputs_digest", file_digest(cfg.ref_inputs)}};
  } else if (cfg.method == "tree") {
    const auto tree = obtain_tree(cfg);
    const Aggregator agg = parse_aggregator(cfg.aggregator);
    map = salience_map(tree, agg);
    prov = tree_provenance("salience", tree);
    prov.emplace_back("aggregator", to_string(agg));
  } else {
    throw Error(Errc::invalid_argument, "unknown salience method '" + cfg.method + "'");
  }
  if (cfg.top > 0) {
    const auto ranked = rank_inputs(map, cfg.top);
    const std::string text = serialize_ranked_inputs(ranked, prov);
    if (cfg.ranking_out.empty()) {
      out << text;
    } else {
      write_file(cfg.ranking_out, text);
    }
  }
  emit(cfg, serialize_salience(map, prov), out);
  return kExitOk;
}

int cmd_groups(const RunConfig& cfg, std::ostream& out) {
  const auto tree = obtain_tree(cfg);
  const auto groups = extract_groups(tree);
  auto prov = tree_provenance("groups", tree);
  if (cfg.modules.empty()) {
    emit(cfg, serialize_groups(groups, prov), out);
  } else {
    const auto modules = parse_module_map(read_file(cfg.modules));
    prov.emplace_back("module_map_digest", file_digest(cfg.modules));
    emit(cfg, serialize_groups(expand_with_modules(groups, modules), prov), out);
  }
  return kExitOk;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out) {
  const std::string pred_text = read_file(cfg.pred);
  std::map<std::string, double> pred;
  bool by_magnitude = cfg.by_magnitude;
  const auto rows = parse_csv(pred_text);
  if (!rows.empty() && !rows[0].empty() && rows[0][0] == "input_index") {
    const SalienceMap map = parse_salience(pred_text);
    for (std::size_t i = 0; i < map.scores.size(); ++i) pred[std::to_string(i + 1)] = map.scores[i];
    by_magnitude = by_magnitude || map.rank_by_magnitude;
  } else {
    pred = parse_score_table(pred_text);
  }
  const auto truth = parse_score_table(read_file(cfg.truth));
  const auto cmp = compare_rankings(pred, truth, cfg.k, by_magnitude);
  Provenance prov = {{"command", "compare-rank"},
                     {"pred_digest", sha256_hex(pred_text)},
                     {"truth_digest", file_digest(cfg.truth)},
                     {"by_magnitude", by_magnitude ? "true" : "false"}};
  emit(cfg, serialize_comparison(cmp, prov), out);
  return kExitOk;
}

int cmd_enrich(const RunConfig& cfg, std::ostream& out) {
  const auto groups = parse_groups(read_file(cfg.groups));
  const auto targets = parse_item_list(read_file(cfg.targets));
  const auto rows = enrich_groups(groups, targets, cfg.population);
  Provenance prov = {{"command", "enrich"},
                     {"groups_digest", file_digest(cfg.groups)},
                     {"targets_digest", file_digest(cfg.targets)},
                     {"population", std::to_string(cfg.population)}};
  emit(cfg, serialize_enrichment(rows, prov), out);
  return kExitOk;
}

int cmd_ks(const RunConfig& cfg, std::ostream& out) {
  const auto a = parse_value_column(read_file(cfg.sample_a), cfg.column);
  const auto b = parse_value_column(read_file(cfg.sample_b), cfg.column);
  const auto result = ks_1tail(a, b, parse_ks_direction(cfg.direction));
  Provenance prov = {{"command", "ks"},
                     {"a_digest", file_digest(cfg.sample_a)},
                     {"b_digest", file_digest(cfg.sample_b)}};
  emit(cfg, serialize_ks(result, prov), out);
  return kExitOk;
}

int cmd_ecdf(const RunConfig& cfg, std::ostream& out) {
  const auto values = parse_value_column(read_file(cfg.input), cfg.column);
  Provenance prov = {{"command", "ecdf"}, {"input_digest", file_digest(cfg.input)}};
  emit(cfg, serialize_ecdf(ecdf(values), prov), out);
  return kExitOk;
}

void add_tree_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--model,-m", cfg.model, "weight file")->check(CLI::ExistingFile);
  sub->add_option("--tree", cfg.tree_file, "previously written tree file")->check(CLI::ExistingFile);
  sub->add_option("--rank", cfg.rank, "ranking function")
      ->check(CLI::IsMember({"weights", "gradient", "random"}))
      ->capture_default_str();
  sub->add_option("--seed", cfg.seed, "seed for the random ranking")->capture_default_str();
  sub->add_option("--ref-inputs", cfg.ref_inputs, "CSV of reference input vectors")
      ->check(CLI::ExistingFile);
  sub->add_option("-B,--half-branch", cfg.half_branch, "half branching factor")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Rank projection trees: multiscale interpretation of feed-forward networks",
               std::string(kToolName)};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  auto* validate = app.add_subcommand("validate", "check a weight file and report legal B");
  validate->add_option("model", cfg.model, "weight file")->required();
  validate->add_option("-o,--output", cfg.output, "report path (default stdout)");

  auto* tree = app.add_subcommand("tree", "build a rank projection tree");
  add_tree_options(tree, cfg);
  tree->add_option("-o,--output", cfg.output, "tree file (default stdout)");

  auto* salience = app.add_subcommand("salience", "per-input salience map");
  add_tree_options(salience, cfg);
  salience->add_option("--aggregator,-g", cfg.aggregator, "abs-|signed-{sum,average,max,min} or count")
      ->capture_default_str();
  salience->add_option("--method", cfg.method, "tree or gradient")
      ->check(CLI::IsMember({"tree", "gradient"}))
      ->capture_default_str();
  salience->add_option("--top", cfg.top, "also write the top-k ranking")->check(CLI::PositiveNumber);
  salience->add_option("--ranking-out", cfg.ranking_out, "path for the top-k ranking");
  salience->add_option("-o,--output", cfg.output, "salience CSV (default stdout)");

  auto* groups = app.add_subcommand("groups", "positive/negative input groupings per tree node");
  add_tree_options(groups, cfg);
  groups->add_option("--modules", cfg.modules, "module map for gene expansion")
      ->check(CLI::ExistingFile);
  groups->add_option("-o,--output", cfg.output, "groups file (default stdout)");

  auto* compare = app.add_subcommand("compare-rank", "normalized l1 distance to a truth ranking");
  compare->add_option("--pred", cfg.pred, "salience CSV or item,score CSV")
      ->required()
      ->check(CLI::ExistingFile);
  compare->add_option("--truth", cfg.truth, "item,score CSV")->required()->check(CLI::ExistingFile);
  compare->add_option("-k", cfg.k, "number of top items")->check(CLI::PositiveNumber)->capture_default_str();
  compare->add_flag("--by-magnitude", cfg.by_magnitude, "rank predictions by |score|");
  compare->add_option("-o,--output", cfg.output, "result file (default stdout)");

  auto* enrich = app.add_subcommand("enrich", "hypergeometric enrichment of groupings");
  enrich->add_option("--groups", cfg.groups, "groups file")->required()->check(CLI::ExistingFile);
  enrich->add_option("--targets", cfg.targets, "target items, one per line")
      ->required()
      ->check(CLI::ExistingFile);
  enrich->add_option("--population", cfg.population, "population size N")
      ->required()
      ->check(CLI::PositiveNumber);
  enrich->add_option("-o,--output", cfg.output, "enrichment CSV (default stdout)");

  auto* ks = app.add_subcommand("ks", "one-tailed two-sample KS test");
  ks->add_option("--a", cfg.sample_a, "first sample CSV")->required()->check(CLI::ExistingFile);
  ks->add_option("--b", cfg.sample_b, "second sample CSV")->required()->check(CLI::ExistingFile);
  ks->add_option("--direction", cfg.direction, "a-above-b or b-above-a")
      ->check(CLI::IsMember({"a-above-b", "b-above-a"}))
      ->capture_default_str();
  ks->add_option("--column", cfg.column, "column to read (default p_value or first)");
  ks->add_option("-o,--output", cfg.output, "result file (default stdout)");

  auto* ecdf_cmd = app.add_subcommand("ecdf", "empirical CDF of a value column");
  ecdf_cmd->add_option("--input", cfg.input, "value CSV")->required()->check(CLI::ExistingFile);
  ecdf_cmd->add_option("--column", cfg.column, "column to read (default p_value or first)");
  ecdf_cmd->add_option("-o,--output", cfg.output, "ECDF CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(cfg, out);
    if (tree->parsed()) return cmd_tree(cfg, out);
    if (salience->parsed()) return cmd_salience(cfg, out);
    if (groups->parsed()) return cmd_groups(cfg, out);
    if (compare->parsed()) return cmd_compare(cfg, out);
    if (enrich->parsed()) return cmd_enrich(cfg, out);
    if (ks->parsed()) return cmd_ks(cfg, out);
    if (ecdf_cmd->parsed()) return cmd_ecdf(cfg, out);
  } catch (const Error& e) {
    err << "rpt: error: " << e.what() << "\n";
    switch (e.code()) {
      case Errc::constraint:
      case Errc::invalid_argument:
        return kExitBadConfig;
      default:
        return kExitBadInput;
    }
  }
  return kExitUsage;
}

}  // namespace rpt::cli
