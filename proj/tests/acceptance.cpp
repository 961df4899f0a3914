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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rptree/cli.hpp"
#include "rptree/formats.hpp"
#include "rptree/ranking.hpp"
#include "rptree/salience.hpp"
#include "rptree/stats.hpp"
#include "rptree/tree.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace rpt::acceptance {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

// Tolerances and budgets.
constexpr double kStructuralBudgetSeconds = 10.0;
constexpr double kRecoveryBudgetSeconds = 60.0;
constexpr double kFdStep = 1e-5;
constexpr double kGradientRelTol = 1e-4;
constexpr double kGradientRelFloor = 1e-6;
constexpr double kReluMargin = 1e-3;
constexpr double kHypergeomTol = 1e-12;
constexpr double kKsLogRatio = 2.0;
constexpr double kRecoveryAlpha = 0.01;

int failures = 0;

void report(bool pass, const std::string& name, const std::string& detail) {
  std::printf("%s  %-28s %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

std::vector<Network> structural_networks() {
  std::mt19937_64 gen(101);
  std::vector<Network> nets;
  for (int i = 0; i < 200; ++i) {
    const int depth = 2 + i % 3;
    nets.push_back(testing::random_network(gen, testing::random_sizes(gen, depth, 3, 9)));
  }
  return nets;
}

void structural_laws(const std::vector<Network>& nets) {
  const auto start = Clock::now();
  long long violations = 0;
  long long trees = 0;
  for (std::size_t i = 0; i < nets.size(); ++i) {
    const Network& net = nets[i];
    const int depth = net.depth();
    for (int b = 1; b <= max_half_branch(net); ++b) {
      for (RankKind kind : {RankKind::weights, RankKind::random}) {
        RankingSpec spec;
        spec.kind = kind;
        const auto tree = build_tree(net, spec, b);
        ++trees;
        std::uint64_t nodes = 0;
        std::uint64_t width = 1;
        for (int d = 0; d <= depth; ++d, width *= static_cast<std::uint64_t>(2 * b)) nodes += width;
        if (tree.node_count() != nodes) ++violations;
        for (int d = 0; d <= depth; ++d) {
          for (const NodeRef& node : tree.nodes_at(d)) {
            if (node.layer != d || !net.contains(node)) ++violations;
          }
        }
        for (int d = 0; d < depth; ++d) {
          const auto& level = tree.nodes_at(d + 1);
          for (std::size_t k = 0; k < tree.nodes_at(d).size(); ++k) {
            std::set<int> siblings;
            for (int s = 0; s < 2 * b; ++s) siblings.insert(level[k * 2 * b + static_cast<std::size_t>(s)].index);
            if (siblings.size() != static_cast<std::size_t>(2 * b)) ++violations;
          }
        }
        const auto counts = salience_map(tree, Aggregator::count());
        const double mass = std::accumulate(counts.scores.begin(), counts.scores.end(), 0.0);
        if (mass != static_cast<double>(leaf_count_for(b, depth))) ++violations;
      }
    }
  }
  const double elapsed = seconds_since(start);
  report(violations == 0 && elapsed < kStructuralBudgetSeconds, "structural-laws",
         fmt("%zu networks, %lld trees, %lld violations, %.2f s (budget %.0f s)", nets.size(), trees,
             violations, elapsed, kStructuralBudgetSeconds));
}

void quasi_inverse_round_trip(const std::vector<Network>& nets) {
  long long pairs = 0;
  long long violations = 0;
  for (const Network& net : nets) {
    for (int l = 0; l < net.depth(); ++l) {
      for (int i = 1; i <= net.size(l); ++i) {
        for (RankKind kind : {RankKind::weights, RankKind::random}) {
          RankingSpec spec;
          spec.kind = kind;
          const NodeRef source{l, i};
          const Ranking r = rank(net, spec, source, l + 1);
          const int n = r.size();
          std::set<int> images;
          for (int b = 1; 2 * b < n; ++b) {
            for (int signed_b : {b, -b}) {
              ++pairs;
              const NodeRef image = quasi_inverse(r, signed_b);
              const int expected = signed_b > 0 ? signed_b : n + signed_b + 1;
              if (image.layer != l + 1 || r.rank_of(image.index) != expected ||
                  r.at_rank(expected) != image.index || !images.insert(image.index).second) {
                ++violations;
              }
            }
          }
        }
      }
    }
  }
  report(violations == 0, "quasi-inverse-round-trip",
         fmt("%lld (source, b) pairs, %lld violations", pairs, violations));
}

void brute_force_oracle() {
  std::mt19937_64 gen(103);
  long long mismatches = 0;
  long long checked = 0;
  for (int i = 0; i < 50; ++i) {
    const int depth = 1 + i % 3;
    const Network net = testing::random_network(gen, testing::random_sizes(gen, depth, 3, 6));
    for (int b = 1; b <= max_half_branch(net); ++b) {
      const auto tree = build_tree(net, RankingSpec{}, b);
      const auto brute = oracle::brute_force_weight_tree(net, b);
      if (brute.phi.size() != tree.node_count()) ++mismatches;
      for (const auto& [path, node] : brute.phi) {
        ++checked;
        if (!(tree.phi(TreePath{path}) == node)) ++mismatches;
      }
      const auto groups = extract_groups(tree);
      if (groups.size() != brute.groups.size()) ++mismatches;
      for (const auto& g : groups) {
        ++checked;
        const auto it = brute.groups.find(g.path.indices);
        if (it == brute.groups.end() || !(g.mapped_node == tree.phi(g.path)) ||
            g.s_plus != std::vector<int>(it->second.first.begin(), it->second.first.end()) ||
            g.s_minus != std::vector<int>(it->second.second.begin(), it->second.second.end())) {
          ++mismatches;
        }
      }
    }
  }
  report(mismatches == 0, "brute-force-tree-oracle",
         fmt("50 networks, %lld phi values and groups compared, %lld mismatches", checked, mismatches));
}

bool near_relu_kink(const Network& net, const Eigen::VectorXd& x) {
  const auto acts = forward(net, x);
  for (int l = 0; l < net.depth(); ++l) {
    if (net.activation(l) != Activation::relu) continue;
    const Eigen::VectorXd z = net.weights(l) * acts[static_cast<std::size_t>(l + 1)] + net.bias(l);
    if (z.cwiseAbs().minCoeff() < kReluMargin) return true;
  }
  return false;
}

void gradient_correctness() {
  std::mt19937_64 gen(107);
  double worst = 0.0;
  int resampled = 0;
  for (int i = 0; i < 100; ++i) {
    const int depth = 1 + i % 4;
    const Network net = testing::random_network(gen, testing::random_sizes(gen, depth, 2, 8));
    Eigen::VectorXd x = testing::random_vector(gen, net.input_size());
    while (near_relu_kink(net, x)) {
      x = testing::random_vector(gen, net.input_size());
      ++resampled;
    }
    for (int l = 1; l <= depth; ++l) {
      const Eigen::VectorXd g = gradient(net, NodeRef{0, 1}, l, x);
      const Eigen::VectorXd fd = oracle::finite_difference(net, NodeRef{0, 1}, l, x, kFdStep);
      for (Eigen::Index j = 0; j < g.size(); ++j) {
        const double denom = std::max({std::abs(g(j)), std::abs(fd(j)), kGradientRelFloor});
        worst = std::max(worst, std::abs(g(j) - fd(j)) / denom);
      }
    }
  }
  report(worst < kGradientRelTol, "gradient-vs-finite-diff",
         fmt("100 networks, max relative error %.3g (tol %.0e, %d kink resamples)", worst,
             kGradientRelTol, resampled));
}

void hypergeom_oracle() {
  double worst = 0.0;
  long long tuples = 0;
  for (int N = 0; N <= 12; ++N) {
    for (int K = 0; K <= N; ++K) {
      for (int n = 0; n <= N; ++n) {
        for (int x = 0; x <= std::min(K, n); ++x) {
          ++tuples;
          worst = std::max(worst, std::abs(hypergeom_upper(N, K, n, x) -
                                           oracle::enumerate_hypergeom_upper(N, K, n, x)));
        }
      }
    }
  }
  report(worst < kHypergeomTol, "stats-hypergeom-oracle",
         fmt("%lld tuples with N <= 12, max abs error %.3g (tol %.0e)", tuples, worst, kHypergeomTol));
}

void reversed_ranking() {
  std::map<std::string, double> pred;
  std::map<std::string, double> truth;
  for (int i = 1; i <= 20; ++i) {
    pred[std::to_string(i)] = 21 - i;
    truth[std::to_string(i)] = i;
  }
  const auto cmp = compare_rankings(pred, truth, 20);
  report(cmp.raw_l1 == 200 && cmp.normalizer == 200 && cmp.normalized == 1.0, "stats-reversed-ranking",
         fmt("k=20 raw %lld, normalizer %lld, normalized %.17g", cmp.raw_l1, cmp.normalizer,
             cmp.normalized));
}

// Every interleaving of m a-values and n b-values on distinct points. The
// exact permutation p of an arrangement is the fraction of arrangements
// whose statistic is at least as large.
void ks_permutation_agreement() {
  long long cases = 0;
  long long violations = 0;
  double worst_ratio = 1.0;
  std::string worst_case;
  for (int m = 1; m <= 6; ++m) {
    for (int n = 1; n <= 6; ++n) {
      std::vector<std::vector<double>> as;
      std::vector<std::vector<double>> bs;
      std::vector<double> stats;
      std::vector<bool> is_a(static_cast<std::size_t>(m + n), false);
      std::fill(is_a.begin(), is_a.begin() + m, true);
      std::sort(is_a.begin(), is_a.end());
      do {
        std::vector<double> a;
        std::vector<double> b;
        for (int p = 0; p < m + n; ++p) (is_a[static_cast<std::size_t>(p)] ? a : b).push_back(p);
        stats.push_back(ks_1tail(a, b, KsDirection::a_above_b).statistic);
        as.push_back(std::move(a));
        bs.push_back(std::move(b));
      } while (std::next_permutation(is_a.begin(), is_a.end()));
      const double total = static_cast<double>(stats.size());
      for (std::size_t c = 0; c < stats.size(); ++c) {
        ++cases;
        const double at_least =
            static_cast<double>(std::count_if(stats.begin(), stats.end(), [&](double s) { return s >= stats[c] - 1e-12; }));
        const double exact = at_least / total;
        const double asym = ks_1tail(as[c], bs[c], KsDirection::a_above_b).p_value;
        const double le = -std::log(exact);
        const double la = -std::log(asym);
        double ratio = 1.0;
        if (le == 0.0 && la == 0.0) {
          ratio = 1.0;
        } else if (le == 0.0 || la == 0.0) {
          ratio = INFINITY;
        } else {
          ratio = std::max(le / la, la / le);
        }
        if (ratio > kKsLogRatio) ++violations;
        if (ratio > worst_ratio) {
          worst_ratio = ratio;
          worst_case = fmt("m=%d n=%d D=%.3f exact p=%.4g asymptotic p=%.4g", m, n, stats[c], exact, asym);
        }
      }
    }
  }
  report(violations == 0, "stats-ks-vs-permutation",
         fmt("%lld arrangements with m,n <= 6, %lld outside %.0fx on -log p; worst %s", cases, violations,
             kKsLogRatio, worst_case.c_str()));
}

struct RecoveryPools {
  std::vector<double> weights;
  std::vector<double> random;
  std::vector<double> gradient;
};

void synthetic_recovery() {
  const auto start = Clock::now();
  std::mt19937_64 gen(109);
  const std::vector<int> sizes{1, 10, 12, 40};
  const int inputs = sizes.back();
  constexpr int kTargets = 8;
  constexpr int kHalfBranch = 2;
  constexpr int kReferenceInputs = 16;
  const std::vector<Activation> hidden{Activation::identity, Activation::sigmoid, Activation::relu,
                                       Activation::elu};
  RecoveryPools pools;
  for (int f = 0; f < 20; ++f) {
    std::vector<int> all(static_cast<std::size_t>(inputs));
    std::iota(all.begin(), all.end(), 1);
    std::shuffle(all.begin(), all.end(), gen);
    std::vector<int> targets(all.begin(), all.begin() + kTargets);
    std::vector<Activation> acts{Activation::sigmoid};
    for (std::size_t l = 2; l < sizes.size(); ++l) acts.push_back(hidden[gen() % hidden.size()]);
    const Network net = testing::planted_network(gen, sizes, targets, acts);
    std::set<std::string> target_ids;
    for (int t : targets) target_ids.insert(std::to_string(t));

    auto pool = [&](const RankingSpec& spec, std::vector<double>& into) {
      const auto tree = build_tree(net, spec, kHalfBranch);
      for (const auto& row : enrich_groups(extract_groups(tree), target_ids, inputs)) {
        into.push_back(row.result.p_value);
      }
    };
    RankingSpec weights;
    pool(weights, pools.weights);
    RankingSpec random;
    random.kind = RankKind::random;
    random.seed = gen();
    pool(random, pools.random);
    RankingSpec grad;
    grad.kind = RankKind::gradient;
    for (int r = 0; r < kReferenceInputs; ++r) grad.reference_inputs.push_back(testing::random_vector(gen, inputs));
    pool(grad, pools.gradient);
  }
  const auto vs_random = ks_1tail(pools.weights, pools.random, KsDirection::a_above_b);
  const auto grad_vs_random = ks_1tail(pools.gradient, pools.random, KsDirection::a_above_b);
  const double elapsed = seconds_since(start);
  report(vs_random.p_value < kRecoveryAlpha && elapsed < kRecoveryBudgetSeconds, "synthetic-recovery",
         fmt("20 planted networks, weight vs random trees D=%.3f p=%.3g (alpha %.2f), %zu vs %zu p-values, "
             "%.2f s; gradient-ranking baseline vs random D=%.3f p=%.3g",
             vs_random.statistic, vs_random.p_value, kRecoveryAlpha, pools.weights.size(),
             pools.random.size(), elapsed, grad_vs_random.statistic, grad_vs_random.p_value));
}

struct CliRun {
  int code;
  std::string out;
  std::string files;
};

CliRun run_cli(const std::vector<std::string>& args, const std::vector<fs::path>& outputs) {
  std::vector<std::string> full{"rpt"};
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : full) argv.push_back(a.c_str());
  for (const auto& p : outputs) fs::remove(p);
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  std::string files;
  for (const auto& p : outputs) files += fs::exists(p) ? read_file(p) : std::string("<missing>");
  return {code, out.str(), files};
}

void determinism() {
  const fs::path dir = fs::temp_directory_path() / ("rpt_acceptance_" + std::to_string(std::random_device{}()));
  fs::create_directories(dir);
  auto put = [&](const std::string& name, const std::string& text) {
    write_file(dir / name, text);
    return (dir / name).string();
  };
  auto at = [&](const std::string& name) { return (dir / name).string(); };
  const std::string toy = testing::data_path("toy_net.json").string();
  const std::string planted = testing::data_path("planted_linear.json").string();
  const std::string modules = testing::data_path("toy_modules.json").string();
  const std::string refs = put("refs.csv", "1,0,0,1,0\n0,1,1,0,0\n0.5,-1,2,0,1\n");
  const std::string truth = put("truth.csv", "item,score\n1,0.1\n2,0.2\n3,0.3\n4,5\n5,0.4\n6,0.2\n");
  const std::string targets = put("targets.txt", "DRD2\nC4A\n");
  const std::string sample_b = put("b.csv", "p_value\n0.2\n0.5\n0.9\n0.99\n");

  // Commands run in order; later ones read files written by earlier ones.
  const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> commands{
      {{"validate", toy, "-o", at("validate.txt")}, {"validate.txt"}},
      {{"tree", "-m", toy, "-B", "1", "-o", at("toy.tree.json")}, {"toy.tree.json"}},
      {{"tree", "-m", toy, "-B", "1", "--rank", "random", "--seed", "11"}, {}},
      {{"tree", "-m", toy, "-B", "1", "--rank", "gradient", "--ref-inputs", refs}, {}},
      {{"salience", "--tree", at("toy.tree.json"), "-g", "signed-sum"}, {}},
      {{"salience", "-m", planted, "-B", "1", "-g", "abs-average", "--top", "3", "--ranking-out",
        at("top.csv"), "-o", at("planted.salience.csv")},
       {"top.csv", "planted.salience.csv"}},
      {{"salience", "-m", toy, "--method", "gradient", "--ref-inputs", refs}, {}},
      {{"groups", "-m", toy, "-B", "1", "--modules", modules, "-o", at("genes.json")}, {"genes.json"}},
      {{"groups", "--tree", at("toy.tree.json")}, {}},
      {{"compare-rank", "--pred", at("planted.salience.csv"), "--truth", truth, "-k", "4"}, {}},
      {{"enrich", "--groups", at("genes.json"), "--targets", targets, "--population", "6", "-o",
        at("enrich.csv")},
       {"enrich.csv"}},
      {{"ks", "--a", at("enrich.csv"), "--b", sample_b}, {}},
      {{"ecdf", "--input", at("enrich.csv")}, {}},
  };
  int differing = 0;
  int failed = 0;
  std::string first_bad;
  for (const auto& [args, names] : commands) {
    std::vector<fs::path> outputs;
    for (const auto& n : names) outputs.push_back(dir / n);
    const CliRun a = run_cli(args, outputs);
    const CliRun b = run_cli(args, outputs);
    if (a.code != cli::kExitOk || b.code != cli::kExitOk) ++failed;
    if (a.out != b.out || a.files != b.files) {
      ++differing;
      if (first_bad.empty()) first_bad = " first: " + args.front();
    }
  }
  fs::remove_all(dir);
  report(differing == 0 && failed == 0, "cli-determinism",
         fmt("%zu commands run twice, %d differing, %d non-zero exits%s", commands.size(), differing, failed,
             first_bad.c_str()));
}

}  // namespace
}  // namespace rpt::acceptance

int main() {
  using namespace rpt::acceptance;
  const auto nets = structural_networks();
  structural_laws(nets);
  quasi_inverse_round_trip(nets);
  brute_force_oracle();
  gradient_correctness();
  hypergeom_oracle();
  reversed_ranking();
  ks_permutation_agreement();
  synthetic_recovery();
  determinism();
  std::printf("%d criterion line(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
