// Copyright 2026 The Authors.
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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "greedi/constraints.hpp"
#include "greedi/core.hpp"
#include "greedi/datasets.hpp"
#include "greedi/distributed.hpp"
#include "greedi/engines.hpp"
#include "greedi/experiment.hpp"
#include "greedi/objectives.hpp"
#include "greedi/rng.hpp"
#include "greedi/verify.hpp"

namespace {

using namespace greedi;

constexpr double kTol = 1e-9;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

// Instance families of the small-instance criteria, seeded per index.
struct SmallInstance {
  std::shared_ptr<const Objective> f;
  std::size_t n = 0;
  std::size_t k = 0;
  std::string tag;
};

SmallInstance small_instance(std::uint64_t domain, std::size_t s) {
  constexpr InstanceFamily kFamilies[] = {InstanceFamily::kCoverage, InstanceFamily::kModular,
                                          InstanceFamily::kExemplar, InstanceFamily::kInfoGain};
  Rng rng(derive_seed(domain, s));
  SmallInstance out;
  const InstanceFamily family = kFamilies[s % 4];
  out.n = 6 + rng.uniform_index(7);
  out.k = 1 + rng.uniform_index(4);
  out.f = random_instance(family, out.n, rng);
  out.tag = std::string(to_string(family)) + "#" + std::to_string(s);
  return out;
}

Verdict greedy_guarantee() {
  const auto start = std::chrono::steady_clock::now();
  std::size_t worst_index = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < 200; ++s) {
    const SmallInstance in = small_instance(0xA1, s);
    const std::vector<ElementId> ground = iota_ids(in.n);
    const double opt = brute_force_opt(*in.f, ground, in.k).value;
    const double got = greedy(*in.f, ground, in.k).value;
    const double slack = got - (1.0 - 1.0 / std::numbers::e) * opt;
    if (slack < worst) {
      worst = slack;
      worst_index = s;
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst >= -kTol && seconds < 10.0,
          "200 instances, min slack " + fmt(worst, 6) + " at #" + std::to_string(worst_index) +
              ", " + fmt(seconds, 2) + " s of 10"};
}

Verdict greedy_budget_guarantee() {
  std::size_t checks = 0;
  std::size_t failures = 0;
  for (std::size_t s = 0; s < 200; ++s) {
    const SmallInstance in = small_instance(0xA1, s);
    const std::vector<ElementId> ground = iota_ids(in.n);
    const double opt = brute_force_opt(*in.f, ground, in.k).value;
    for (std::size_t q = 1; q <= std::min(2 * in.k, in.n); ++q) {
      const double got = greedy(*in.f, ground, q).value;
      const double factor = 1.0 - std::exp(-static_cast<double>(q) / static_cast<double>(in.k));
      ++checks;
      if (got < factor * opt - kTol) ++failures;
    }
  }
  return {failures == 0, std::to_string(checks) + " (instance, q) pairs, " +
                             std::to_string(failures) + " violations"};
}

Verdict worst_case_tightness() {
  std::string detail;
  bool ok = true;
  for (std::size_t m = 2; m <= 4; ++m) {
    for (std::size_t k = 2; k <= 4; ++k) {
      const WorstCaseInstance w = worst_case_instance(m, k);
      const double opt = brute_force_opt(*w.objective, w.partition.ground(), k).value;
      const double distributed = exact_two_round(*w.objective, w.partition, k).solution.value;
      const double expected = static_cast<double>(std::min(m, k));
      const bool integral = opt == std::floor(opt) && distributed == std::floor(distributed);
      const bool cell = integral && distributed > 0.0 && opt == expected * distributed;
      ok = ok && cell;
      if (!cell) {
        detail += " m=" + std::to_string(m) + ",k=" + std::to_string(k) + " opt=" +
                  fmt(opt, 0) + " dist=" + fmt(distributed, 0);
      }
    }
  }
  return {ok, ok ? "9 (m,k) cells, OPT/distributed = min(m,k) exactly" : "mismatch:" + detail};
}

Verdict distributed_bounds() {
  std::size_t greedi_runs = 0;
  std::size_t general_runs = 0;
  std::size_t failures = 0;
  for (std::size_t s = 0; s < 300; ++s) {
    const SmallInstance in = small_instance(0xA4, s);
    const std::vector<ElementId> ground = iota_ids(in.n);
    GreediConfig config;
    config.machines = 1 + s % 4;
    config.k = in.k;
    config.seed = s;
    const Partition partition = partition_uniform(in.n, config.machines, s);
    const auto m = static_cast<double>(config.machines);
    if (s % 2 == 0) {
      config.kappa = in.k + (s / 2) % 3;
      const double opt = brute_force_opt(*in.f, ground, in.k).value;
      const GreediResult r = greedi::greedi(*in.f, partition, config);
      const double factor =
          (1.0 - std::exp(-static_cast<double>(config.kappa) / static_cast<double>(in.k))) /
          std::min(m, static_cast<double>(in.k));
      const BoundReport report = check_bound(
          "greedi", {.opt = opt, .achieved = r.trace.final_kappa.value, .k = in.k,
                     .m = config.machines, .kappa = config.kappa, .fingerprint = in.tag});
      const bool ok = report.satisfied && r.trace.final_kappa.value >= factor * opt - kTol &&
                      std::abs(report.bound_value - factor * opt) <= 1e-12 * (1.0 + opt);
      if (!ok) ++failures;
      ++greedi_runs;
      continue;
    }
    Rng rng(derive_seed(0xA5, s));
    std::unique_ptr<Constraint> constraint;
    std::unique_ptr<Engine> engine;
    double tau = 0.0;
    switch ((s / 2) % 3) {
      case 0:
        constraint = std::make_unique<CardinalityConstraint>(in.k);
        engine = make_engine(EngineKind::kGreedy);
        tau = 1.0 - 1.0 / std::numbers::e;
        break;
      case 1: {
        std::vector<std::size_t> block_of(in.n);
        for (std::size_t e = 0; e < in.n; ++e) block_of[e] = e % 3;
        constraint = std::make_unique<PartitionMatroid>(
            block_of, std::vector<std::size_t>{1 + rng.uniform_index(2), 1, 1});
        engine = make_engine(EngineKind::kConstrained);
        tau = 0.5;
        break;
      }
      default: {
        std::vector<double> costs(in.n);
        for (double& c : costs) c = rng.uniform(0.5, 2.0);
        constraint = std::make_unique<KnapsackConstraint>(costs, 3.0);
        engine = make_engine(EngineKind::kCostBenefit);
        tau = 1.0 - 1.0 / std::sqrt(std::numbers::e);
        break;
      }
    }
    const double opt = brute_force_opt(*in.f, ground, constraint.get()).value;
    const GreediResult r = greedi_general(*in.f, partition, *constraint, *engine, config);
    const std::size_t rho = constraint->rho();
    const double bound = tau / std::min(m, static_cast<double>(rho)) * opt;
    const BoundReport report = check_bound(
        "greedi_general", {.opt = opt, .achieved = r.solution.value, .k = in.k,
                           .m = config.machines, .rho = rho, .tau = engine->tau(*constraint),
                           .fingerprint = in.tag});
    const bool ok = report.satisfied && constraint->is_feasible(r.solution.elements) &&
                    r.solution.value >= bound - kTol &&
                    std::abs(report.bound_value - bound) <= 1e-12 * (1.0 + opt);
    if (!ok) ++failures;
    ++general_runs;
  }
  return {failures == 0, std::to_string(greedi_runs) + " greedi + " +
                             std::to_string(general_runs) + " greedi_general runs, " +
                             std::to_string(failures) + " violations"};
}

Verdict lazy_equivalence() {
  constexpr InstanceFamily kFamilies[] = {InstanceFamily::kCoverage, InstanceFamily::kModular,
                                          InstanceFamily::kExemplar, InstanceFamily::kInfoGain,
                                          InstanceFamily::kCut,      InstanceFamily::kDpp};
  std::size_t mismatches = 0;
  std::uint64_t lazy_calls = 0;
  std::uint64_t plain_calls = 0;
  for (std::size_t s = 0; s < 100; ++s) {
    Rng rng(derive_seed(0xA5, s));
    const std::size_t n = 20 + rng.uniform_index(100);
    const std::size_t k = 1 + rng.uniform_index(12);
    const auto f = random_instance(kFamilies[s % 6], n, rng);
    const std::vector<ElementId> ground = iota_ids(n);
    const Solution plain = greedy(*f, ground, k);
    const Solution lazy = lazy_greedy(*f, ground, k);
    if (plain.elements != lazy.elements || lazy.oracle_calls > plain.oracle_calls) {
      ++mismatches;
    }
    lazy_calls += lazy.oracle_calls;
    plain_calls += plain.oracle_calls;
  }
  return {mismatches == 0,
          "100 instances, " + std::to_string(mismatches) + " mismatches, oracle calls lazy " +
              std::to_string(lazy_calls) + " vs greedy " + std::to_string(plain_calls)};
}

Verdict structural_checks() {
  constexpr InstanceFamily kFamilies[] = {InstanceFamily::kCoverage, InstanceFamily::kModular,
                                          InstanceFamily::kExemplar, InstanceFamily::kInfoGain,
                                          InstanceFamily::kCut,      InstanceFamily::kDpp};
  bool ok = true;
  std::string detail;
  for (InstanceFamily family : kFamilies) {
    std::size_t sub_fail = 0;
    std::size_t mono_fail = 0;
    bool flagged = false;
    for (std::size_t s = 0; s < 50; ++s) {
      Rng rng(derive_seed(0xA6, s));
      const auto f = random_instance(family, 3 + rng.uniform_index(6), rng);
      flagged = f->monotone();
      if (!verify_submodular(*f).holds) ++sub_fail;
      const bool monotone = verify_monotone(*f).holds;
      if (flagged && !monotone) ++mono_fail;
    }
    ok = ok && sub_fail == 0 && mono_fail == 0;
    detail += std::string(" ") + std::string(to_string(family)) + "=" +
              (sub_fail == 0 && mono_fail == 0 ? "ok" : "fail");
  }
  std::size_t cut_counterexamples = 0;
  for (std::size_t s = 0; s < 50; ++s) {
    Rng rng(derive_seed(0xA6, s));
    const auto f = random_instance(InstanceFamily::kCut, 3 + rng.uniform_index(6), rng);
    const StructureReport r = verify_monotone(*f);
    if (!r.holds && r.witness &&
        f->eval(r.witness->a) > f->eval(r.witness->b) + kTol &&
        std::includes(r.witness->b.begin(), r.witness->b.end(), r.witness->a.begin(),
                      r.witness->a.end())) {
      ++cut_counterexamples;
    }
  }
  ok = ok && cut_counterexamples > 0;
  return {ok, "50 instances per objective:" + detail + ", cut monotonicity counterexamples " +
                  std::to_string(cut_counterexamples) + "/50"};
}

Verdict lipschitz_probes() {
  constexpr std::size_t kTrials = 1000;
  bool ok = true;
  std::string detail;
  Rng data_rng(derive_seed(0xA7, 0));
  auto data = std::make_shared<VectorDataset>();
  data->points.resize(40, 3);
  for (Eigen::Index i = 0; i < data->points.size(); ++i) data->points.data()[i] = data_rng.normal();
  double radius = 0.0;
  for (Eigen::Index a = 0; a < data->points.rows(); ++a) {
    for (Eigen::Index b = 0; b < data->points.rows(); ++b) {
      radius = std::max(radius, (data->points.row(a) - data->points.row(b)).norm());
    }
  }
  const Metric metric = [&](ElementId a, ElementId b) {
    return (data->points.row(a) - data->points.row(b)).norm();
  };
  const std::vector<ElementId> ground = iota_ids(data->size());
  const double h = 0.75;
  const double sigma = 1.0;
  const double kernel_slope = std::sqrt(2.0) / (h * std::sqrt(std::numbers::e));
  for (std::size_t k = 1; k <= 4; ++k) {
    const ExemplarObjective linear(data, {.alpha_exp = 1.0, .phantom_cost = {}});
    const ExemplarObjective squared(data, {.alpha_exp = 2.0, .phantom_cost = {}});
    const InfoGainObjective info(data, SEKernel(h, sigma));
    const std::pair<const Objective*, double> probes[] = {
        {&linear, 1.0},
        {&squared, 2.0 * radius},
        {&info, kernel_slope / (sigma * sigma) * std::pow(static_cast<double>(k), 3.0)}};
    for (const auto& [f, lambda] : probes) {
      Rng rng(derive_seed(0xA8, k));
      const LipschitzProbe p = lipschitz_probe(*f, metric, ground, k, kTrials, rng);
      const bool within = p.max_ratio <= lambda + kTol;
      ok = ok && within;
      if (k == 3) {
        detail += " " + f->name() + (f == &squared ? "_d2" : "") + "=" + fmt(p.max_ratio) +
                  "/" + fmt(lambda);
      }
    }
  }
  return {ok, "1000 trials per objective and k in 1..4; k=3 max ratio/lambda:" + detail};
}

// Mean ratio rows keyed by method and m.
std::map<std::pair<std::string, std::size_t>, double> mean_ratios(const ExperimentResult& r) {
  std::map<std::pair<std::string, std::size_t>, double> out;
  for (const ResultRow& row : r.rows) {
    if (row.seed == "mean") out[{row.method, row.m}] = row.ratio;
  }
  return out;
}

std::size_t failed_rows(const ExperimentResult& r) {
  return static_cast<std::size_t>(
      std::count_if(r.rows.begin(), r.rows.end(), [](const ResultRow& row) { return row.failed(); }));
}

ExperimentConfig exemplar_config() {
  ExperimentConfig c;
  c.objective.kind = "exemplar";
  c.dataset.generator = "gaussian_mixture";
  c.dataset.params = parse_params("c=10,n=10000,d=16,spread=0.5");
  c.dataset.seed = 1;
  c.dataset.normalize = true;
  for (std::size_t m : {2, 4, 6, 8, 10}) c.sweep.push_back({.m = m, .k = 50});
  for (std::uint64_t s = 0; s < 10; ++s) c.seeds.push_back(s);
  c.engine = EngineKind::kLazy;
  c.baselines = {BaselineKind::kRandomRandom, BaselineKind::kRandomGreedy,
                 BaselineKind::kGreedyMerge, BaselineKind::kGreedyMax};
  return c;
}

std::optional<std::string> exemplar_csv;

Verdict exemplar_replication(double seconds_budget) {
  const auto start = std::chrono::steady_clock::now();
  const ExperimentResult r = run_experiment(exemplar_config());
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  exemplar_csv = to_csv(r);
  const auto means = mean_ratios(r);
  bool ok = failed_rows(r) == 0 && seconds < seconds_budget;
  std::string detail;
  for (std::size_t m : {2, 4, 6, 8, 10}) {
    const double g = means.at({"greedi", m});
    double best_baseline = 0.0;
    for (const char* b : {"random_random", "random_greedy", "greedy_merge", "greedy_max"}) {
      best_baseline = std::max(best_baseline, means.at({b, m}));
    }
    ok = ok && g >= 0.95 && g >= best_baseline;
    detail += " m=" + std::to_string(m) + ":" + fmt(g) + "/" + fmt(best_baseline);
  }
  return {ok, "greedi/best baseline mean ratio" + detail + ", " + fmt(seconds, 1) +
                  " s of " + fmt(seconds_budget, 0)};
}

Verdict active_set_replication() {
  ExperimentConfig c;
  c.objective.kind = "infogain";
  c.objective.bandwidth = 0.75;
  c.objective.noise = 1.0;
  c.dataset.generator = "gaussian_mixture";
  c.dataset.params = parse_params("c=10,n=2000,d=8,spread=0.5");
  c.dataset.seed = 1;
  c.dataset.normalize = true;
  c.sweep = {{.m = 10, .k = 50}};
  for (std::uint64_t s = 0; s < 10; ++s) c.seeds.push_back(s);
  const auto start = std::chrono::steady_clock::now();
  const ExperimentResult r = run_experiment(c);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double g = mean_ratios(r).at({"greedi", 10});
  return {failed_rows(r) == 0 && g >= 0.90 && seconds < 300.0,
          "m=10 mean ratio " + fmt(g) + ", " + fmt(seconds, 1) + " s of 300"};
}

Verdict max_cut_replication() {
  ExperimentConfig c;
  c.objective.kind = "cut";
  c.dataset.generator = "random_graph";
  c.dataset.params = parse_params("n=500,p=0.02,wmin=1,wmax=1");
  c.dataset.seed = 1;
  for (std::size_t m = 2; m <= 10; ++m) c.sweep.push_back({.m = m, .k = 20});
  for (std::uint64_t s = 0; s < 10; ++s) c.seeds.push_back(s);
  c.engine = EngineKind::kRandomGreedy;
  c.centralized_trials = 10;
  const ExperimentResult r = run_experiment(c);
  const auto means = mean_ratios(r);
  bool ok = failed_rows(r) == 0;
  double lowest = std::numeric_limits<double>::infinity();
  std::string detail;
  for (std::size_t m = 2; m <= 10; ++m) {
    const double g = means.at({"greedi", m});
    lowest = std::min(lowest, g);
    ok = ok && g >= 0.80;
    detail += " " + fmt(g, 3);
  }
  return {ok, "mean ratio for m=2..10:" + detail + ", lowest " + fmt(lowest)};
}

Verdict decomposable_replication() {
  ExperimentConfig c = exemplar_config();
  c.decomposable = true;
  c.baselines.clear();
  const ExperimentResult r = run_experiment(c);
  const auto means = mean_ratios(r);
  bool ok = failed_rows(r) == 0;
  std::string detail;
  for (std::size_t m : {2, 4, 6, 8, 10}) {
    const double g = means.at({"greedi_decomposable", m});
    ok = ok && g >= 0.90;
    detail += " m=" + std::to_string(m) + ":" + fmt(g);
  }
  return {ok, "mean ratio" + detail};
}

Verdict random_greedy_guarantee() {
  constexpr std::size_t kTrials = 10000;
  double worst = std::numeric_limits<double>::infinity();
  bool ok = true;
  for (std::size_t s = 0; s < 20; ++s) {
    Rng rng(derive_seed(0xAC, s));
    const std::size_t n = 6 + rng.uniform_index(7);
    const std::size_t k = 1 + rng.uniform_index(n);
    const auto f = random_instance(InstanceFamily::kCut, n, rng);
    const std::vector<ElementId> ground = iota_ids(n);
    const double opt = brute_force_opt(*f, ground, k).value;
    double total = 0.0;
    for (std::size_t t = 0; t < kTrials; ++t) {
      Rng trial(derive_seed(derive_seed(0xAD, s), t));
      total += random_greedy(*f, ground, k, trial).value;
    }
    const double mean = total / static_cast<double>(kTrials);
    const double slack = (mean - (1.0 / std::numbers::e - 0.02) * opt) / opt;
    worst = std::min(worst, mean / opt);
    ok = ok && slack >= -kTol;
  }
  return {ok, "20 instances, lowest mean/OPT " + fmt(worst) + " vs " +
                  fmt(1.0 / std::numbers::e - 0.02)};
}

Verdict determinism() {
  if (!exemplar_csv) return {false, "criterion 8 produced no CSV"};
  ExperimentConfig c = exemplar_config();
  c.workers = 8;
  const std::string parallel = to_csv(run_experiment(c));
  const bool same = parallel == *exemplar_csv;
  return {same, std::string("workers 1 vs 8 CSV ") + (same ? "identical" : "differ") + ", " +
                    std::to_string(parallel.size()) + " bytes"};
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Verdict()>>> criteria = {
      {1, greedy_guarantee},
      {2, greedy_budget_guarantee},
      {3, worst_case_tightness},
      {4, distributed_bounds},
      {5, lazy_equivalence},
      {6, structural_checks},
      {7, lipschitz_probes},
      {8, [] { return exemplar_replication(300.0); }},
      {9, active_set_replication},
      {10, max_cut_replication},
      {11, decomposable_replication},
      {12, random_greedy_guarantee},
      {13, determinism},
  };
  int failures = 0;
  for (const auto& [id, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d %s  %s [%.1f s]\n", id, v.pass ? "PASS" : "FAIL",
                v.detail.c_str(), seconds);
    std::fflush(stdout);
    if (!v.pass) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
