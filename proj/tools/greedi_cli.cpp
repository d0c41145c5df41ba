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

// Command line front end: solve, greedi, baseline, sweep, verify, gen.

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "greedi/constraints.hpp"
#include "greedi/datasets.hpp"
#include "greedi/distributed.hpp"
#include "greedi/engines.hpp"
#include "greedi/experiment.hpp"
#include "greedi/verify.hpp"

namespace {

using namespace greedi;

struct DataOptions {
  std::string objective;
  std::string data;
  std::string format;
  bool normalize = false;
  bool undirected = false;
  double alpha_exp = 2.0;
  double bandwidth = 0.75;
  double noise = 1.0;
  double ridge = 1e-3;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::string engine = "lazy";

  ObjectiveInstance load() const {
    ObjectiveSpec spec;
    spec.kind = objective;
    spec.alpha_exp = alpha_exp;
    spec.bandwidth = bandwidth;
    spec.noise = noise;
    spec.ridge = ridge;
    DatasetSpec source;
    source.path = data;
    source.format = format;
    source.normalize = normalize;
    source.undirected = undirected;
    return make_objective(spec, source);
  }
};

void add_data_options(CLI::App* cmd, DataOptions& o) {
  cmd->add_option("--objective", o.objective, "exemplar|infogain|dpp|cut|coverage")
      ->required();
  cmd->add_option("--data", o.data, "dataset file")->required();
  cmd->add_option("--k", o.k, "solution size")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--engine", o.engine, "greedy|lazy|costbenefit|randomgreedy|constrained");
  cmd->add_option("--seed", o.seed, "seed for every random choice");
  cmd->add_option("--format", o.format, "csv|binary-f32 (default: by extension)");
  cmd->add_flag("--normalize", o.normalize, "center and scale vectors to unit norm");
  cmd->add_flag("--undirected", o.undirected, "read graph edges in both directions");
  cmd->add_option("--alpha-exp", o.alpha_exp, "exemplar dissimilarity exponent");
  cmd->add_option("--bandwidth", o.bandwidth, "SE kernel bandwidth h");
  cmd->add_option("--noise", o.noise, "observation noise sigma");
  cmd->add_option("--ridge", o.ridge, "DPP kernel ridge");
}

void print_solution(const Solution& s) {
  std::cout << "method=" << s.provenance << " size=" << s.elements.size()
            << " value=" << format_value(s.value) << " oracle_calls=" << s.oracle_calls
            << " ids=" << format_ids(s.elements) << '\n';
}

std::vector<double> split_numbers(std::string_view text, char sep) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = text.find(sep, start);
    const std::string_view token =
        text.substr(start, at == std::string_view::npos ? at : at - start);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw PreconditionError("bad number '" + std::string(token) + "'");
    }
    out.push_back(v);
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return out;
}

// cardinality:K, knapsack:B[;B2...]:costfile, partition:CAP:blockfile
std::unique_ptr<Constraint> parse_constraint(const std::string& spec, std::size_t n,
                                             std::size_t k) {
  if (spec.empty()) return std::make_unique<CardinalityConstraint>(k);
  const std::size_t first = spec.find(':');
  const std::string kind = spec.substr(0, first);
  const std::string rest = first == std::string::npos ? "" : spec.substr(first + 1);
  if (kind == "cardinality") {
    return std::make_unique<CardinalityConstraint>(
        static_cast<std::size_t>(split_numbers(rest, ',').at(0)));
  }
  const std::size_t second = rest.find(':');
  if (second == std::string::npos) {
    throw PreconditionError("constraint '" + spec + "' needs a value and a file");
  }
  const std::string value = rest.substr(0, second);
  const std::string file = rest.substr(second + 1);
  if (kind == "knapsack") {
    const std::vector<double> budget = split_numbers(value, ';');
    const VectorDataset costs = load_vectors(file, VectorFormat::kCsv);
    if (costs.size() != n) {
      throw PreconditionError("cost file has " + std::to_string(costs.size()) +
                              " rows for " + std::to_string(n) + " elements");
    }
    return std::make_unique<KnapsackConstraint>(
        costs.points, Eigen::Map<const Eigen::VectorXd>(
                          budget.data(), static_cast<Eigen::Index>(budget.size())));
  }
  if (kind == "partition") {
    const auto capacity = static_cast<std::size_t>(split_numbers(value, ',').at(0));
    const VectorDataset blocks = load_vectors(file, VectorFormat::kCsv);
    if (blocks.size() != n || blocks.dim() != 1) {
      throw PreconditionError("block file needs one block index per element");
    }
    std::vector<std::size_t> block_of(n);
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double b = blocks.points(static_cast<Eigen::Index>(i), 0);
      if (b < 0 || b != static_cast<double>(static_cast<std::size_t>(b))) {
        throw PreconditionError("block index must be a nonnegative integer");
      }
      block_of[i] = static_cast<std::size_t>(b);
      count = std::max(count, block_of[i] + 1);
    }
    return std::make_unique<PartitionMatroid>(std::move(block_of),
                                              std::vector<std::size_t>(count, capacity));
  }
  throw PreconditionError("unknown constraint '" + kind +
                          "' (expected cardinality|knapsack|partition)");
}

struct DistributedOptions {
  std::size_t machines = 1;
  double kappa_factor = 1.0;
  bool decomposable = false;
  bool global_evaluation = false;
  std::size_t workers = 1;
  std::size_t eval_subset_size = 0;
  bool trace = false;
};

void add_distributed_options(CLI::App* cmd, DistributedOptions& o) {
  cmd->add_option("--machines", o.machines, "number of simulated machines")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--kappa-factor", o.kappa_factor, "kappa = ceil(factor * k)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_flag("--global-evaluation", o.global_evaluation,
                "machines evaluate the global objective");
}

GreediConfig make_config(const DataOptions& d, const DistributedOptions& o) {
  GreediConfig c;
  c.machines = o.machines;
  c.k = d.k;
  c.kappa = kappa_from_factor(d.k, o.kappa_factor);
  c.engine = parse_engine_kind(d.engine);
  c.local_evaluation = !o.global_evaluation;
  c.seed = d.seed;
  c.workers = o.workers;
  c.eval_subset_size = o.eval_subset_size;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-round distributed submodular maximization"};
  app.require_subcommand(1);

  DataOptions data;
  DistributedOptions dist;
  std::string constraint_spec;

  auto* solve = app.add_subcommand("solve", "centralized engine run");
  add_data_options(solve, data);
  solve->add_option("--constraint", constraint_spec,
                    "cardinality:K | knapsack:B:costfile | partition:CAP:blockfile");

  auto* greedi_cmd = app.add_subcommand("greedi", "two-round distributed run");
  add_data_options(greedi_cmd, data);
  add_distributed_options(greedi_cmd, dist);
  greedi_cmd->add_flag("--decomposable", dist.decomposable,
                       "machine-local evaluation of a decomposable objective");
  greedi_cmd->add_option("--eval-subset-size", dist.eval_subset_size,
                         "size of the round-two evaluation set (default ceil(n/m))");
  greedi_cmd->add_flag("--trace", dist.trace, "print the full round trace");

  std::string baseline_kind;
  auto* baseline_cmd = app.add_subcommand("baseline", "naive two-round protocol");
  baseline_cmd->add_option("--kind", baseline_kind,
                           "random_random|random_greedy|greedy_merge|greedy_max")
      ->required();
  add_data_options(baseline_cmd, data);
  add_distributed_options(baseline_cmd, dist);

  std::string config_path;
  std::string out_path;
  std::size_t sweep_workers = 0;
  bool timing = false;
  auto* sweep = app.add_subcommand("sweep", "experiment grid to CSV");
  sweep->add_option("--config", config_path, "experiment config")->required();
  sweep->add_option("--out", out_path, "CSV output path");
  sweep->add_option("--workers", sweep_workers, "override the config worker count");
  sweep->add_flag("--timing", timing, "fill the ms column");

  std::string suite;
  std::size_t seeds = 50;
  auto* verify = app.add_subcommand("verify", "bound and structure checks");
  verify->add_option("--suite", suite, "bounds|structure|lipschitz|worstcase (default all)")
      ->check(CLI::IsMember({"bounds", "structure", "lipschitz", "worstcase"}));
  verify->add_option("--seeds", seeds, "random instances per suite");

  std::string gen_kind;
  std::string gen_params;
  std::uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("gen", "synthetic dataset");
  gen->add_option("--kind", gen_kind, "gaussian_mixture|random_graph|random_sets")
      ->required();
  gen->add_option("--params", gen_params, "k=v,...");
  gen->add_option("--out", out_path, "output file")->required();
  gen->add_option("--seed", gen_seed, "generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (solve->parsed()) {
      const ObjectiveInstance f = data.load();
      const auto constraint = parse_constraint(constraint_spec, f.objective->size(), data.k);
      const auto engine = make_engine(parse_engine_kind(data.engine));
      Rng rng(data.seed);
      const std::vector<ElementId> ground = iota_ids(f.objective->size());
      print_solution(engine->solve(*f.objective, *constraint, ground, rng));
    } else if (greedi_cmd->parsed()) {
      const ObjectiveInstance f = data.load();
      const GreediConfig config = make_config(data, dist);
      const Partition partition =
          partition_uniform(f.objective->size(), config.machines, config.seed);
      GreediResult r;
      if (dist.decomposable) {
        if (!f.exemplar) throw PreconditionError("--decomposable needs --objective exemplar");
        r = greedi_decomposable(ExemplarDecomposition(f.exemplar), partition, config);
      } else {
        r = greedi::greedi(*f.objective, partition, config);
      }
      if (dist.trace) std::cout << serialize_trace(r.trace);
      print_solution(r.solution);
    } else if (baseline_cmd->parsed()) {
      const ObjectiveInstance f = data.load();
      const BaselineKind kind = parse_baseline_kind(baseline_kind);
      const GreediConfig config = make_config(data, dist);
      const Partition partition =
          partition_uniform(f.objective->size(), config.machines, config.seed);
      print_solution(baseline(kind, *f.objective, partition, config));
    } else if (sweep->parsed()) {
      ExperimentConfig config = load_config(config_path);
      if (sweep_workers > 0) config.workers = sweep_workers;
      if (timing) config.timing = true;
      if (!out_path.empty()) config.output = out_path;
      if (config.output.empty()) throw PreconditionError("sweep needs --out or run.output");
      const ExperimentResult result = run_experiment(config);
      write_csv(config.output, result);
      std::size_t failed = 0;
      for (const ResultRow& r : result.rows) failed += r.failed() ? 1 : 0;
      std::cout << "rows=" << result.rows.size() << " failed=" << failed
                << " out=" << config.output << '\n';
    } else if (verify->parsed()) {
      const std::vector<std::string> suites =
          suite.empty() ? std::vector<std::string>{"bounds", "structure", "lipschitz", "worstcase"}
                        : std::vector<std::string>{suite};
      std::size_t failures = 0;
      for (const std::string& name : suites) {
        for (const SuiteLine& line : run_suite(name, seeds)) {
          std::cout << line.text << '\n';
          failures += line.passed ? 0 : 1;
        }
      }
      if (failures > 0) {
        std::cerr << "error: " << failures << " check(s) failed\n";
        return 1;
      }
    } else if (gen->parsed()) {
      save_dataset(out_path, gen_synthetic(gen_kind, parse_params(gen_params), gen_seed));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
