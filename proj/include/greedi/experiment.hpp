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

// Experiment sweeps: GreeDi and the baselines against centralized greedy
// over a grid of (m, k, kappa factor) points and seeds.
//
// Config files are INI style:
//
//   [objective]
//   kind = exemplar          ; exemplar|infogain|dpp|cut|coverage|worstcase
//   [dataset]
//   generator = gaussian_mixture
//   params = c=10,n=10000,d=16,spread=0.5
//   normalize = true
//   [sweep]
//   points = 2:50:1, 4:50:1  ; m:k:kappa_factor
//   seeds = 0..9
//   [run]
//   engine = lazy
//   baselines = random_random,random_greedy,greedy_merge,greedy_max

#ifndef GREEDI_EXPERIMENT_HPP
#define GREEDI_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "greedi/datasets.hpp"
#include "greedi/distributed.hpp"
#include "greedi/engines.hpp"
#include "greedi/objectives.hpp"

namespace greedi {

struct ObjectiveSpec {
  std::string kind = "exemplar";
  double alpha_exp = 2.0;           // exemplar
  double bandwidth = 0.75;          // infogain, dpp
  double noise = 1.0;               // infogain
  double ridge = 1e-3;              // dpp
};

struct DatasetSpec {
  std::string path;                 // file source
  std::string format;               // csv|binary-f32; empty picks by extension
  std::string generator;            // synthetic source, used when path is empty
  Params params;
  std::uint64_t seed = 0;
  bool normalize = false;
  bool undirected = false;          // graph files
};

/// A loaded objective; `exemplar` is set for exemplar objectives so the
/// decomposable mode can split them.
struct ObjectiveInstance {
  std::shared_ptr<const Objective> objective;
  std::shared_ptr<const ExemplarObjective> exemplar;
};

/// Builds the objective of `spec` over the dataset of `data`. The
/// worstcase kind has no dataset and is built per sweep point instead.
ObjectiveInstance make_objective(const ObjectiveSpec& spec, const DatasetSpec& data);

struct SweepPoint {
  std::size_t m = 1;
  std::size_t k = 1;
  double kappa_factor = 1.0;
};

enum class RunMode { kGreedi, kExact };

struct ExperimentConfig {
  ObjectiveSpec objective;
  DatasetSpec dataset;
  std::vector<SweepPoint> sweep;
  std::vector<BaselineKind> baselines;
  EngineKind engine = EngineKind::kLazy;
  std::vector<std::uint64_t> seeds;
  RunMode mode = RunMode::kGreedi;
  bool decomposable = false;
  bool local_evaluation = true;
  std::size_t workers = 1;
  /// Centralized RandomGreedy trials averaged into the ratio denominator.
  std::size_t centralized_trials = 10;
  std::size_t eval_subset_size = 0;
  /// Fill the ms column; off by default so repeated runs are byte-identical.
  bool timing = false;
  std::string output;

  /// Throws PreconditionError on an empty sweep, no seeds or kappa_factor <= 0.
  void validate() const;
};

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

struct ResultRow {
  std::string method;
  std::size_t m = 0;
  std::size_t k = 0;
  std::size_t kappa = 0;
  std::string seed;                 // seed value, or "mean" / "std"
  double value = 0.0;               // NaN for a failed cell
  double ratio = 0.0;
  std::optional<std::uint64_t> oracle_calls;
  std::optional<double> ms;

  bool failed() const;
};

/// NaN fields compare equal to each other.
bool operator==(const ResultRow& a, const ResultRow& b);

struct ExperimentResult {
  std::vector<ResultRow> rows;

  bool operator==(const ExperimentResult&) const = default;
};

/// Runs every (sweep point, seed) cell and appends per-(method, m, k, kappa)
/// mean and std rows. A failing method run becomes a failed row.
ExperimentResult run_experiment(const ExperimentConfig& config);

inline constexpr std::string_view kCsvHeader =
    "method,m,k,kappa,seed,value,ratio,oracle_calls,ms";

std::string to_csv(const ExperimentResult& result);
ExperimentResult parse_csv(std::string_view text);
void write_csv(const std::filesystem::path& path, const ExperimentResult& result);
ExperimentResult read_csv(const std::filesystem::path& path);

}  // namespace greedi

#endif  // GREEDI_EXPERIMENT_HPP
