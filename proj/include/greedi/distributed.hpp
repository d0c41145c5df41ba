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

// Two-round distributed maximization over simulated machines.
//
// Round one: every machine solves its own block. Round two: the union of
// the machine solutions is solved again and the better of the best machine
// solution and the merged solution is returned. Machines run on a worker
// pool over shared immutable data; all randomness is drawn from per-machine
// streams derived from the seed, so results do not depend on the pool size.

#ifndef GREEDI_DISTRIBUTED_HPP
#define GREEDI_DISTRIBUTED_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "greedi/constraints.hpp"
#include "greedi/core.hpp"
#include "greedi/engines.hpp"
#include "greedi/objectives.hpp"

namespace greedi {

struct Partition {
  std::size_t machines = 1;
  std::uint64_t seed = 0;
  std::vector<std::vector<ElementId>> blocks;  // each sorted by id

  /// Union of all blocks, sorted.
  std::vector<ElementId> ground() const;
  std::size_t size() const;
};

/// Each element of `ground` independently lands on a uniformly random
/// machine. Reproducible from (ground, m, seed).
Partition partition_uniform(ElementSpan ground, std::size_t m, std::uint64_t seed);
Partition partition_uniform(std::size_t n, std::size_t m, std::uint64_t seed);
/// Fixed assignment, e.g. an adversarial instance.
Partition partition_from_blocks(std::vector<std::vector<ElementId>> blocks);

/// kappa = max(1, ceil(factor * k)).
std::size_t kappa_from_factor(std::size_t k, double factor);

struct GreediConfig {
  std::size_t machines = 1;
  std::size_t k = 1;
  std::size_t kappa = 0;  // 0 means kappa = k
  EngineKind engine = EngineKind::kLazy;
  /// Machines evaluate Objective::localized(block) instead of f.
  bool local_evaluation = false;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  /// Size of the random evaluation set of the decomposable merge stage;
  /// 0 means ceil(n / m).
  std::size_t eval_subset_size = 0;

  std::size_t effective_kappa() const { return kappa == 0 ? k : kappa; }
};

struct MachineRecord {
  std::size_t machine = 0;
  std::size_t block_size = 0;
  Solution solution;
};

struct GreediTrace {
  std::vector<MachineRecord> machines;
  std::size_t best_machine = 0;       // index of the best machine solution
  std::vector<ElementId> merged;      // union of machine solutions, sorted
  Solution merge;                     // round-two solution on `merged`
  Solution final_kappa;               // better of the two at budget kappa
  Solution final_k;                   // better of the two cut to size k
  bool final_from_merge = false;
  bool final_k_from_merge = false;
  std::uint64_t oracle_calls = 0;
  std::size_t elements_shipped = 0;   // sum of machine solution sizes
};

struct GreediResult {
  Solution solution;  // size-k result, valued under the global objective
  GreediTrace trace;
};

/// Greedy per machine to kappa, merge, greedy on the union, best of both.
/// With the random greedy engine the same protocol runs with RandomGreedy in
/// both rounds.
GreediResult greedi(const Objective& f, const Partition& partition,
                    const GreediConfig& config);
GreediResult greedi(const Objective& f, ElementSpan ground, const GreediConfig& config);

/// Both rounds run a black-box engine under `constraint`.
GreediResult greedi_general(const Objective& f, const Partition& partition,
                            const Constraint& constraint, const Engine& engine,
                            const GreediConfig& config);

/// Machine i maximizes f_{V_i}; round two maximizes f_U for a seeded uniform
/// U of eval_subset_size elements, which also decides between the two
/// candidates. The returned solution is valued under the global objective.
GreediResult greedi_decomposable(const DecomposableObjective& f,
                                 const Partition& partition,
                                 const GreediConfig& config);

/// Exact optimum per machine and on the union (lexicographic ties). Each
/// machine block must have at most 14 elements.
GreediResult exact_two_round(const Objective& f, const Partition& partition,
                             std::size_t k);

enum class BaselineKind { kRandomRandom, kRandomGreedy, kGreedyMerge, kGreedyMax };

BaselineKind parse_baseline_kind(std::string_view name);
std::string_view to_string(BaselineKind kind);

/// Naive two-round protocols over the same partition as GreeDi, using
/// config.k and config.engine for every greedy step.
Solution baseline(BaselineKind kind, const Objective& f, const Partition& partition,
                  const GreediConfig& config);

struct KRoundResult {
  Solution solution;
  std::size_t rounds = 0;
  std::size_t messages = 0;
};

/// Synchronized k-round protocol: each round every machine proposes its
/// local best candidate and the coordinator keeps the global best. Selects
/// exactly what centralized greedy selects.
KRoundResult naive_kround_greedy(const Objective& f, const Partition& partition,
                                 std::size_t k);

/// Line-oriented trace: one record per machine, then merge, final and
/// summary records, in a fixed field order.
std::string serialize_trace(const GreediTrace& trace);

}  // namespace greedi

#endif  // GREEDI_DISTRIBUTED_HPP
