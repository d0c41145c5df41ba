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

#include "greedi/distributed.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "greedi/parallel.hpp"
#include "greedi/rng.hpp"
#include "greedi/verify.hpp"

namespace greedi {

namespace {

// RNG stream ids; machine i uses stream i.
constexpr std::uint64_t kMergeStream = std::uint64_t{1} << 32;
constexpr std::uint64_t kScopeStream = kMergeStream + 1;
constexpr std::uint64_t kPartitionStream = kMergeStream + 2;

Rng machine_rng(std::uint64_t seed, std::size_t machine) {
  return Rng(derive_seed(seed, machine));
}

}  // namespace

std::vector<ElementId> Partition::ground() const {
  std::vector<ElementId> all;
  for (const auto& b : blocks) all.insert(all.end(), b.begin(), b.end());
  std::sort(all.begin(), all.end());
  return all;
}

std::size_t Partition::size() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.size();
  return n;
}

Partition partition_uniform(ElementSpan ground, std::size_t m, std::uint64_t seed) {
  if (m < 1) throw PreconditionError("partition needs at least one machine");
  if (ground.empty()) throw PreconditionError("partition of an empty ground set");
  Partition p;
  p.machines = m;
  p.seed = seed;
  p.blocks.assign(m, {});
  Rng rng(derive_seed(seed, kPartitionStream));
  for (ElementId e : ground) p.blocks[rng.uniform_index(m)].push_back(e);
  for (auto& b : p.blocks) std::sort(b.begin(), b.end());
  return p;
}

Partition partition_uniform(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n < 1) throw PreconditionError("partition of an empty ground set");
  const std::vector<ElementId> ids = iota_ids(n);
  return partition_uniform(ids, m, seed);
}

Partition partition_from_blocks(std::vector<std::vector<ElementId>> blocks) {
  if (blocks.empty()) throw PreconditionError("partition needs at least one machine");
  Partition p;
  p.machines = blocks.size();
  p.blocks = std::move(blocks);
  for (auto& b : p.blocks) std::sort(b.begin(), b.end());
  return p;
}

std::size_t kappa_from_factor(std::size_t k, double factor) {
  if (!(factor > 0.0)) throw PreconditionError("kappa factor must be positive");
  const double kappa = std::ceil(factor * static_cast<double>(k) - 1e-12);
  return std::max<std::size_t>(1, static_cast<std::size_t>(kappa));
}

namespace {

Solution run_engine(EngineKind engine, const Objective& f, ElementSpan ground,
                    std::size_t budget, Rng& rng) {
  switch (engine) {
    case EngineKind::kLazy: return lazy_greedy(f, ground, budget);
    case EngineKind::kGreedy:
    case EngineKind::kConstrained: return greedy(f, ground, budget);
    case EngineKind::kRandomGreedy: return random_greedy(f, ground, budget, rng);
    case EngineKind::kCostBenefit: break;
  }
  throw PreconditionError(
      "cost-benefit engine needs a knapsack; use greedi_general");
}

// Re-values `s` under `judge` when it was produced by another objective.
Solution revalue(const Objective& judge, const Objective& producer, Solution s) {
  if (&judge != &producer) s.value = judge.eval(s.elements);
  return s;
}

Solution prefix(const Objective& judge, const Solution& s, std::size_t k) {
  if (s.elements.size() <= k) return s;
  std::vector<ElementId> head(s.elements.begin(),
                              s.elements.begin() + static_cast<std::ptrdiff_t>(k));
  return make_solution(judge, std::move(head), s.provenance, s.oracle_calls);
}

std::vector<ElementId> sorted_union(const std::vector<MachineRecord>& machines) {
  std::vector<ElementId> merged;
  for (const auto& r : machines) {
    merged.insert(merged.end(), r.solution.elements.begin(), r.solution.elements.end());
  }
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  return merged;
}

// Higher value wins; on equal values the larger set wins, so flat
// objectives still report full-size solutions.
bool outranks(const Solution& a, const Solution& b) {
  return a.value > b.value ||
         (a.value == b.value && a.elements.size() > b.elements.size());
}

using MachineStep = std::function<Solution(std::size_t machine, ElementSpan block)>;
using MergeStep = std::function<Solution(ElementSpan merged)>;

// Runs both rounds. Machine solutions come back valued under `judge`; the
// merge step solves to max(kappa, k) so both budgets are prefixes of it.
GreediTrace two_rounds(const Objective& judge, const Partition& partition,
                       std::size_t workers, std::size_t kappa, std::size_t k,
                       const MachineStep& machine_step, const MergeStep& merge_step) {
  GreediTrace trace;
  trace.machines.resize(partition.machines);
  parallel_for(partition.machines, workers, [&](std::size_t i) {
    MachineRecord& r = trace.machines[i];
    r.machine = i;
    r.block_size = partition.blocks[i].size();
    r.solution = machine_step(i, partition.blocks[i]);
  });

  Solution best_k;
  for (std::size_t i = 0; i < trace.machines.size(); ++i) {
    const Solution& s = trace.machines[i].solution;
    trace.oracle_calls += s.oracle_calls;
    trace.elements_shipped += s.elements.size();
    if (s.value > trace.machines[trace.best_machine].solution.value) {
      trace.best_machine = i;
    }
    Solution head = prefix(judge, s, k);
    if (i == 0 || outranks(head, best_k)) {
      best_k = std::move(head);
    }
  }

  trace.merged = sorted_union(trace.machines);
  Solution merge_full = merge_step(trace.merged);
  trace.oracle_calls += merge_full.oracle_calls;
  trace.merge = prefix(judge, merge_full, kappa);
  const Solution merge_k = prefix(judge, merge_full, k);

  const Solution& best = trace.machines[trace.best_machine].solution;
  trace.final_from_merge = outranks(trace.merge, best);
  trace.final_kappa = trace.final_from_merge ? trace.merge : best;
  trace.final_k_from_merge = outranks(merge_k, best_k);
  trace.final_k = trace.final_k_from_merge ? merge_k : best_k;
  trace.final_kappa.provenance = "greedi";
  trace.final_k.provenance = "greedi";
  return trace;
}

GreediResult package(GreediTrace trace) {
  GreediResult out;
  out.solution = trace.final_k;
  out.solution.oracle_calls = trace.oracle_calls;
  out.trace = std::move(trace);
  return out;
}

}  // namespace

GreediResult greedi(const Objective& f, const Partition& partition,
                    const GreediConfig& config) {
  if (config.k < 1) throw PreconditionError("greedi needs k >= 1");
  const std::size_t kappa = config.effective_kappa();
  const std::size_t merge_budget = std::max(kappa, config.k);
  auto machine_step = [&](std::size_t i, ElementSpan block) {
    Rng rng = machine_rng(config.seed, i);
    std::shared_ptr<const Objective> local =
        config.local_evaluation ? f.localized(block) : nullptr;
    const Objective& g = local ? *local : f;
    return revalue(f, g, run_engine(config.engine, g, block, kappa, rng));
  };
  auto merge_step = [&](ElementSpan merged) {
    Rng rng(derive_seed(config.seed, kMergeStream));
    return run_engine(config.engine, f, merged, merge_budget, rng);
  };
  return package(two_rounds(f, partition, config.workers, kappa, config.k,
                            machine_step, merge_step));
}

GreediResult greedi(const Objective& f, ElementSpan ground, const GreediConfig& config) {
  return greedi(f, partition_uniform(ground, config.machines, config.seed), config);
}

GreediResult greedi_general(const Objective& f, const Partition& partition,
                            const Constraint& constraint, const Engine& engine,
                            const GreediConfig& config) {
  const std::size_t budget = constraint.rho();
  auto machine_step = [&](std::size_t i, ElementSpan block) {
    Rng rng = machine_rng(config.seed, i);
    std::shared_ptr<const Objective> local =
        config.local_evaluation ? f.localized(block) : nullptr;
    const Objective& g = local ? *local : f;
    return revalue(f, g, engine.solve(g, constraint, block, rng));
  };
  auto merge_step = [&](ElementSpan merged) {
    Rng rng(derive_seed(config.seed, kMergeStream));
    return engine.solve(f, constraint, merged, rng);
  };
  return package(
      two_rounds(f, partition, config.workers, budget, budget, machine_step, merge_step));
}

GreediResult greedi_decomposable(const DecomposableObjective& f,
                                 const Partition& partition,
                                 const GreediConfig& config) {
  if (config.k < 1) throw PreconditionError("greedi needs k >= 1");
  const std::size_t kappa = config.effective_kappa();
  const std::size_t merge_budget = std::max(kappa, config.k);
  const std::vector<ElementId> ground = partition.ground();
  const std::size_t n = ground.size();
  const std::size_t m = partition.machines;
  std::size_t scope_size =
      config.eval_subset_size > 0 ? config.eval_subset_size : (n + m - 1) / m;
  scope_size = std::min(scope_size, n);

  Rng scope_rng(derive_seed(config.seed, kScopeStream));
  std::vector<ElementId> scope = scope_rng.sample(ground, scope_size);
  std::sort(scope.begin(), scope.end());
  const std::shared_ptr<const Objective> judge = f.restricted(std::move(scope));

  auto machine_step = [&](std::size_t i, ElementSpan block) {
    Rng rng = machine_rng(config.seed, i);
    const auto local = f.restricted(std::vector<ElementId>(block.begin(), block.end()));
    return revalue(*judge, *local, run_engine(config.engine, *local, block, kappa, rng));
  };
  auto merge_step = [&](ElementSpan merged) {
    Rng rng(derive_seed(config.seed, kMergeStream));
    return run_engine(config.engine, *judge, merged, merge_budget, rng);
  };
  GreediResult out = package(two_rounds(*judge, partition, config.workers, kappa,
                                        config.k, machine_step, merge_step));
  out.solution.value = f.global()->eval(out.solution.elements);
  return out;
}

GreediResult exact_two_round(const Objective& f, const Partition& partition,
                             std::size_t k) {
  for (const auto& b : partition.blocks) {
    if (b.size() > 14) {
      throw SizeLimitError("exact two-round protocol needs <= 14 elements per machine");
    }
  }
  const CardinalityConstraint card(k);
  auto machine_step = [&](std::size_t, ElementSpan block) {
    return brute_force_opt(f, block, &card);
  };
  auto merge_step = [&](ElementSpan merged) {
    return brute_force_opt(f, merged, &card);
  };
  GreediTrace trace = two_rounds(f, partition, 1, k, k, machine_step, merge_step);
  // The exact protocol reports the round-two optimum, which already
  // dominates every machine solution.
  trace.final_kappa = trace.merge;
  trace.final_k = trace.merge;
  trace.final_from_merge = trace.final_k_from_merge = true;
  trace.final_kappa.provenance = trace.final_k.provenance = "exact_two_round";
  return package(std::move(trace));
}

BaselineKind parse_baseline_kind(std::string_view name) {
  if (name == "random_random") return BaselineKind::kRandomRandom;
  if (name == "random_greedy") return BaselineKind::kRandomGreedy;
  if (name == "greedy_merge") return BaselineKind::kGreedyMerge;
  if (name == "greedy_max") return BaselineKind::kGreedyMax;
  throw PreconditionError("unknown baseline '" + std::string(name) +
                          "' (expected random_random|random_greedy|greedy_merge|greedy_max)");
}

std::string_view to_string(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::kRandomRandom: return "random_random";
    case BaselineKind::kRandomGreedy: return "random_greedy";
    case BaselineKind::kGreedyMerge: return "greedy_merge";
    case BaselineKind::kGreedyMax: return "greedy_max";
  }
  return "unknown";
}

Solution baseline(BaselineKind kind, const Objective& f, const Partition& partition,
                  const GreediConfig& config) {
  const std::size_t k = config.k;
  const std::size_t m = partition.machines;
  if (k < 1) throw PreconditionError("baseline needs k >= 1");

  std::size_t machine_budget = k;
  if (kind == BaselineKind::kGreedyMerge) machine_budget = std::max<std::size_t>(1, k / m);
  const bool random_first = kind == BaselineKind::kRandomRandom ||
                            kind == BaselineKind::kRandomGreedy;

  std::vector<Solution> local(m);
  parallel_for(m, config.workers, [&](std::size_t i) {
    Rng rng = machine_rng(config.seed, i);
    const std::vector<ElementId>& block = partition.blocks[i];
    if (random_first) {
      local[i] = make_solution(f, rng.sample(block, k), "random");
      return;
    }
    std::shared_ptr<const Objective> view =
        config.local_evaluation ? f.localized(block) : nullptr;
    const Objective& g = view ? *view : f;
    local[i] = revalue(f, g, run_engine(config.engine, g, block, machine_budget, rng));
  });

  std::uint64_t calls = 0;
  std::vector<ElementId> merged;
  for (const Solution& s : local) {
    calls += s.oracle_calls;
    merged.insert(merged.end(), s.elements.begin(), s.elements.end());
  }

  Solution out;
  Rng merge_rng(derive_seed(config.seed, kMergeStream));
  switch (kind) {
    case BaselineKind::kRandomRandom:
      out = make_solution(f, merge_rng.sample(merged, k), "");
      break;
    case BaselineKind::kRandomGreedy:
      std::sort(merged.begin(), merged.end());
      out = run_engine(config.engine, f, merged, k, merge_rng);
      break;
    case BaselineKind::kGreedyMerge:
      if (merged.size() > k) merged.resize(k);
      out = make_solution(f, std::move(merged), "");
      break;
    case BaselineKind::kGreedyMax: {
      std::size_t best = 0;
      for (std::size_t i = 1; i < m; ++i) {
        if (local[i].value > local[best].value) best = i;
      }
      out = std::move(local[best]);
      out.oracle_calls = 0;
      break;
    }
  }
  out.oracle_calls += calls;
  out.provenance = std::string(to_string(kind));
  return out;
}

KRoundResult naive_kround_greedy(const Objective& f, const Partition& partition,
                                 std::size_t k) {
  KRoundResult out;
  auto state = f.start();
  for (std::size_t round = 0; round < k; ++round) {
    bool found = false;
    double best_gain = 0.0;
    ElementId best = 0;
    for (const auto& block : partition.blocks) {
      ++out.messages;
      bool local_found = false;
      double local_gain = 0.0;
      ElementId local_best = 0;
      for (ElementId e : block) {
        if (state->contains(e)) continue;
        const double g = state->gain(e);
        if (!local_found || g > local_gain || (g == local_gain && e < local_best)) {
          local_found = true;
          local_gain = g;
          local_best = e;
        }
      }
      if (!local_found) continue;
      if (!found || local_gain > best_gain ||
          (local_gain == best_gain && local_best < best)) {
        found = true;
        best_gain = local_gain;
        best = local_best;
      }
    }
    if (!found || (!f.monotone() && best_gain < 0.0)) break;
    state->add(best);
    ++out.rounds;
  }
  out.solution.elements = state->selected();
  out.solution.value = state->value();
  out.solution.oracle_calls = state->calls();
  out.solution.provenance = "kround_greedy";
  return out;
}

std::string serialize_trace(const GreediTrace& trace) {
  std::ostringstream out;
  for (const auto& r : trace.machines) {
    out << "machine id=" << r.machine << " block=" << r.block_size
        << " size=" << r.solution.elements.size()
        << " value=" << format_value(r.solution.value)
        << " calls=" << r.solution.oracle_calls
        << " ids=" << format_ids(r.solution.elements) << '\n';
  }
  out << "merge candidates=" << trace.merged.size()
      << " size=" << trace.merge.elements.size()
      << " value=" << format_value(trace.merge.value)
      << " calls=" << trace.merge.oracle_calls
      << " ids=" << format_ids(trace.merge.elements) << '\n';
  auto source = [&](bool from_merge) {
    return from_merge ? std::string("merge")
                      : "machine:" + std::to_string(trace.best_machine);
  };
  out << "final_kappa source=" << source(trace.final_from_merge)
      << " size=" << trace.final_kappa.elements.size()
      << " value=" << format_value(trace.final_kappa.value)
      << " ids=" << format_ids(trace.final_kappa.elements) << '\n';
  out << "final_k source=" << (trace.final_k_from_merge ? "merge" : "machine")
      << " size=" << trace.final_k.elements.size()
      << " value=" << format_value(trace.final_k.value)
      << " ids=" << format_ids(trace.final_k.elements) << '\n';
  out << "summary oracle_calls=" << trace.oracle_calls
      << " shipped=" << trace.elements_shipped << '\n';
  return out.str();
}

}  // namespace greedi
