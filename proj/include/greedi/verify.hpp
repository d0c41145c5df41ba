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

// Ground-truth oracles: exhaustive optimization, the adversarial two-round
// instance, approximation bound checks and small random instances.

#ifndef GREEDI_VERIFY_HPP
#define GREEDI_VERIFY_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "greedi/constraints.hpp"
#include "greedi/core.hpp"
#include "greedi/distributed.hpp"
#include "greedi/objectives.hpp"
#include "greedi/rng.hpp"

namespace greedi {

/// Exact maximizer of f over the subsets of `ground` that satisfy
/// `constraint` (all subsets when null). Subsets are visited in
/// lexicographic order of their sorted ids and only a strictly better value
/// replaces the incumbent, so ties resolve to the lexicographically first
/// maximizer. Throws SizeLimitError unless |ground| <= 14, or |ground| <= 20
/// with constraint->rho() <= 4.
Solution brute_force_opt(const Objective& f, ElementSpan ground,
                         const Constraint* constraint = nullptr);
Solution brute_force_opt(const Objective& f, ElementSpan ground, std::size_t k);

// Coverage realization of the adversarial two-round instance. Machine i
// holds k "bit" elements X(i, j), each covering one private item, and one
// "block" element Y(i) covering all k of them. All X ids precede all Y ids.
struct WorstCaseInstance {
  std::size_t m = 0;
  std::size_t k = 0;
  std::shared_ptr<const SetSystemDataset> sets;
  std::shared_ptr<const CoverageObjective> objective;
  Partition partition;

  ElementId x(std::size_t i, std::size_t j) const {
    return static_cast<ElementId>(i * k + j);
  }
  ElementId y(std::size_t i) const { return static_cast<ElementId>(m * k + i); }
};

/// Requires m >= 2 and k >= 2.
WorstCaseInstance worst_case_instance(std::size_t m, std::size_t k);

struct BoundInputs {
  double opt = 0.0;
  double achieved = 0.0;
  std::size_t k = 0;
  std::size_t q = 0;      // greedy_budget: number of greedy steps
  std::size_t m = 1;
  std::size_t kappa = 0;  // greedi: per-machine budget
  std::size_t rho = 0;    // greedi_general: largest feasible set size
  double tau = 0.0;       // greedi_general: engine factor
  std::string fingerprint;
};

struct BoundReport {
  std::string bound_name;
  double bound_value = 0.0;
  double achieved = 0.0;
  bool satisfied = false;  // achieved >= bound_value - 1e-9
  std::string fingerprint;
};

/// Bound names:
///   greedy          (1 - 1/e) OPT
///   greedy_budget   (1 - exp(-q/k)) OPT
///   greedi          (1 - exp(-kappa/k)) / min(m, k) OPT
///   greedi_general  tau / min(m, rho) OPT
BoundReport check_bound(std::string_view name, const BoundInputs& inputs);

std::string format_report(const BoundReport& report);

enum class InstanceFamily { kCoverage, kModular, kExemplar, kInfoGain, kCut, kDpp };

std::string_view to_string(InstanceFamily family);

/// Small seeded instance of the given family over n elements.
std::shared_ptr<const Objective> random_instance(InstanceFamily family, std::size_t n,
                                                 Rng& rng);

struct SuiteLine {
  std::string text;
  bool passed = false;
};

/// Named verification suites run by the CLI: bounds, structure, lipschitz,
/// worstcase. `seeds` scales the number of random instances.
std::vector<SuiteLine> run_suite(std::string_view suite, std::size_t seeds);

}  // namespace greedi

#endif  // GREEDI_VERIFY_HPP
