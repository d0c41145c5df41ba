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

// Single-machine solvers. Every engine breaks gain ties toward the smallest
// element id, which makes standard and lazy greedy interchangeable.

#ifndef GREEDI_ENGINES_HPP
#define GREEDI_ENGINES_HPP

#include <memory>
#include <string>
#include <string_view>

#include "greedi/constraints.hpp"
#include "greedi/core.hpp"
#include "greedi/rng.hpp"

namespace greedi {

/// Approximation factors of the black-box solvers, by constraint class.
namespace tau {
inline constexpr double kGreedyCardinality = 0.63212055882855767;  // 1 - 1/e
inline constexpr double kGreedyMatroid = 0.5;
inline constexpr double kCostBenefitKnapsack = 0.39346934028736658;  // 1 - 1/sqrt(e)
inline constexpr double kRandomGreedyNonMonotone = 0.36787944117144233;  // 1/e
/// Greedy over a p-system or an intersection of p matroids.
inline double greedy_p_system(std::size_t p) { return 1.0 / static_cast<double>(p + 1); }
}  // namespace tau

/// Picks the feasible element of largest marginal gain until `budget`
/// elements are chosen or no feasible candidate is left. Monotone objectives
/// keep filling through zero gains; other objectives stop once every
/// candidate has negative gain. Returns f(empty) on an empty ground set.
/// Throws PreconditionError if budget exceeds constraint->rho().
Solution greedy(const Objective& f, ElementSpan ground, std::size_t budget,
                const Constraint* constraint = nullptr);

/// Same output as greedy() using stale gains as upper bounds; never uses
/// more oracle calls. Requires f submodular.
Solution lazy_greedy(const Objective& f, ElementSpan ground, std::size_t budget,
                     const Constraint* constraint = nullptr);

/// Greedy until no candidate can be added without violating `constraint`.
Solution constrained_greedy(const Objective& f, const Constraint& constraint,
                            ElementSpan ground);

/// Better of plain gain-greedy and cost-benefit greedy under a knapsack.
Solution cost_benefit_greedy(const Objective& f, const KnapsackConstraint& knapsack,
                             ElementSpan ground);

/// k rounds; each round draws uniformly from the k best positive-gain
/// candidates, padded with zero-gain dummies that add nothing.
Solution random_greedy(const Objective& f, ElementSpan ground, std::size_t k,
                       Rng& rng, const Constraint* constraint = nullptr);

enum class EngineKind { kGreedy, kLazy, kCostBenefit, kRandomGreedy, kConstrained };

EngineKind parse_engine_kind(std::string_view name);
std::string_view to_string(EngineKind kind);

// Black-box solver slot: any conforming algorithm with a declared tau.
class Engine {
 public:
  virtual ~Engine() = default;
  virtual EngineKind kind() const = 0;
  virtual Solution solve(const Objective& f, const Constraint& constraint,
                         ElementSpan ground, Rng& rng) const = 0;
  /// Approximation factor under `constraint`; throws PreconditionError when
  /// the engine carries no guarantee for that constraint class.
  virtual double tau(const Constraint& constraint) const = 0;
};

std::unique_ptr<Engine> make_engine(EngineKind kind);

}  // namespace greedi

#endif  // GREEDI_ENGINES_HPP
