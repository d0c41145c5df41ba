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

#include "greedi/engines.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace greedi {
namespace {

// Strictly better in the (gain desc, id asc) order.
bool ranks_above(double gain, ElementId e, double other_gain, ElementId other) {
  return gain > other_gain || (gain == other_gain && e < other);
}

void check_budget(std::size_t budget, const Constraint* constraint) {
  if (constraint != nullptr && budget > constraint->rho()) {
    throw PreconditionError("greedy budget " + std::to_string(budget) +
                            " exceeds the constraint bound " +
                            std::to_string(constraint->rho()));
  }
}

bool admissible(const GainState& state, const Constraint* constraint, ElementId e) {
  if (state.contains(e)) return false;
  return constraint == nullptr || constraint->can_extend(state.selected(), e);
}

void compact(const GainState& state, const Constraint* constraint,
             std::vector<ElementId>& ids) {
  std::erase_if(ids, [&](ElementId e) { return !admissible(state, constraint, e); });
}

constexpr std::size_t kSweepBatch = 64;

void all_gains(GainState& state, ElementSpan ids, std::vector<double>& out) {
  out.resize(ids.size());
  for (std::size_t i = 0; i < ids.size(); i += kSweepBatch) {
    const std::size_t len = std::min(kSweepBatch, ids.size() - i);
    state.gains(ids.subspan(i, len), std::span<double>(out).subspan(i, len));
  }
}

Solution finish(const GainState& state, std::string provenance) {
  Solution out;
  out.elements = state.selected();
  out.value = state.value();
  out.oracle_calls = state.calls();
  out.provenance = std::move(provenance);
  return out;
}

}  // namespace

Solution greedy(const Objective& f, ElementSpan ground, std::size_t budget,
                const Constraint* constraint) {
  check_budget(budget, constraint);
  auto state = f.start();
  std::vector<ElementId> remaining(ground.begin(), ground.end());
  std::vector<double> gains;
  while (state->selected().size() < budget) {
    // Hereditary constraints never re-admit a rejected element, so
    // rejected and selected ids are compacted away before each sweep.
    compact(*state, constraint, remaining);
    if (remaining.empty()) break;
    all_gains(*state, remaining, gains);
    std::size_t best = 0;
    for (std::size_t i = 1; i < remaining.size(); ++i) {
      if (ranks_above(gains[i], remaining[i], gains[best], remaining[best])) best = i;
    }
    if (!f.monotone() && gains[best] < 0.0) break;
    state->add(remaining[best]);
  }
  return finish(*state, "greedy");
}

namespace {

struct LazyQueueEntry {
  ElementId element;
  double cached_gain;
  std::size_t stamp;  // round in which cached_gain was computed
};

struct LowerPriority {
  bool operator()(const LazyQueueEntry& a, const LazyQueueEntry& b) const {
    return ranks_above(b.cached_gain, b.element, a.cached_gain, a.element);
  }
};

}  // namespace

Solution lazy_greedy(const Objective& f, ElementSpan ground, std::size_t budget,
                     const Constraint* constraint) {
  check_budget(budget, constraint);
  auto state = f.start();
  std::priority_queue<LazyQueueEntry, std::vector<LazyQueueEntry>, LowerPriority> queue;
  if (budget > 0) {
    std::vector<ElementId> ids(ground.begin(), ground.end());
    compact(*state, constraint, ids);
    std::vector<double> gains;
    all_gains(*state, ids, gains);
    for (std::size_t i = 0; i < ids.size(); ++i) queue.push({ids[i], gains[i], 0});
  }
  // Each round refreshes the top entry alone, then doubles the batch of
  // stale entries refreshed together up to kRefreshBatch. An entry is
  // refreshed at most once per round, so the call count never exceeds plain
  // greedy.
  constexpr std::size_t kRefreshBatch = 8;
  constexpr double kTieWindow = 1e-12;
  std::size_t batch = 1;
  std::vector<LazyQueueEntry> stale;
  std::vector<ElementId> ids;
  std::vector<double> gains(kRefreshBatch);
  std::vector<LazyQueueEntry> near;
  std::size_t round = 0;
  while (state->selected().size() < budget && !queue.empty()) {
    const LazyQueueEntry top = queue.top();
    if (!admissible(*state, constraint, top.element)) {
      queue.pop();
      continue;
    }
    stale.clear();
    ids.clear();
    if (top.stamp == round) {
      // Rounding can lift a fresh gain a few ulps above the stale bound of a
      // smaller id that plain greedy would pick on the tie; refresh those.
      queue.pop();
      const double floor = top.cached_gain - kTieWindow * std::max(1.0, std::abs(top.cached_gain));
      near.clear();
      while (!queue.empty() && queue.top().cached_gain >= floor) {
        const LazyQueueEntry next = queue.top();
        queue.pop();
        if (next.stamp == round || next.element > top.element ||
            !admissible(*state, constraint, next.element)) {
          near.push_back(next);
        } else {
          stale.push_back(next);
          ids.push_back(next.element);
        }
      }
      for (const LazyQueueEntry& e : near) queue.push(e);
      if (stale.empty()) {
        if (!f.monotone() && top.cached_gain < 0.0) break;
        state->add(top.element);
        ++round;
        batch = 1;
        continue;
      }
      queue.push(top);
      if (gains.size() < ids.size()) gains.resize(ids.size());
      state->gains(ids, std::span<double>(gains).first(ids.size()));
      for (std::size_t i = 0; i < stale.size(); ++i) {
        queue.push({stale[i].element, gains[i], round});
      }
      continue;
    }
    while (!queue.empty() && stale.size() < batch) {
      const LazyQueueEntry next = queue.top();
      if (next.stamp == round) break;
      queue.pop();
      if (!admissible(*state, constraint, next.element)) continue;
      stale.push_back(next);
      ids.push_back(next.element);
    }
    state->gains(ids, std::span<double>(gains).first(ids.size()));
    for (std::size_t i = 0; i < stale.size(); ++i) {
      queue.push({stale[i].element, gains[i], round});
    }
    batch = std::min(2 * batch, kRefreshBatch);
  }
  return finish(*state, "lazy_greedy");
}

Solution constrained_greedy(const Objective& f, const Constraint& constraint,
                            ElementSpan ground) {
  const std::size_t budget = std::min(constraint.rho(), ground.size());
  Solution out = greedy(f, ground, budget, &constraint);
  out.provenance = "constrained_greedy";
  return out;
}

Solution cost_benefit_greedy(const Objective& f, const KnapsackConstraint& knapsack,
                             ElementSpan ground) {
  Solution by_gain = constrained_greedy(f, knapsack, ground);

  auto state = f.start();
  std::vector<ElementId> remaining(ground.begin(), ground.end());
  std::vector<double> gains;
  while (true) {
    compact(*state, &knapsack, remaining);
    if (remaining.empty()) break;
    all_gains(*state, remaining, gains);
    std::size_t best = 0;
    double best_ratio = gains[0] / knapsack.scalar_cost(remaining[0]);
    for (std::size_t i = 1; i < remaining.size(); ++i) {
      const double ratio = gains[i] / knapsack.scalar_cost(remaining[i]);
      if (ranks_above(ratio, remaining[i], best_ratio, remaining[best])) {
        best = i;
        best_ratio = ratio;
      }
    }
    if (!f.monotone() && gains[best] < 0.0) break;
    state->add(remaining[best]);
  }
  Solution by_ratio = finish(*state, "cost_benefit");

  const std::uint64_t calls = by_gain.oracle_calls + by_ratio.oracle_calls;
  Solution out = by_ratio.value > by_gain.value ? std::move(by_ratio) : std::move(by_gain);
  out.oracle_calls = calls;
  out.provenance = "cost_benefit";
  return out;
}

Solution random_greedy(const Objective& f, ElementSpan ground, std::size_t k,
                       Rng& rng, const Constraint* constraint) {
  auto state = f.start();
  std::vector<ElementId> remaining(ground.begin(), ground.end());
  std::vector<double> gains;
  std::vector<std::pair<double, ElementId>> positive;
  for (std::size_t round = 0; round < k; ++round) {
    compact(*state, constraint, remaining);
    all_gains(*state, remaining, gains);
    positive.clear();
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      if (gains[i] > 0.0) positive.emplace_back(gains[i], remaining[i]);
    }
    const std::size_t top = std::min(k, positive.size());
    std::partial_sort(positive.begin(), positive.begin() + static_cast<std::ptrdiff_t>(top),
                      positive.end(), [](const auto& a, const auto& b) {
                        return ranks_above(a.first, a.second, b.first, b.second);
                      });
    // Slots top..k-1 hold dummies; drawing one adds nothing this round.
    const std::size_t pick = rng.uniform_index(k);
    if (pick < top) state->add(positive[pick].second);
  }
  return finish(*state, "random_greedy");
}

EngineKind parse_engine_kind(std::string_view name) {
  if (name == "greedy") return EngineKind::kGreedy;
  if (name == "lazy") return EngineKind::kLazy;
  if (name == "costbenefit") return EngineKind::kCostBenefit;
  if (name == "randomgreedy") return EngineKind::kRandomGreedy;
  if (name == "constrained") return EngineKind::kConstrained;
  throw PreconditionError("unknown engine '" + std::string(name) +
                          "' (expected greedy|lazy|costbenefit|randomgreedy|constrained)");
}

std::string_view to_string(EngineKind kind) {
  switch (kind) {
    case EngineKind::kGreedy: return "greedy";
    case EngineKind::kLazy: return "lazy";
    case EngineKind::kCostBenefit: return "costbenefit";
    case EngineKind::kRandomGreedy: return "randomgreedy";
    case EngineKind::kConstrained: return "constrained";
  }
  return "unknown";
}

namespace {

double greedy_tau(const Constraint& c) {
  switch (c.kind()) {
    case ConstraintKind::kCardinality: return tau::kGreedyCardinality;
    case ConstraintKind::kMatroid: return tau::kGreedyMatroid;
    case ConstraintKind::kIntersection:
    case ConstraintKind::kPSystem: return tau::greedy_p_system(c.p());
    case ConstraintKind::kKnapsack: break;
  }
  throw PreconditionError("plain greedy has no guarantee under " + c.describe());
}

class GreedyEngine final : public Engine {
 public:
  explicit GreedyEngine(EngineKind kind) : kind_(kind) {}

  EngineKind kind() const override { return kind_; }

  Solution solve(const Objective& f, const Constraint& c, ElementSpan ground,
                 Rng&) const override {
    const std::size_t budget = std::min(c.rho(), ground.size());
    Solution out = kind_ == EngineKind::kLazy ? lazy_greedy(f, ground, budget, &c)
                                              : greedy(f, ground, budget, &c);
    out.provenance = std::string(to_string(kind_));
    return out;
  }

  double tau(const Constraint& c) const override { return greedy_tau(c); }

 private:
  EngineKind kind_;
};

class CostBenefitEngine final : public Engine {
 public:
  EngineKind kind() const override { return EngineKind::kCostBenefit; }

  Solution solve(const Objective& f, const Constraint& c, ElementSpan ground,
                 Rng&) const override {
    if (const auto* knapsack = dynamic_cast<const KnapsackConstraint*>(&c)) {
      return cost_benefit_greedy(f, *knapsack, ground);
    }
    if (c.kind() == ConstraintKind::kCardinality) {
      const KnapsackConstraint unit(std::vector<double>(f.size(), 1.0),
                                    static_cast<double>(c.rho()));
      return cost_benefit_greedy(f, unit, ground);
    }
    throw PreconditionError("cost-benefit greedy needs a knapsack constraint");
  }

  double tau(const Constraint& c) const override {
    if (c.kind() == ConstraintKind::kKnapsack ||
        c.kind() == ConstraintKind::kCardinality) {
      return tau::kCostBenefitKnapsack;
    }
    throw PreconditionError("cost-benefit greedy has no guarantee under " +
                            c.describe());
  }
};

class RandomGreedyEngine final : public Engine {
 public:
  EngineKind kind() const override { return EngineKind::kRandomGreedy; }

  Solution solve(const Objective& f, const Constraint& c, ElementSpan ground,
                 Rng& rng) const override {
    return random_greedy(f, ground, c.rho(), rng, &c);
  }

  double tau(const Constraint& c) const override {
    if (c.kind() == ConstraintKind::kCardinality) return tau::kRandomGreedyNonMonotone;
    throw PreconditionError("random greedy has no guarantee under " + c.describe());
  }
};

}  // namespace

std::unique_ptr<Engine> make_engine(EngineKind kind) {
  switch (kind) {
    case EngineKind::kGreedy:
    case EngineKind::kLazy:
    case EngineKind::kConstrained: return std::make_unique<GreedyEngine>(kind);
    case EngineKind::kCostBenefit: return std::make_unique<CostBenefitEngine>();
    case EngineKind::kRandomGreedy: return std::make_unique<RandomGreedyEngine>();
  }
  throw PreconditionError("unknown engine kind");
}

}  // namespace greedi
