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

#include "greedi/constraints.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "greedi/rng.hpp"

namespace greedi {

bool Constraint::can_extend(ElementSpan s, ElementId e) const {
  std::vector<ElementId> with(s.begin(), s.end());
  with.push_back(e);
  return is_feasible(with);
}

CardinalityConstraint::CardinalityConstraint(std::size_t k) : k_(k) {
  if (k < 1) throw PreconditionError("cardinality constraint needs k >= 1");
}

std::string CardinalityConstraint::describe() const {
  return "cardinality:" + std::to_string(k_);
}

PartitionMatroid::PartitionMatroid(std::vector<std::size_t> block_of,
                                   std::vector<std::size_t> capacities)
    : block_of_(std::move(block_of)), capacities_(std::move(capacities)) {
  std::vector<std::size_t> block_sizes(capacities_.size(), 0);
  for (std::size_t b : block_of_) {
    if (b >= capacities_.size()) {
      throw PreconditionError("partition matroid: block index out of range");
    }
    ++block_sizes[b];
  }
  for (std::size_t b = 0; b < capacities_.size(); ++b) {
    rank_ += std::min(capacities_[b], block_sizes[b]);
  }
}

bool PartitionMatroid::is_feasible(ElementSpan s) const {
  std::vector<std::size_t> used(capacities_.size(), 0);
  for (ElementId e : s) {
    const std::size_t b = block_of_.at(e);
    if (++used[b] > capacities_[b]) return false;
  }
  return true;
}

bool PartitionMatroid::can_extend(ElementSpan s, ElementId e) const {
  const std::size_t b = block_of_.at(e);
  std::size_t used = 0;
  for (ElementId x : s) used += block_of_[x] == b ? 1 : 0;
  return used < capacities_[b];
}

std::string PartitionMatroid::describe() const {
  return "partition_matroid:blocks=" + std::to_string(capacities_.size()) +
         ",rank=" + std::to_string(rank_);
}

namespace {

std::vector<ElementId> from_mask(std::uint32_t mask) {
  std::vector<ElementId> ids;
  for (ElementId i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1U) ids.push_back(i);
  }
  return ids;
}

void check_matroid_exhaustive(std::size_t n, const IndependenceOracle& oracle) {
  const std::uint32_t count = 1U << n;
  std::vector<char> independent(count);
  for (std::uint32_t m = 0; m < count; ++m) independent[m] = oracle(from_mask(m));
  if (!independent[0]) throw PreconditionError("matroid: empty set is dependent");
  for (std::uint32_t m = 0; m < count; ++m) {
    if (!independent[m]) continue;
    for (std::size_t e = 0; e < n; ++e) {
      const std::uint32_t bit = 1U << e;
      if ((m & bit) && !independent[m & ~bit]) {
        throw PreconditionError("matroid oracle violates heredity");
      }
    }
  }
  for (std::uint32_t a = 0; a < count; ++a) {
    if (!independent[a]) continue;
    for (std::uint32_t b = 0; b < count; ++b) {
      if (!independent[b] || std::popcount(b) <= std::popcount(a)) continue;
      bool augments = false;
      for (std::size_t e = 0; e < n && !augments; ++e) {
        const std::uint32_t bit = 1U << e;
        augments = (b & bit) && !(a & bit) && independent[a | bit];
      }
      if (!augments) throw PreconditionError("matroid oracle violates augmentation");
    }
  }
}

void spot_check_heredity(std::size_t n, const IndependenceOracle& oracle) {
  Rng rng(0x5eed);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<ElementId> order = iota_ids(n);
    rng.shuffle(order);
    std::vector<ElementId> chain;
    for (ElementId e : order) {
      chain.push_back(e);
      if (!oracle(chain)) chain.pop_back();
    }
    for (ElementId e : chain) {
      if (!oracle(ElementSpan(&e, 1))) {
        throw PreconditionError("matroid oracle violates heredity");
      }
    }
    for (std::size_t drop = 0; drop < chain.size(); ++drop) {
      std::vector<ElementId> sub = chain;
      sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
      if (!oracle(sub)) throw PreconditionError("matroid oracle violates heredity");
    }
  }
}

}  // namespace

OracleMatroid::OracleMatroid(std::size_t n, IndependenceOracle oracle,
                             std::string name)
    : n_(n), oracle_(std::move(oracle)), name_(std::move(name)) {
  if (n_ <= 10) {
    check_matroid_exhaustive(n_, oracle_);
  } else {
    spot_check_heredity(n_, oracle_);
  }
  std::vector<ElementId> basis;
  for (ElementId e = 0; e < n_; ++e) {
    basis.push_back(e);
    if (!oracle_(basis)) basis.pop_back();
  }
  rank_ = basis.size();
}

IntersectionConstraint::IntersectionConstraint(
    std::vector<std::shared_ptr<const Constraint>> members)
    : members_(std::move(members)) {
  if (members_.empty()) {
    throw PreconditionError("intersection of an empty constraint list");
  }
  rho_ = std::numeric_limits<std::size_t>::max();
  for (const auto& c : members_) {
    rho_ = std::min(rho_, c->rho());
    p_ += c->p();
  }
}

bool IntersectionConstraint::is_feasible(ElementSpan s) const {
  return std::all_of(members_.begin(), members_.end(),
                     [&](const auto& c) { return c->is_feasible(s); });
}

bool IntersectionConstraint::can_extend(ElementSpan s, ElementId e) const {
  return std::all_of(members_.begin(), members_.end(),
                     [&](const auto& c) { return c->can_extend(s, e); });
}

std::string IntersectionConstraint::describe() const {
  std::string out = "intersection(";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) out += ';';
    out += members_[i]->describe();
  }
  return out + ")";
}

PSystemConstraint::PSystemConstraint(IndependenceOracle oracle, std::size_t p,
                                     std::size_t rho)
    : oracle_(std::move(oracle)), p_(p), rho_(rho) {
  if (p_ < 1 || rho_ < 1) throw PreconditionError("p-system needs p >= 1, rho >= 1");
}

std::string PSystemConstraint::describe() const {
  return "p_system:p=" + std::to_string(p_) + ",rho=" + std::to_string(rho_);
}

KnapsackConstraint::KnapsackConstraint(Eigen::MatrixXd costs, Eigen::VectorXd budget)
    : costs_(std::move(costs)), budget_(std::move(budget)) {
  if (costs_.cols() != budget_.size() || budget_.size() == 0) {
    throw PreconditionError("knapsack: cost dimension must match the budget");
  }
  if (costs_.rows() == 0) throw PreconditionError("knapsack: no elements");
  if (!costs_.allFinite() || (costs_.array() <= 0.0).any()) {
    throw PreconditionError("knapsack: every cost must be strictly positive");
  }
  if (!budget_.allFinite() || (budget_.array() < 0.0).any()) {
    throw PreconditionError("knapsack: budget must be finite and nonnegative");
  }
  rho_ = std::numeric_limits<std::size_t>::max();
  for (Eigen::Index j = 0; j < budget_.size(); ++j) {
    const double bound = std::ceil(budget_(j) / costs_.col(j).minCoeff());
    rho_ = std::min(rho_, static_cast<std::size_t>(bound));
  }
}

KnapsackConstraint::KnapsackConstraint(const std::vector<double>& costs,
                                       double budget)
    : KnapsackConstraint(
          Eigen::Map<const Eigen::VectorXd>(costs.data(),
                                            static_cast<Eigen::Index>(costs.size())),
          Eigen::VectorXd::Constant(1, budget)) {}

bool KnapsackConstraint::is_feasible(ElementSpan s) const {
  Eigen::VectorXd total = Eigen::VectorXd::Zero(budget_.size());
  for (ElementId e : s) total += costs_.row(e).transpose();
  return (total.array() <= budget_.array()).all();
}

double KnapsackConstraint::scalar_cost(ElementId e) const {
  double total = 0.0;
  for (Eigen::Index j = 0; j < budget_.size(); ++j) {
    total += costs_(e, j) / budget_(j);
  }
  return total;
}

bool KnapsackConstraint::affordable(ElementId e) const {
  return (costs_.row(e).transpose().array() <= budget_.array()).all();
}

std::string KnapsackConstraint::describe() const {
  return "knapsack:dims=" + std::to_string(budget_.size()) +
         ",rho=" + std::to_string(rho_);
}

}  // namespace greedi
