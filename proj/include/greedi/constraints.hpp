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

#ifndef GREEDI_CONSTRAINTS_HPP
#define GREEDI_CONSTRAINTS_HPP

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "greedi/core.hpp"

namespace greedi {

enum class ConstraintKind {
  kCardinality,
  kMatroid,
  kIntersection,
  kPSystem,
  kKnapsack,
};

// Feasibility oracle over subsets of V. All shipped classes are hereditary.
class Constraint {
 public:
  virtual ~Constraint() = default;

  virtual bool is_feasible(ElementSpan s) const = 0;
  /// is_feasible(S + e), assuming S itself is feasible.
  virtual bool can_extend(ElementSpan s, ElementId e) const;
  /// Upper bound on the size of any feasible set.
  virtual std::size_t rho() const = 0;
  virtual ConstraintKind kind() const = 0;
  /// Number of matroids for intersections, declared p for p-systems.
  virtual std::size_t p() const { return 1; }
  virtual std::string describe() const = 0;
};

class CardinalityConstraint final : public Constraint {
 public:
  explicit CardinalityConstraint(std::size_t k);

  bool is_feasible(ElementSpan s) const override { return s.size() <= k_; }
  bool can_extend(ElementSpan s, ElementId) const override {
    return s.size() < k_;
  }
  std::size_t rho() const override { return k_; }
  ConstraintKind kind() const override { return ConstraintKind::kCardinality; }
  std::string describe() const override;

 private:
  std::size_t k_;
};

// Elements are split into blocks; at most capacity[b] picks from block b.
class PartitionMatroid final : public Constraint {
 public:
  PartitionMatroid(std::vector<std::size_t> block_of,
                   std::vector<std::size_t> capacities);

  bool is_feasible(ElementSpan s) const override;
  bool can_extend(ElementSpan s, ElementId e) const override;
  /// Sum over blocks of min(capacity, block size).
  std::size_t rho() const override { return rank_; }
  ConstraintKind kind() const override { return ConstraintKind::kMatroid; }
  std::string describe() const override;

 private:
  std::vector<std::size_t> block_of_;
  std::vector<std::size_t> capacities_;
  std::size_t rank_ = 0;
};

using IndependenceOracle = std::function<bool(ElementSpan)>;

// Matroid given by an independence oracle. Small instances (n <= 10) are
// checked exhaustively for heredity and augmentation at construction; larger
// ones are spot-checked along random greedy chains.
class OracleMatroid final : public Constraint {
 public:
  OracleMatroid(std::size_t n, IndependenceOracle oracle,
                std::string name = "matroid");

  bool is_feasible(ElementSpan s) const override { return oracle_(s); }
  /// Size of a greedily grown maximal independent set, which for a matroid
  /// is its rank.
  std::size_t rho() const override { return rank_; }
  ConstraintKind kind() const override { return ConstraintKind::kMatroid; }
  std::string describe() const override { return name_; }

 private:
  std::size_t n_;
  IndependenceOracle oracle_;
  std::string name_;
  std::size_t rank_ = 0;
};

// S is feasible iff it is feasible for every member.
class IntersectionConstraint final : public Constraint {
 public:
  explicit IntersectionConstraint(
      std::vector<std::shared_ptr<const Constraint>> members);

  bool is_feasible(ElementSpan s) const override;
  bool can_extend(ElementSpan s, ElementId e) const override;
  /// Minimum of the members' bounds; still an upper bound, not always tight.
  std::size_t rho() const override { return rho_; }
  ConstraintKind kind() const override { return ConstraintKind::kIntersection; }
  /// Sum of the members' p (the number of matroids for matroid members).
  std::size_t p() const override { return p_; }
  std::string describe() const override;

 private:
  std::vector<std::shared_ptr<const Constraint>> members_;
  std::size_t rho_ = 0;
  std::size_t p_ = 0;
};

// Abstract p-system: independence oracle plus caller-declared p and rho.
class PSystemConstraint final : public Constraint {
 public:
  PSystemConstraint(IndependenceOracle oracle, std::size_t p, std::size_t rho);

  bool is_feasible(ElementSpan s) const override { return oracle_(s); }
  std::size_t rho() const override { return rho_; }
  ConstraintKind kind() const override { return ConstraintKind::kPSystem; }
  std::size_t p() const override { return p_; }
  std::string describe() const override;

 private:
  IndependenceOracle oracle_;
  std::size_t p_;
  std::size_t rho_;
};

// sum_{v in S} c(v) <= budget, componentwise over d cost dimensions.
// costs is n x d with strictly positive entries.
class KnapsackConstraint final : public Constraint {
 public:
  KnapsackConstraint(Eigen::MatrixXd costs, Eigen::VectorXd budget);
  /// Single-dimension convenience.
  KnapsackConstraint(const std::vector<double>& costs, double budget);

  bool is_feasible(ElementSpan s) const override;
  /// ceil(budget / min cost), minimized over dimensions.
  std::size_t rho() const override { return rho_; }
  ConstraintKind kind() const override { return ConstraintKind::kKnapsack; }
  std::string describe() const override;

  const Eigen::MatrixXd& costs() const { return costs_; }
  const Eigen::VectorXd& budget() const { return budget_; }
  /// Sum over dimensions of c_j(e) / budget_j.
  double scalar_cost(ElementId e) const;
  /// Whether e alone fits the budget.
  bool affordable(ElementId e) const;

 private:
  Eigen::MatrixXd costs_;
  Eigen::VectorXd budget_;
  std::size_t rho_ = 0;
};

}  // namespace greedi

#endif  // GREEDI_CONSTRAINTS_HPP
