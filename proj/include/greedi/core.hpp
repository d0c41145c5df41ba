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

// Ground sets, the set-function oracle interface, incremental gain states
// and exhaustive structural checks for small ground sets.

#ifndef GREEDI_CORE_HPP
#define GREEDI_CORE_HPP

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace greedi {

using ElementId = std::uint32_t;
using ElementSpan = std::span<const ElementId>;

/// Absolute tolerance for comparing objective values.
inline constexpr double kValueTolerance = 1e-9;

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PayloadKind { kVectors, kGraph, kSetSystem, kAbstract };

class GroundSet {
 public:
  GroundSet(std::size_t n, PayloadKind kind);

  std::size_t size() const { return n_; }
  PayloadKind kind() const { return kind_; }
  std::vector<ElementId> elements() const;

 private:
  std::size_t n_;
  PayloadKind kind_;
};

/// ids 0..n-1.
std::vector<ElementId> iota_ids(std::size_t n);

// Insertion-ordered set of ids with bitset membership.
class ElementSet {
 public:
  explicit ElementSet(std::size_t universe);

  bool contains(ElementId e) const {
    return e < universe_ && ((bits_[e >> 6] >> (e & 63)) & 1U) != 0;
  }
  /// Returns false if `e` was already present.
  bool insert(ElementId e);

  std::size_t size() const { return order_.size(); }
  bool empty() const { return order_.empty(); }
  std::size_t universe() const { return universe_; }
  const std::vector<ElementId>& ordered() const { return order_; }
  std::vector<ElementId> sorted() const;

 private:
  std::size_t universe_;
  std::vector<std::uint64_t> bits_;
  std::vector<ElementId> order_;
};

struct Solution {
  std::vector<ElementId> elements;  // in selection order
  double value = 0.0;
  std::uint64_t oracle_calls = 0;
  std::string provenance;
};

class GainState;

// A set function f: 2^V -> R over ids 0..size()-1.
//
// Instances are immutable after construction and may be evaluated from many
// threads at once. Every evaluation is charged to an atomic counter.
class Objective {
 public:
  explicit Objective(std::size_t n);
  virtual ~Objective() = default;
  Objective(const Objective&) = delete;
  Objective& operator=(const Objective&) = delete;

  std::size_t size() const { return n_; }

  /// f(S). Ids may appear in any order; duplicates are not allowed.
  double eval(ElementSpan s) const;

  virtual bool monotone() const = 0;
  virtual bool nonnegative() const = 0;
  virtual std::string name() const = 0;

  /// Gain state positioned at the empty set. The default re-evaluates f from
  /// scratch for every query; concrete objectives override with caches.
  virtual std::unique_ptr<GainState> start() const;

  /// The objective a machine holding only `block` can evaluate, or nullptr
  /// when the objective has no machine-local form.
  virtual std::shared_ptr<const Objective> localized(ElementSpan block) const;

  std::uint64_t oracle_calls() const { return calls_.load(); }
  void charge(std::uint64_t calls) const { calls_.fetch_add(calls); }

 protected:
  virtual double evaluate(ElementSpan s) const = 0;

 private:
  friend class GainState;
  std::size_t n_;
  mutable std::atomic<std::uint64_t> calls_{0};
};

// Mutable cursor used by the greedy engines: holds the current set S and
// answers f(S + e) - f(S). One instance belongs to one engine run.
class GainState {
 public:
  virtual ~GainState() = default;

  double value() const { return value_; }
  const std::vector<ElementId>& selected() const { return selected_.ordered(); }
  bool contains(ElementId e) const { return selected_.contains(e); }
  /// Oracle evaluations performed through this state.
  std::uint64_t calls() const { return calls_; }
  const Objective& objective() const { return objective_; }

  /// f(S + e) - f(S); counts one oracle call.
  double gain(ElementId e);
  /// gain() of every id in `es`, written to `out`; counts |es| oracle calls.
  /// Each result equals what gain() returns for that id.
  void gains(ElementSpan es, std::span<double> out);
  void add(ElementId e);

 protected:
  explicit GainState(const Objective& f);

  virtual double marginal(ElementId e) = 0;
  /// Batched marginal(); the default evaluates one id at a time.
  virtual void marginals(ElementSpan es, std::span<double> out);
  /// Updates caches for the newly inserted `e` and sets value_.
  virtual void accept(ElementId e) = 0;

  void count_evaluation();
  static double raw_eval(const Objective& f, ElementSpan s) {
    return f.evaluate(s);
  }

  double value_ = 0.0;

 private:
  const Objective& objective_;
  ElementSet selected_;
  std::uint64_t calls_ = 0;
};

/// f(S + e) - f(S) by two evaluations. Throws PreconditionError if e is in S.
double marginal_gain(const Objective& f, ElementSpan s, ElementId e);

/// Evaluates f on `s` and packages the result.
Solution make_solution(const Objective& f, std::vector<ElementId> elements,
                       std::string provenance, std::uint64_t oracle_calls = 0);

inline constexpr std::size_t kMaxExhaustiveSize = 12;

struct StructureWitness {
  std::vector<ElementId> a;
  std::vector<ElementId> b;
  std::optional<ElementId> e;  // absent for monotonicity witnesses
};

struct StructureReport {
  bool holds = true;
  std::optional<StructureWitness> witness;
};

/// Exhaustive check of gain(A, e) >= gain(B, e) - 1e-9 for every A ⊆ B,
/// e ∉ B. Requires f.size() <= 12.
StructureReport verify_submodular(const Objective& f);

/// Exhaustive check of f(A) <= f(B) + 1e-9 for every A ⊆ B.
StructureReport verify_monotone(const Objective& f);

std::string format_ids(ElementSpan ids);
std::string format_value(double v);

}  // namespace greedi

#endif  // GREEDI_CORE_HPP
