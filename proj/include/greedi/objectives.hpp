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

#ifndef GREEDI_OBJECTIVES_HPP
#define GREEDI_OBJECTIVES_HPP

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "greedi/core.hpp"
#include "greedi/rng.hpp"

namespace greedi {

// Points stored one per row.
struct VectorDataset {
  Eigen::MatrixXd points;

  std::size_t size() const { return static_cast<std::size_t>(points.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(points.cols()); }

  /// Throws PreconditionError on an empty matrix or a non-finite entry.
  void validate() const;
  /// Subtracts the column mean, then scales every row to unit norm. A row
  /// that is zero after centering cannot be scaled and raises.
  void normalize();
};

double squared_distance(const VectorDataset& data, ElementId a, ElementId b);
double euclidean_distance(const VectorDataset& data, ElementId a, ElementId b);
/// Largest pairwise Euclidean distance.
double diameter(const VectorDataset& data);

// K(x, y) = exp(-|x - y|^2 / h^2) with observation noise sigma.
struct SEKernel {
  double bandwidth = 1.0;
  double noise = 1.0;

  SEKernel() = default;
  SEKernel(double h, double sigma);

  template <typename A, typename B>
  double operator()(const A& x, const B& y) const {
    return std::exp(-(x - y).squaredNorm() / (bandwidth * bandwidth));
  }

  /// sup |dK/dr| = sqrt(2) / (h sqrt(e)), attained at r = h / sqrt(2).
  double lipschitz_constant() const;
};

// Exemplar-clustering utility with a phantom exemplar e0:
//   f(S) = scale * (L({e0}) - L(S + e0)),
//   L(S) = mean over evaluation points v of min_{e in S} l(e, v),
// with l = d^alpha and l(v, e0) = phantom_cost for every v.
//
// The evaluation points default to the whole dataset; restricted_to() gives
// the machine-local view used by the decomposable mode. Greedy states cache
// each evaluation point's current minimum, so a gain query is O(|points|).
class ExemplarObjective final : public Objective {
 public:
  struct Options {
    double alpha_exp = 2.0;
    /// Defaults to 1.01 * max pairwise dissimilarity.
    std::optional<double> phantom_cost;
  };

  explicit ExemplarObjective(std::shared_ptr<const VectorDataset> data)
      : ExemplarObjective(std::move(data), Options{}) {}
  ExemplarObjective(std::shared_ptr<const VectorDataset> data, Options options);

  /// Same candidates and phantom, evaluated over `points` only and
  /// multiplied by `scale`.
  std::shared_ptr<const ExemplarObjective> restricted_to(
      std::vector<ElementId> points, double scale) const;

  bool monotone() const override { return true; }
  bool nonnegative() const override { return true; }
  std::string name() const override { return "exemplar"; }
  std::unique_ptr<GainState> start() const override;

  double alpha_exp() const { return alpha_; }
  double phantom_cost() const { return phantom_; }
  double scale() const { return scale_; }
  const VectorDataset& data() const { return *data_; }
  const std::vector<ElementId>& evaluation_points() const { return points_; }

  double dissimilarity(ElementId a, ElementId b) const;
  /// l(e, v) for every evaluation point v.
  Eigen::ArrayXd dissimilarities(ElementId e) const;
  /// l(e, v) for evaluation points first .. first + out.size() - 1.
  void dissimilarity_block(ElementId e, Eigen::Index first,
                           Eigen::Ref<Eigen::ArrayXd> out) const;
  /// out[i] = sum over evaluation points v of max(0, best(v) - l(c_i, v)).
  /// Each entry is independent of the other candidates in the batch.
  void improvements(const Eigen::ArrayXd& best, ElementSpan candidates,
                    std::span<double> out) const;
  /// L(S + e0) over the evaluation points.
  double loss_with_phantom(ElementSpan s) const;

 protected:
  double evaluate(ElementSpan s) const override;

 private:
  ExemplarObjective(std::shared_ptr<const VectorDataset> data, double alpha,
                    double phantom, std::vector<ElementId> points, double scale);

  std::shared_ptr<const VectorDataset> data_;
  double alpha_;
  double phantom_;
  std::vector<ElementId> points_;
  Eigen::MatrixXd point_coords_;  // gathered evaluation points, one per row
  Eigen::ArrayXd point_norms_;    // squared norm of each row of point_coords_
  double scale_;
};

/// Largest l(a, b) = d(a, b)^alpha over all pairs.
double max_dissimilarity(const VectorDataset& data, double alpha_exp);

/// Mean over all points of min_{e in S} d(e, v)^alpha. S must be nonempty.
double exemplar_loss(const VectorDataset& data, double alpha_exp, ElementSpan s);

// f(S) = 1/2 log det(I + sigma^-2 K_SS) for the SE kernel over the data.
// Recomputed from a fresh Cholesky factorization on every evaluation.
class InfoGainObjective final : public Objective {
 public:
  InfoGainObjective(std::shared_ptr<const VectorDataset> data, SEKernel kernel);

  bool monotone() const override { return true; }
  bool nonnegative() const override { return true; }
  std::string name() const override { return "infogain"; }
  const SEKernel& kernel() const { return kernel_; }
  const VectorDataset& data() const { return *data_; }

 protected:
  double evaluate(ElementSpan s) const override;

 private:
  std::shared_ptr<const VectorDataset> data_;
  SEKernel kernel_;
};

// f(S) = log det(K_S), with log det(K_empty) = 0.
class DppLogDetObjective final : public Objective {
 public:
  explicit DppLogDetObjective(Eigen::MatrixXd kernel);
  /// K = SE kernel matrix + ridge * I.
  static std::shared_ptr<DppLogDetObjective> from_vectors(
      const VectorDataset& data, double bandwidth, double ridge);

  bool monotone() const override { return false; }
  bool nonnegative() const override { return false; }
  std::string name() const override { return "dpp"; }
  const Eigen::MatrixXd& kernel() const { return kernel_; }

 protected:
  double evaluate(ElementSpan s) const override;

 private:
  Eigen::MatrixXd kernel_;
};

/// log det of a symmetric positive definite matrix by Cholesky. On failure
/// retries once with 1e-10 added to the diagonal, then throws NumericalError.
double logdet_spd(Eigen::MatrixXd m);

struct Arc {
  ElementId from;
  ElementId to;
  double weight = 1.0;
};

struct GraphDataset {
  std::size_t nodes = 0;
  std::vector<Arc> arcs;

  /// No self loops, endpoints in range, finite nonnegative weights.
  void validate() const;
};

// Weight of the arcs leaving S: sum over u in S, v not in S of w(u, v).
// Nonnegative and submodular, not monotone.
class GraphCutObjective final : public Objective {
 public:
  explicit GraphCutObjective(std::shared_ptr<const GraphDataset> graph);

  bool monotone() const override { return false; }
  bool nonnegative() const override { return true; }
  std::string name() const override { return "cut"; }
  std::unique_ptr<GainState> start() const override;
  /// Cut of the subgraph induced by `block`; arcs leaving the block vanish.
  std::shared_ptr<const Objective> localized(ElementSpan block) const override;

  const GraphDataset& graph() const { return *graph_; }

 protected:
  double evaluate(ElementSpan s) const override;

 private:
  friend class CutGainState;
  struct Neighbor {
    ElementId node;
    double weight;
  };
  std::shared_ptr<const GraphDataset> graph_;
  std::vector<std::vector<Neighbor>> out_;
  std::vector<std::vector<Neighbor>> in_;
};

// Candidate sets over integer items; element i is sets[i].
struct SetSystemDataset {
  std::vector<std::vector<std::uint32_t>> sets;

  std::size_t size() const { return sets.size(); }
  /// 1 + largest item id.
  std::size_t universe() const;
};

// f(S) = |union of sets(e) for e in S|.
class CoverageObjective final : public Objective {
 public:
  explicit CoverageObjective(std::shared_ptr<const SetSystemDataset> sets);

  bool monotone() const override { return true; }
  bool nonnegative() const override { return true; }
  std::string name() const override { return "coverage"; }
  std::unique_ptr<GainState> start() const override;
  const SetSystemDataset& sets() const { return *sets_; }

 protected:
  double evaluate(ElementSpan s) const override;

 private:
  friend class CoverageGainState;
  std::shared_ptr<const SetSystemDataset> sets_;
  std::size_t universe_;
};

// f(S) = sum of w(e).
class ModularObjective final : public Objective {
 public:
  explicit ModularObjective(std::vector<double> weights);

  bool monotone() const override;
  bool nonnegative() const override { return monotone(); }
  std::string name() const override { return "modular"; }
  std::unique_ptr<GainState> start() const override;
  double weight(ElementId e) const { return weights_[e]; }

 protected:
  double evaluate(ElementSpan s) const override;

 private:
  std::vector<double> weights_;
};

// Wraps an arbitrary callable; structural flags are the caller's claim.
class FunctionObjective final : public Objective {
 public:
  using Fn = std::function<double(ElementSpan)>;
  FunctionObjective(std::size_t n, Fn fn, bool monotone, bool nonnegative,
                    std::string name = "function");

  bool monotone() const override { return monotone_; }
  bool nonnegative() const override { return nonnegative_; }
  std::string name() const override { return name_; }

 protected:
  double evaluate(ElementSpan s) const override { return fn_(s); }

 private:
  Fn fn_;
  bool monotone_;
  bool nonnegative_;
  std::string name_;
};

// f(S) = (1/|V|) sum_i f_i(S) with one bounded component 0 <= f_i <= 1 per
// element. Restricting the sum to a scope D gives the locally evaluable
// f_D(S) = (1/|D|) sum_{i in D} f_i(S).
class DecomposableObjective {
 public:
  virtual ~DecomposableObjective() = default;

  virtual std::size_t size() const = 0;
  virtual double component(ElementId i, ElementSpan s) const = 0;
  virtual bool monotone() const = 0;

  /// f_D as an Objective over all of V. The default sums components.
  virtual std::shared_ptr<const Objective> restricted(
      std::vector<ElementId> scope) const;
  std::shared_ptr<const Objective> global() const;
};

/// Mean of f_i(S) over i in `scope`. Throws on an empty scope.
double restricted_eval(const DecomposableObjective& obj, ElementSpan scope,
                       ElementSpan s);

// f_i(S) = (phantom - min_{e in S + e0} l(i, e)) / phantom.
class ExemplarDecomposition final : public DecomposableObjective {
 public:
  explicit ExemplarDecomposition(std::shared_ptr<const ExemplarObjective> base);

  std::size_t size() const override { return base_->size(); }
  double component(ElementId i, ElementSpan s) const override;
  bool monotone() const override { return true; }
  std::shared_ptr<const Objective> restricted(
      std::vector<ElementId> scope) const override;

 private:
  std::shared_ptr<const ExemplarObjective> base_;
};

using Metric = std::function<double(ElementId, ElementId)>;

struct LipschitzProbe {
  double max_ratio = 0.0;
  std::size_t informative_trials = 0;  // trials with nonzero matched distance
};

/// Samples `trials` matched pairs of k-sets (S, S') from `ground` and
/// returns the largest |f(S) - f(S')| / sum_i d(s_i, s'_i). Throws if no
/// trial had a nonzero matched distance.
LipschitzProbe lipschitz_probe(const Objective& f, const Metric& metric,
                               ElementSpan ground, std::size_t k,
                               std::size_t trials, Rng& rng);

/// lambda = L k^3 for the information gain, with L the kernel's Lipschitz
/// constant scaled by sigma^-2.
double info_gain_lipschitz_bound(const SEKernel& kernel, std::size_t k);
/// lambda = alpha R^(alpha - 1) for exemplar utility with l = d^alpha.
double exemplar_lipschitz_bound(double alpha_exp, double radius);

}  // namespace greedi

#endif  // GREEDI_OBJECTIVES_HPP
