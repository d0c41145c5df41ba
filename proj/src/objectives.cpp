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

#include "greedi/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace greedi {

void VectorDataset::validate() const {
  if (points.rows() == 0 || points.cols() == 0) {
    throw PreconditionError("vector dataset is empty");
  }
  if (!points.allFinite()) {
    throw PreconditionError("vector dataset has non-finite entries");
  }
}

void VectorDataset::normalize() {
  validate();
  const Eigen::RowVectorXd mean = points.colwise().mean();
  points.rowwise() -= mean;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    const double norm = points.row(i).norm();
    if (norm == 0.0) {
      throw PreconditionError("row " + std::to_string(i) +
                              " is zero after mean subtraction");
    }
    points.row(i) /= norm;
  }
}

double squared_distance(const VectorDataset& data, ElementId a, ElementId b) {
  double acc = 0.0;
  for (Eigen::Index j = 0; j < data.points.cols(); ++j) {
    const double diff = data.points(b, j) - data.points(a, j);
    acc += diff * diff;
  }
  return acc;
}

double euclidean_distance(const VectorDataset& data, ElementId a, ElementId b) {
  return std::sqrt(squared_distance(data, a, b));
}

double diameter(const VectorDataset& data) {
  double best = 0.0;
  const Eigen::Index n = data.points.rows();
  Eigen::ArrayXd acc(n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    auto tail = acc.head(n - i - 1);
    tail.setZero();
    for (Eigen::Index j = 0; j < data.points.cols(); ++j) {
      tail += (data.points.col(j).tail(n - i - 1).array() - data.points(i, j)).square();
    }
    best = std::max(best, tail.maxCoeff());
  }
  return std::sqrt(best);
}

SEKernel::SEKernel(double h, double sigma) : bandwidth(h), noise(sigma) {
  if (!(h > 0.0) || !(sigma > 0.0)) {
    throw PreconditionError("SE kernel needs h > 0 and sigma > 0");
  }
}

double SEKernel::lipschitz_constant() const {
  return std::numbers::sqrt2 / (bandwidth * std::sqrt(std::numbers::e));
}

namespace {

double power_of_squared(double squared, double alpha) {
  if (alpha == 2.0) return squared;
  if (alpha == 1.0) return std::sqrt(squared);
  return std::pow(squared, alpha / 2.0);
}

}  // namespace

// ---------------------------------------------------------------------------
// Exemplar clustering

double max_dissimilarity(const VectorDataset& data, double alpha_exp) {
  const double r = diameter(data);
  return power_of_squared(r * r, alpha_exp);
}

ExemplarObjective::ExemplarObjective(std::shared_ptr<const VectorDataset> data,
                                     Options options)
    : Objective(data ? data->size() : 0),
      data_(std::move(data)),
      alpha_(options.alpha_exp),
      phantom_(0.0),
      points_(iota_ids(data_->size())),
      point_coords_(data_->points),
      scale_(1.0) {
  data_->validate();
  point_norms_ = point_coords_.rowwise().squaredNorm().array();
  if (!(alpha_ >= 1.0)) throw PreconditionError("alpha_exp must be >= 1");
  const double max_l = max_dissimilarity(*data_, alpha_);
  phantom_ = options.phantom_cost.value_or(1.01 * max_l);
  if (phantom_ < max_l || !(phantom_ > 0.0)) {
    throw PreconditionError(
        "phantom cost must be positive and at least the largest pairwise "
        "dissimilarity");
  }
}

ExemplarObjective::ExemplarObjective(std::shared_ptr<const VectorDataset> data,
                                     double alpha, double phantom,
                                     std::vector<ElementId> points, double scale)
    : Objective(data->size()),
      data_(std::move(data)),
      alpha_(alpha),
      phantom_(phantom),
      points_(std::move(points)),
      point_coords_(static_cast<Eigen::Index>(points_.size()),
                    data_->points.cols()),
      scale_(scale) {
  if (points_.empty()) throw PreconditionError("empty evaluation scope");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i] >= data_->size()) {
      throw PreconditionError("evaluation point out of range");
    }
    point_coords_.row(static_cast<Eigen::Index>(i)) = data_->points.row(points_[i]);
  }
  point_norms_ = point_coords_.rowwise().squaredNorm().array();
}

std::shared_ptr<const ExemplarObjective> ExemplarObjective::restricted_to(
    std::vector<ElementId> points, double scale) const {
  return std::shared_ptr<const ExemplarObjective>(
      new ExemplarObjective(data_, alpha_, phantom_, std::move(points), scale));
}

double ExemplarObjective::dissimilarity(ElementId a, ElementId b) const {
  return power_of_squared(squared_distance(*data_, a, b), alpha_);
}

void ExemplarObjective::dissimilarity_block(ElementId e, Eigen::Index first,
                                            Eigen::Ref<Eigen::ArrayXd> out) const {
  // |p - x|^2 = |p|^2 + |x|^2 - 2 p.x, accumulated one coordinate at a time
  // so every entry sees the same operation order whatever the block bounds.
  // Rounding can push a near-zero distance below zero, hence the clamp.
  const Eigen::Index len = out.size();
  out = point_norms_.segment(first, len) + data_->points.row(e).squaredNorm();
  for (Eigen::Index j = 0; j < point_coords_.cols(); ++j) {
    out -= (2.0 * data_->points(e, j)) * point_coords_.col(j).segment(first, len).array();
  }
  out = out.max(0.0);
  if (alpha_ == 2.0) return;
  if (alpha_ == 1.0) {
    out = out.sqrt();
  } else {
    out = out.pow(alpha_ / 2.0);
  }
}

Eigen::ArrayXd ExemplarObjective::dissimilarities(ElementId e) const {
  Eigen::ArrayXd out(point_coords_.rows());
  dissimilarity_block(e, 0, out);
  return out;
}

void ExemplarObjective::improvements(const Eigen::ArrayXd& best, ElementSpan candidates,
                                     std::span<double> out) const {
  constexpr Eigen::Index kBlock = 256;
  const Eigen::Index n = point_coords_.rows();
  std::fill(out.begin(), out.end(), 0.0);
  Eigen::ArrayXd l(kBlock);
  for (Eigen::Index first = 0; first < n; first += kBlock) {
    const Eigen::Index len = std::min(kBlock, n - first);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      dissimilarity_block(candidates[i], first, l.head(len));
      out[i] += (best.segment(first, len) - l.head(len)).max(0.0).sum();
    }
  }
}

double ExemplarObjective::loss_with_phantom(ElementSpan s) const {
  Eigen::ArrayXd best = Eigen::ArrayXd::Constant(point_coords_.rows(), phantom_);
  for (ElementId e : s) best = best.min(dissimilarities(e));
  return best.sum() / static_cast<double>(best.size());
}

double ExemplarObjective::evaluate(ElementSpan s) const {
  return scale_ * (phantom_ - loss_with_phantom(s));
}

namespace {

class ExemplarGainState final : public GainState {
 public:
  explicit ExemplarGainState(const ExemplarObjective& f)
      : GainState(f),
        f_(f),
        best_(Eigen::ArrayXd::Constant(
            static_cast<Eigen::Index>(f.evaluation_points().size()),
            f.phantom_cost())) {
    count_evaluation();
    value_ = current_value();
  }

 protected:
  double marginal(ElementId e) override {
    double out = 0.0;
    marginals(ElementSpan(&e, 1), std::span<double>(&out, 1));
    return out;
  }

  void marginals(ElementSpan es, std::span<double> out) override {
    f_.improvements(best_, es, out);
    const double factor = f_.scale() / static_cast<double>(best_.size());
    for (double& g : out) g *= factor;
  }

  void accept(ElementId e) override {
    best_ = best_.min(f_.dissimilarities(e));
    value_ = current_value();
  }

 private:
  double current_value() const {
    return f_.scale() *
           (f_.phantom_cost() - best_.sum() / static_cast<double>(best_.size()));
  }

  const ExemplarObjective& f_;
  Eigen::ArrayXd best_;
};

}  // namespace

std::unique_ptr<GainState> ExemplarObjective::start() const {
  return std::make_unique<ExemplarGainState>(*this);
}

double exemplar_loss(const VectorDataset& data, double alpha_exp, ElementSpan s) {
  if (s.empty()) {
    throw PreconditionError(
        "exemplar loss of the empty set is undefined; use the phantom-based "
        "exemplar utility");
  }
  double total = 0.0;
  for (ElementId v = 0; v < data.size(); ++v) {
    double best = std::numeric_limits<double>::infinity();
    for (ElementId e : s) {
      best = std::min(best, power_of_squared(squared_distance(data, e, v), alpha_exp));
    }
    total += best;
  }
  return total / static_cast<double>(data.size());
}

// ---------------------------------------------------------------------------
// Log-determinant objectives

double logdet_spd(Eigen::MatrixXd m) {
  if (m.rows() == 0) return 0.0;
  for (int attempt = 0; attempt < 2; ++attempt) {
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() == Eigen::Success) {
      const Eigen::VectorXd diag = llt.matrixLLT().diagonal();
      if ((diag.array() > 0.0).all()) {
        return 2.0 * diag.array().log().sum();
      }
    }
    m.diagonal().array() += 1e-10;
  }
  throw NumericalError("Cholesky factorization failed after jitter");
}

InfoGainObjective::InfoGainObjective(std::shared_ptr<const VectorDataset> data,
                                     SEKernel kernel)
    : Objective(data ? data->size() : 0), data_(std::move(data)), kernel_(kernel) {
  data_->validate();
  if (!(kernel_.bandwidth > 0.0) || !(kernel_.noise > 0.0)) {
    throw PreconditionError("SE kernel needs h > 0 and sigma > 0");
  }
}

double InfoGainObjective::evaluate(ElementSpan s) const {
  const Eigen::Index k = static_cast<Eigen::Index>(s.size());
  if (k == 0) return 0.0;
  const double inv_var = 1.0 / (kernel_.noise * kernel_.noise);
  Eigen::MatrixXd m(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    m(i, i) = 1.0 + inv_var;  // K(x, x) = 1
    for (Eigen::Index j = 0; j < i; ++j) {
      const double kij =
          inv_var * kernel_(data_->points.row(s[i]), data_->points.row(s[j]));
      m(i, j) = kij;
      m(j, i) = kij;
    }
  }
  return 0.5 * logdet_spd(std::move(m));
}

DppLogDetObjective::DppLogDetObjective(Eigen::MatrixXd kernel)
    : Objective(static_cast<std::size_t>(kernel.rows())), kernel_(std::move(kernel)) {
  if (kernel_.rows() != kernel_.cols()) {
    throw PreconditionError("DPP kernel must be square");
  }
  if (!kernel_.allFinite() || !kernel_.isApprox(kernel_.transpose())) {
    throw PreconditionError("DPP kernel must be finite and symmetric");
  }
}

std::shared_ptr<DppLogDetObjective> DppLogDetObjective::from_vectors(
    const VectorDataset& data, double bandwidth, double ridge) {
  data.validate();
  const SEKernel kernel(bandwidth, 1.0);
  const Eigen::Index n = data.points.rows();
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      k(i, j) = kernel(data.points.row(i), data.points.row(j));
      k(j, i) = k(i, j);
    }
  }
  k.diagonal().array() += ridge;
  return std::make_shared<DppLogDetObjective>(std::move(k));
}

double DppLogDetObjective::evaluate(ElementSpan s) const {
  const Eigen::Index k = static_cast<Eigen::Index>(s.size());
  Eigen::MatrixXd sub(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) sub(i, j) = kernel_(s[i], s[j]);
  }
  return logdet_spd(std::move(sub));
}

// ---------------------------------------------------------------------------
// Graph cut

void GraphDataset::validate() const {
  for (const Arc& a : arcs) {
    if (a.from >= nodes || a.to >= nodes) {
      throw PreconditionError("arc endpoint out of range");
    }
    if (a.from == a.to) throw PreconditionError("self loops are not allowed");
    if (!std::isfinite(a.weight) || a.weight < 0.0) {
      throw PreconditionError("arc weights must be finite and nonnegative");
    }
  }
}

GraphCutObjective::GraphCutObjective(std::shared_ptr<const GraphDataset> graph)
    : Objective(graph ? graph->nodes : 0),
      graph_(std::move(graph)),
      out_(graph_->nodes),
      in_(graph_->nodes) {
  graph_->validate();
  for (const Arc& a : graph_->arcs) {
    out_[a.from].push_back({a.to, a.weight});
    in_[a.to].push_back({a.from, a.weight});
  }
}

double GraphCutObjective::evaluate(ElementSpan s) const {
  ElementSet in_s(size());
  for (ElementId e : s) in_s.insert(e);
  double total = 0.0;
  for (ElementId u : s) {
    for (const Neighbor& nb : out_[u]) {
      if (!in_s.contains(nb.node)) total += nb.weight;
    }
  }
  return total;
}

class CutGainState final : public GainState {
 public:
  explicit CutGainState(const GraphCutObjective& f) : GainState(f), f_(f) {
    count_evaluation();
    value_ = 0.0;
  }

 protected:
  // Adding e gains its arcs to nodes outside S + e and loses the arcs from
  // S into e, which stop crossing.
  double marginal(ElementId e) override {
    double leaving = 0.0;
    for (const auto& nb : f_.out_[e]) {
      if (!contains(nb.node)) leaving += nb.weight;
    }
    double entering = 0.0;
    for (const auto& nb : f_.in_[e]) {
      if (contains(nb.node)) entering += nb.weight;
    }
    return leaving - entering;
  }

  void accept(ElementId) override { value_ = raw_eval(f_, selected()); }

 private:
  const GraphCutObjective& f_;
};

std::unique_ptr<GainState> GraphCutObjective::start() const {
  return std::make_unique<CutGainState>(*this);
}

std::shared_ptr<const Objective> GraphCutObjective::localized(
    ElementSpan block) const {
  ElementSet members(size());
  for (ElementId e : block) members.insert(e);
  auto local = std::make_shared<GraphDataset>();
  local->nodes = graph_->nodes;
  for (const Arc& a : graph_->arcs) {
    if (members.contains(a.from) && members.contains(a.to)) {
      local->arcs.push_back(a);
    }
  }
  return std::make_shared<GraphCutObjective>(std::move(local));
}

// ---------------------------------------------------------------------------
// Coverage

std::size_t SetSystemDataset::universe() const {
  std::size_t u = 0;
  for (const auto& s : sets) {
    for (std::uint32_t item : s) u = std::max<std::size_t>(u, item + 1);
  }
  return u;
}

CoverageObjective::CoverageObjective(std::shared_ptr<const SetSystemDataset> sets)
    : Objective(sets ? sets->size() : 0),
      sets_(std::move(sets)),
      universe_(sets_->universe()) {}

double CoverageObjective::evaluate(ElementSpan s) const {
  std::vector<char> covered(universe_, 0);
  std::size_t count = 0;
  for (ElementId e : s) {
    for (std::uint32_t item : sets_->sets[e]) {
      if (!covered[item]) {
        covered[item] = 1;
        ++count;
      }
    }
  }
  return static_cast<double>(count);
}

class CoverageGainState final : public GainState {
 public:
  explicit CoverageGainState(const CoverageObjective& f)
      : GainState(f), f_(f), covered_(f.universe_, 0) {
    count_evaluation();
    value_ = 0.0;
  }

 protected:
  double marginal(ElementId e) override {
    std::size_t fresh = 0;
    for (std::uint32_t item : f_.sets_->sets[e]) {
      if (!covered_[item]) {
        covered_[item] = 2;  // marks duplicates within one set
        ++fresh;
      }
    }
    for (std::uint32_t item : f_.sets_->sets[e]) {
      if (covered_[item] == 2) covered_[item] = 0;
    }
    return static_cast<double>(fresh);
  }

  void accept(ElementId e) override {
    for (std::uint32_t item : f_.sets_->sets[e]) {
      if (!covered_[item]) {
        covered_[item] = 1;
        value_ += 1.0;
      }
    }
  }

 private:
  const CoverageObjective& f_;
  std::vector<char> covered_;
};

std::unique_ptr<GainState> CoverageObjective::start() const {
  return std::make_unique<CoverageGainState>(*this);
}

// ---------------------------------------------------------------------------
// Modular and callable objectives

ModularObjective::ModularObjective(std::vector<double> weights)
    : Objective(weights.size()), weights_(std::move(weights)) {}

bool ModularObjective::monotone() const {
  return std::all_of(weights_.begin(), weights_.end(),
                     [](double w) { return w >= 0.0; });
}

double ModularObjective::evaluate(ElementSpan s) const {
  double total = 0.0;
  for (ElementId e : s) total += weights_[e];
  return total;
}

namespace {

class ModularGainState final : public GainState {
 public:
  explicit ModularGainState(const ModularObjective& f) : GainState(f), f_(f) {
    count_evaluation();
  }

 protected:
  double marginal(ElementId e) override { return f_.weight(e); }
  void accept(ElementId e) override { value_ += f_.weight(e); }

 private:
  const ModularObjective& f_;
};

}  // namespace

std::unique_ptr<GainState> ModularObjective::start() const {
  return std::make_unique<ModularGainState>(*this);
}

FunctionObjective::FunctionObjective(std::size_t n, Fn fn, bool monotone,
                                     bool nonnegative, std::string name)
    : Objective(n),
      fn_(std::move(fn)),
      monotone_(monotone),
      nonnegative_(nonnegative),
      name_(std::move(name)) {}

// ---------------------------------------------------------------------------
// Decomposable objectives

namespace {

class ComponentMeanObjective final : public Objective {
 public:
  ComponentMeanObjective(const DecomposableObjective& parent,
                         std::vector<ElementId> scope)
      : Objective(parent.size()), parent_(parent), scope_(std::move(scope)) {
    if (scope_.empty()) throw PreconditionError("empty evaluation scope");
  }

  bool monotone() const override { return parent_.monotone(); }
  bool nonnegative() const override { return true; }
  std::string name() const override { return "decomposable"; }

 protected:
  double evaluate(ElementSpan s) const override {
    return restricted_eval(parent_, scope_, s);
  }

 private:
  const DecomposableObjective& parent_;
  std::vector<ElementId> scope_;
};

}  // namespace

std::shared_ptr<const Objective> DecomposableObjective::restricted(
    std::vector<ElementId> scope) const {
  return std::make_shared<ComponentMeanObjective>(*this, std::move(scope));
}

std::shared_ptr<const Objective> DecomposableObjective::global() const {
  return restricted(iota_ids(size()));
}

double restricted_eval(const DecomposableObjective& obj, ElementSpan scope,
                       ElementSpan s) {
  if (scope.empty()) throw PreconditionError("restricted_eval: empty scope");
  double total = 0.0;
  for (ElementId i : scope) total += obj.component(i, s);
  return total / static_cast<double>(scope.size());
}

ExemplarDecomposition::ExemplarDecomposition(
    std::shared_ptr<const ExemplarObjective> base)
    : base_(std::move(base)) {}

double ExemplarDecomposition::component(ElementId i, ElementSpan s) const {
  const double phantom = base_->phantom_cost();
  double best = phantom;
  for (ElementId e : s) best = std::min(best, base_->dissimilarity(e, i));
  return (phantom - best) / phantom;
}

std::shared_ptr<const Objective> ExemplarDecomposition::restricted(
    std::vector<ElementId> scope) const {
  return base_->restricted_to(std::move(scope), 1.0 / base_->phantom_cost());
}

// ---------------------------------------------------------------------------
// Lipschitz probes

LipschitzProbe lipschitz_probe(const Objective& f, const Metric& metric,
                               ElementSpan ground, std::size_t k,
                               std::size_t trials, Rng& rng) {
  if (k == 0 || k > ground.size()) {
    throw PreconditionError("lipschitz_probe: need 1 <= k <= |ground|");
  }
  const std::vector<ElementId> pool(ground.begin(), ground.end());
  LipschitzProbe out;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::vector<ElementId> s = rng.sample(pool, k);
    const std::vector<ElementId> s2 = rng.sample(pool, k);
    double matched = 0.0;
    for (std::size_t i = 0; i < k; ++i) matched += metric(s[i], s2[i]);
    if (matched <= 0.0) continue;
    ++out.informative_trials;
    out.max_ratio = std::max(out.max_ratio, std::abs(f.eval(s) - f.eval(s2)) / matched);
  }
  if (out.informative_trials == 0) {
    throw PreconditionError("lipschitz_probe: every matched distance was zero");
  }
  return out;
}

double info_gain_lipschitz_bound(const SEKernel& kernel, std::size_t k) {
  const double l = kernel.lipschitz_constant() / (kernel.noise * kernel.noise);
  const double kk = static_cast<double>(k);
  return l * kk * kk * kk;
}

double exemplar_lipschitz_bound(double alpha_exp, double radius) {
  return alpha_exp * std::pow(radius, alpha_exp - 1.0);
}

}  // namespace greedi
