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

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "greedi/core.hpp"
#include "greedi/objectives.hpp"
#include "greedi/rng.hpp"

namespace greedi {
namespace {

std::shared_ptr<VectorDataset> random_points(std::size_t n, std::size_t d,
                                             std::uint64_t seed) {
  Rng rng(seed);
  auto data = std::make_shared<VectorDataset>();
  data->points.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < data->points.rows(); ++i) {
    for (Eigen::Index j = 0; j < data->points.cols(); ++j) {
      data->points(i, j) = rng.normal();
    }
  }
  return data;
}

// Direct pairwise loops, no norm expansion.
double pairwise_l(const VectorDataset& data, std::size_t a, std::size_t b, double alpha) {
  const double r = (data.points.row(a) - data.points.row(b)).norm();
  return std::pow(r, alpha);
}

double exemplar_oracle(const VectorDataset& data, double alpha, double phantom,
                       const std::vector<ElementId>& s) {
  double total = 0.0;
  for (std::size_t v = 0; v < data.size(); ++v) {
    double best = phantom;
    for (ElementId e : s) best = std::min(best, pairwise_l(data, e, v, alpha));
    total += best;
  }
  return phantom - total / static_cast<double>(data.size());
}

double max_pairwise(const VectorDataset& data, double alpha) {
  double best = 0.0;
  for (std::size_t a = 0; a < data.size(); ++a) {
    for (std::size_t b = 0; b < data.size(); ++b) {
      best = std::max(best, pairwise_l(data, a, b, alpha));
    }
  }
  return best;
}

double logdet_by_lu(const Eigen::MatrixXd& m) {
  return std::log(m.fullPivLu().determinant());
}

TEST(VectorDatasetTest, NormalizeCentersAndScales) {
  auto data = random_points(20, 4, 1);
  data->points.array() += 3.0;
  const Eigen::MatrixXd raw = data->points;
  data->normalize();
  for (Eigen::Index i = 0; i < raw.rows(); ++i) {
    Eigen::RowVectorXd centered = raw.row(i);
    for (Eigen::Index j = 0; j < raw.cols(); ++j) centered(j) -= raw.col(j).mean();
    EXPECT_LT((data->points.row(i) - centered / centered.norm()).norm(), 1e-12);
    EXPECT_NEAR(data->points.row(i).norm(), 1.0, 1e-12);
  }
}

TEST(VectorDatasetTest, RejectsDegenerateInput) {
  VectorDataset same;
  same.points = Eigen::MatrixXd::Ones(3, 2);
  EXPECT_THROW(same.normalize(), PreconditionError);
  VectorDataset empty;
  EXPECT_THROW(empty.validate(), PreconditionError);
  VectorDataset bad;
  bad.points = Eigen::MatrixXd::Zero(2, 2);
  bad.points(1, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(bad.validate(), PreconditionError);
}

TEST(VectorDatasetTest, DiameterMatchesPairwiseMaximum) {
  auto data = random_points(57, 5, 2);
  EXPECT_NEAR(diameter(*data), max_pairwise(*data, 1.0), 1e-12);
  EXPECT_NEAR(euclidean_distance(*data, 3, 9), pairwise_l(*data, 3, 9, 1.0), 1e-15);
}

TEST(ExemplarObjectiveTest, DefaultPhantomIsScaledMaximum) {
  auto data = random_points(30, 3, 3);
  ExemplarObjective f(data);
  EXPECT_NEAR(f.phantom_cost(), 1.01 * max_pairwise(*data, 2.0), 1e-12);
  EXPECT_DOUBLE_EQ(f.eval({}), 0.0);
  EXPECT_THROW(ExemplarObjective(data, {.alpha_exp = 2.0, .phantom_cost = 0.1}),
               PreconditionError);
  EXPECT_THROW(ExemplarObjective(data, {.alpha_exp = 0.5, .phantom_cost = {}}),
               PreconditionError);
}

class ExemplarAlphaTest : public ::testing::TestWithParam<double> {};

TEST_P(ExemplarAlphaTest, EvalMatchesPairwiseOracle) {
  const double alpha = GetParam();
  auto data = random_points(300, 6, 4);
  ExemplarObjective f(data, {.alpha_exp = alpha, .phantom_cost = {}});
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const std::vector<ElementId> s = rng.sample(iota_ids(300), 1 + trial);
    const double expected = exemplar_oracle(*data, alpha, f.phantom_cost(), s);
    EXPECT_NEAR(f.eval(s), expected, 1e-10 * f.phantom_cost());
  }
}

TEST_P(ExemplarAlphaTest, GainStateTracksEval) {
  const double alpha = GetParam();
  auto data = random_points(700, 5, 6);
  ExemplarObjective f(data, {.alpha_exp = alpha, .phantom_cost = {}});
  auto state = f.start();
  std::vector<ElementId> s;
  for (ElementId e : {11u, 402u, 3u, 699u, 250u}) {
    const double before = exemplar_oracle(*data, alpha, f.phantom_cost(), s);
    s.push_back(e);
    const double after = exemplar_oracle(*data, alpha, f.phantom_cost(), s);
    EXPECT_NEAR(state->gain(e), after - before, 1e-10 * f.phantom_cost());
    state->add(e);
    EXPECT_NEAR(state->value(), after, 1e-10 * f.phantom_cost());
  }
}

INSTANTIATE_TEST_SUITE_P(Exponents, ExemplarAlphaTest, ::testing::Values(1.0, 2.0, 3.0));

TEST(ExemplarObjectiveTest, BatchedGainsIgnoreBatchComposition) {
  auto data = random_points(600, 4, 7);
  ExemplarObjective f(data);
  auto state = f.start();
  state->add(17);
  state->add(300);
  const std::vector<ElementId> batch{0, 5, 599, 42, 128};
  std::vector<double> out(batch.size());
  state->gains(batch, out);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    EXPECT_EQ(out[i], state->gain(batch[i]));
    std::vector<double> single(1);
    state->gains(ElementSpan(&batch[i], 1), single);
    EXPECT_EQ(single[0], out[i]);
  }
}

TEST(ExemplarDecompositionTest, RestrictedMatchesComponentMean) {
  auto data = random_points(80, 3, 8);
  auto base = std::make_shared<ExemplarObjective>(data);
  ExemplarDecomposition dec(base);
  const std::vector<ElementId> scope{1, 4, 9, 33, 70};
  auto restricted = dec.restricted(scope);
  const std::vector<ElementId> s{2, 40, 9};
  const double phantom = base->phantom_cost();
  double expected = 0.0;
  for (ElementId v : scope) {
    double best = phantom;
    for (ElementId e : s) best = std::min(best, pairwise_l(*data, e, v, 2.0));
    expected += (phantom - best) / phantom;
  }
  expected /= static_cast<double>(scope.size());
  EXPECT_NEAR(restricted->eval(s), expected, 1e-12);
  EXPECT_NEAR(restricted_eval(dec, scope, s), expected, 1e-12);
  // The global form is the base objective divided by the phantom cost.
  EXPECT_NEAR(dec.global()->eval(s), base->eval(s) / phantom, 1e-12);
}

TEST(ExemplarLossTest, MatchesOracleAndRejectsEmptySet) {
  auto data = random_points(40, 2, 9);
  const std::vector<ElementId> s{0, 7};
  const double phantom = 1e9;
  EXPECT_NEAR(exemplar_loss(*data, 2.0, s), phantom - exemplar_oracle(*data, 2.0, phantom, s),
              1e-6);
  EXPECT_THROW(exemplar_loss(*data, 2.0, {}), PreconditionError);
}

TEST(InfoGainObjectiveTest, MatchesLogDeterminant) {
  auto data = random_points(12, 2, 10);
  const SEKernel kernel(0.75, 1.5);
  InfoGainObjective f(data, kernel);
  const std::vector<ElementId> s{0, 3, 8, 11};
  Eigen::MatrixXd m(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double r2 = (data->points.row(s[i]) - data->points.row(s[j])).squaredNorm();
      m(i, j) = (i == j ? 1.0 : 0.0) + std::exp(-r2 / (0.75 * 0.75)) / (1.5 * 1.5);
    }
  }
  EXPECT_NEAR(f.eval(s), 0.5 * logdet_by_lu(m), 1e-12);
  EXPECT_DOUBLE_EQ(f.eval({}), 0.0);
  EXPECT_TRUE(verify_submodular(InfoGainObjective(random_points(7, 2, 11), kernel)).holds);
}

TEST(SEKernelTest, LipschitzConstantIsMaximumSlope) {
  const SEKernel kernel(0.75, 1.0);
  double slope = 0.0;
  for (int i = 1; i < 200000; ++i) {
    const double r = i * 1e-5;
    slope = std::max(slope, 2.0 * r / (0.75 * 0.75) * std::exp(-r * r / (0.75 * 0.75)));
  }
  EXPECT_NEAR(kernel.lipschitz_constant(), slope, 1e-8);
  EXPECT_NEAR(info_gain_lipschitz_bound(SEKernel(0.75, 2.0), 3),
              kernel.lipschitz_constant() / 4.0 * 27.0, 1e-12);
  EXPECT_THROW(SEKernel(0.0, 1.0), PreconditionError);
}

TEST(DppObjectiveTest, MatchesLogDeterminantAndIsNotMonotone) {
  auto data = random_points(6, 2, 12);
  auto f = DppLogDetObjective::from_vectors(*data, 1.0, 0.5);
  const std::vector<ElementId> s{1, 2, 5};
  Eigen::MatrixXd sub(3, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double r2 = (data->points.row(s[i]) - data->points.row(s[j])).squaredNorm();
      sub(i, j) = std::exp(-r2) + (i == j ? 0.5 : 0.0);
    }
  }
  EXPECT_NEAR(f->eval(s), logdet_by_lu(sub), 1e-12);
  EXPECT_FALSE(f->monotone());
  EXPECT_TRUE(verify_submodular(*f).holds);
  EXPECT_THROW(DppLogDetObjective(Eigen::MatrixXd::Zero(2, 3)), PreconditionError);
}

TEST(LogdetTest, HandlesEmptyAndRejectsIndefinite) {
  EXPECT_DOUBLE_EQ(logdet_spd(Eigen::MatrixXd(0, 0)), 0.0);
  Eigen::MatrixXd bad(2, 2);
  bad << 1.0, 2.0, 2.0, 1.0;
  EXPECT_THROW(logdet_spd(bad), NumericalError);
}

std::shared_ptr<GraphDataset> small_graph() {
  auto g = std::make_shared<GraphDataset>();
  g->nodes = 4;
  g->arcs = {{0, 1, 2.0}, {1, 0, 1.0}, {1, 2, 3.0}, {2, 3, 0.5}, {3, 0, 4.0}};
  return g;
}

TEST(GraphCutObjectiveTest, CutValuesByHand) {
  GraphCutObjective f(small_graph());
  EXPECT_DOUBLE_EQ(f.eval({}), 0.0);
  const std::vector<ElementId> s0{0};
  EXPECT_DOUBLE_EQ(f.eval(s0), 2.0);
  const std::vector<ElementId> s01{0, 1};
  EXPECT_DOUBLE_EQ(f.eval(s01), 3.0);
  const std::vector<ElementId> all{0, 1, 2, 3};
  EXPECT_DOUBLE_EQ(f.eval(all), 0.0);
  EXPECT_FALSE(f.monotone());
  EXPECT_TRUE(verify_submodular(f).holds);
  EXPECT_FALSE(verify_monotone(f).holds);
}

TEST(GraphCutObjectiveTest, GainStateMatchesEval) {
  GraphCutObjective f(small_graph());
  auto state = f.start();
  std::vector<ElementId> s;
  for (ElementId e : {2u, 0u, 3u}) {
    for (ElementId c = 0; c < 4; ++c) {
      if (state->contains(c)) continue;
      EXPECT_DOUBLE_EQ(state->gain(c), marginal_gain(f, s, c));
    }
    state->add(e);
    s.push_back(e);
    EXPECT_DOUBLE_EQ(state->value(), f.eval(s));
  }
}

TEST(GraphCutObjectiveTest, LocalizedDropsArcsLeavingTheBlock) {
  GraphCutObjective f(small_graph());
  const std::vector<ElementId> block{0, 1, 2};
  auto local = f.localized(block);
  ASSERT_NE(local, nullptr);
  const std::vector<ElementId> s{1};
  EXPECT_DOUBLE_EQ(local->eval(s), 4.0);
  const std::vector<ElementId> s2{2};
  EXPECT_DOUBLE_EQ(local->eval(s2), 0.0);
  EXPECT_DOUBLE_EQ(f.eval(s2), 0.5);
}

TEST(GraphDatasetTest, Validation) {
  auto g = small_graph();
  g->arcs.push_back({2, 2, 1.0});
  EXPECT_THROW(GraphCutObjective{g}, PreconditionError);
  g->arcs.back() = {2, 9, 1.0};
  EXPECT_THROW(g->validate(), PreconditionError);
  g->arcs.back() = {2, 1, -1.0};
  EXPECT_THROW(g->validate(), PreconditionError);
}

TEST(CoverageObjectiveTest, FrozenExample) {
  auto sets = std::make_shared<SetSystemDataset>();
  sets->sets = {{1, 2}, {2, 3}, {4}, {3}};
  CoverageObjective f(sets);
  const std::vector<ElementId> s{0, 1};
  EXPECT_DOUBLE_EQ(f.eval(s), 3.0);
  const std::vector<ElementId> s2{1, 3};
  EXPECT_DOUBLE_EQ(f.eval(s2), 2.0);
  auto state = f.start();
  EXPECT_DOUBLE_EQ(state->gain(0), 2.0);
  state->add(0);
  EXPECT_DOUBLE_EQ(state->gain(1), 1.0);
  EXPECT_DOUBLE_EQ(state->gain(2), 1.0);
  state->add(2);
  EXPECT_DOUBLE_EQ(state->value(), 3.0);
  EXPECT_EQ(sets->universe(), 5u);
}

TEST(CoverageObjectiveTest, DuplicateItemsCountOnce) {
  auto sets = std::make_shared<SetSystemDataset>();
  sets->sets = {{1, 1, 2}, {2}};
  CoverageObjective f(sets);
  auto state = f.start();
  EXPECT_DOUBLE_EQ(state->gain(0), 2.0);
  const std::vector<ElementId> s{0};
  EXPECT_DOUBLE_EQ(f.eval(s), 2.0);
}

TEST(ModularObjectiveTest, MonotoneIffWeightsNonnegative) {
  ModularObjective pos({1.0, 0.0, 2.5});
  EXPECT_TRUE(pos.monotone());
  const std::vector<ElementId> s{0, 2};
  EXPECT_DOUBLE_EQ(pos.eval(s), 3.5);
  ModularObjective neg({1.0, -0.5});
  EXPECT_FALSE(neg.monotone());
  EXPECT_FALSE(neg.nonnegative());
}

TEST(LipschitzProbeTest, ModularLineHasSlopeOne) {
  auto data = random_points(30, 1, 13);
  std::vector<double> weights(30);
  for (int i = 0; i < 30; ++i) weights[i] = data->points(i, 0);
  ModularObjective f(weights);
  const Metric metric = [&](ElementId a, ElementId b) {
    return std::abs(data->points(a, 0) - data->points(b, 0));
  };
  Rng rng(14);
  const LipschitzProbe probe = lipschitz_probe(f, metric, iota_ids(30), 1, 200, rng);
  EXPECT_NEAR(probe.max_ratio, 1.0, 1e-12);
  EXPECT_GT(probe.informative_trials, 150u);
  EXPECT_THROW(lipschitz_probe(f, metric, iota_ids(30), 31, 10, rng), PreconditionError);
}

TEST(LipschitzBoundTest, ExemplarBound) {
  EXPECT_DOUBLE_EQ(exemplar_lipschitz_bound(1.0, 5.0), 1.0);
  EXPECT_DOUBLE_EQ(exemplar_lipschitz_bound(2.0, 0.8), 1.6);
}

}  // namespace
}  // namespace greedi
