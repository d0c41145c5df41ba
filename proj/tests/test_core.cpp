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
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "greedi/core.hpp"
#include "greedi/objectives.hpp"
#include "greedi/rng.hpp"

namespace greedi {
namespace {

std::shared_ptr<FunctionObjective> square_of_size(std::size_t n) {
  return std::make_shared<FunctionObjective>(
      n, [](ElementSpan s) { return static_cast<double>(s.size() * s.size()); },
      true, true, "square");
}

TEST(GroundSetTest, ElementsAreIota) {
  GroundSet g(4, PayloadKind::kAbstract);
  EXPECT_EQ(g.elements(), (std::vector<ElementId>{0, 1, 2, 3}));
  EXPECT_THROW(GroundSet(0, PayloadKind::kVectors), PreconditionError);
}

TEST(ElementSetTest, KeepsInsertionOrderAndRejectsDuplicates) {
  ElementSet s(70);
  EXPECT_TRUE(s.insert(65));
  EXPECT_TRUE(s.insert(3));
  EXPECT_FALSE(s.insert(65));
  EXPECT_TRUE(s.contains(3));
  EXPECT_FALSE(s.contains(4));
  EXPECT_FALSE(s.contains(1000));
  EXPECT_EQ(s.ordered(), (std::vector<ElementId>{65, 3}));
  EXPECT_EQ(s.sorted(), (std::vector<ElementId>{3, 65}));
  EXPECT_THROW(s.insert(70), PreconditionError);
}

TEST(ObjectiveTest, EvalCountsOracleCalls) {
  auto f = square_of_size(3);
  const std::vector<ElementId> s{0, 2};
  EXPECT_DOUBLE_EQ(f->eval(s), 4.0);
  EXPECT_DOUBLE_EQ(f->eval({}), 0.0);
  EXPECT_EQ(f->oracle_calls(), 2u);
}

TEST(GainStateTest, GenericStateMatchesDifferences) {
  auto f = square_of_size(5);
  auto state = f->start();
  EXPECT_EQ(state->calls(), 1u);
  EXPECT_DOUBLE_EQ(state->gain(2), 1.0);
  state->add(2);
  EXPECT_DOUBLE_EQ(state->value(), 1.0);
  EXPECT_DOUBLE_EQ(state->gain(4), 3.0);
  EXPECT_THROW(state->gain(2), PreconditionError);
  EXPECT_THROW(state->add(2), PreconditionError);

  const std::vector<ElementId> ids{0, 1, 4};
  std::vector<double> out(ids.size());
  const std::uint64_t before = state->calls();
  state->gains(ids, out);
  EXPECT_EQ(state->calls(), before + ids.size());
  for (double g : out) EXPECT_DOUBLE_EQ(g, 3.0);
  std::vector<double> short_out(1);
  EXPECT_THROW(state->gains(ids, short_out), PreconditionError);
}

TEST(MarginalGainTest, DifferenceOfEvaluations) {
  auto f = square_of_size(4);
  const std::vector<ElementId> s{0, 1};
  EXPECT_DOUBLE_EQ(marginal_gain(*f, s, 3), 5.0);
  EXPECT_THROW(marginal_gain(*f, s, 1), PreconditionError);
}

TEST(MakeSolutionTest, ValuesElements) {
  auto f = square_of_size(4);
  const Solution s = make_solution(*f, {3, 1, 0}, "test", 7);
  EXPECT_DOUBLE_EQ(s.value, 9.0);
  EXPECT_EQ(s.oracle_calls, 7u);
  EXPECT_EQ(s.provenance, "test");
}

TEST(VerifySubmodularTest, SquareOfSizeWitness) {
  auto f = square_of_size(3);
  const StructureReport r = verify_submodular(*f);
  ASSERT_FALSE(r.holds);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_TRUE(r.witness->a.empty());
  EXPECT_EQ(r.witness->b, std::vector<ElementId>{0});
  EXPECT_EQ(r.witness->e, ElementId{1});
  EXPECT_TRUE(verify_monotone(*f).holds);
}

TEST(VerifySubmodularTest, ConcaveOfSizeHolds) {
  FunctionObjective f(
      6, [](ElementSpan s) { return std::sqrt(static_cast<double>(s.size())); }, true,
      true);
  EXPECT_TRUE(verify_submodular(f).holds);
  EXPECT_TRUE(verify_monotone(f).holds);
}

TEST(VerifyMonotoneTest, DecreasingFunctionWitness) {
  FunctionObjective f(
      3, [](ElementSpan s) { return -static_cast<double>(s.size()); }, false, false);
  const StructureReport r = verify_monotone(f);
  ASSERT_FALSE(r.holds);
  EXPECT_TRUE(r.witness->a.empty());
  EXPECT_EQ(r.witness->b, std::vector<ElementId>{0});
  EXPECT_FALSE(r.witness->e.has_value());
  // Modular functions are submodular whatever their sign.
  EXPECT_TRUE(verify_submodular(f).holds);
}

TEST(VerifyTest, RefusesLargeGroundSets) {
  auto f = square_of_size(kMaxExhaustiveSize + 1);
  EXPECT_THROW(verify_submodular(*f), SizeLimitError);
}

TEST(FormatTest, ValuesRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, 3.6571832867883955, -2.5e-17}) {
    EXPECT_EQ(std::stod(format_value(v)), v);
  }
  const std::vector<ElementId> ids{4, 0, 9};
  EXPECT_EQ(format_ids(ids), "4,0,9");
  EXPECT_EQ(format_ids({}), "");
}

TEST(RngTest, SeededStreamsRepeat) {
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
}

TEST(RngTest, UniformIndexCoversRange) {
  Rng rng(7);
  std::vector<int> hits(5, 0);
  for (int i = 0; i < 5000; ++i) ++hits[rng.uniform_index(5)];
  for (int h : hits) EXPECT_GT(h, 850);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(RngTest, SampleDrawsDistinctElements) {
  Rng rng(3);
  const std::vector<int> pool{1, 2, 3, 4, 5, 6, 7, 8};
  const std::vector<int> picks = rng.sample(pool, 5);
  EXPECT_EQ(picks.size(), 5u);
  EXPECT_EQ(std::set<int>(picks.begin(), picks.end()).size(), 5u);
  EXPECT_EQ(rng.sample(pool, 20).size(), pool.size());
}

TEST(RngTest, NormalMoments) {
  Rng rng(11);
  double sum = 0.0;
  double sq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    sum += x;
    sq += x * x;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.05);
  EXPECT_NEAR(sq / n, 1.0, 0.05);
}

}  // namespace
}  // namespace greedi
