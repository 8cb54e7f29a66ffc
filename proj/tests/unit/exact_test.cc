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

#include "tagdm/exact.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "tagdm/error.h"
#include "test_util.h"

namespace tagdm {
namespace {

using testing::ForEachSubset;
using testing::RandomGroupPool;
using testing::RandomStore;

struct OracleResult {
  std::vector<int> best;
  double score = 0.0;
  double runner_up = -1e300;  // best score among other feasible subsets
  bool found = false;
};

// Scores every subset through the span-based functions.
OracleResult BruteForce(const std::vector<TaggingGroup>& groups,
                        const ProblemSpec& spec, const TupleStore& store,
                        const MetricConfig& metrics) {
  OracleResult out;
  ForEachSubset(static_cast<int>(groups.size()), spec.k_lo, spec.k_hi,
                [&](const std::vector<int>& sel) {
                  std::vector<TaggingGroup> cand;
                  for (int g : sel) cand.push_back(groups[g]);
                  if (!CheckFeasible(cand, spec, store, metrics).feasible) return;
                  const double s = ObjectiveScore(cand, spec, metrics);
                  const bool better =
                      !out.found || s > out.score ||
                      (s == out.score && std::lexicographical_compare(
                                             sel.begin(), sel.end(),
                                             out.best.begin(), out.best.end()));
                  if (better) {
                    if (out.found) out.runner_up = std::max(out.runner_up, out.score);
                    out.best = sel;
                    out.score = s;
                    out.found = true;
                  } else {
                    out.runner_up = std::max(out.runner_up, s);
                  }
                });
  return out;
}

std::vector<int> AsInts(const std::vector<GroupIndex>& v) {
  return {v.begin(), v.end()};
}

class ExactTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::mt19937_64 rng(3);
    store_ = std::make_unique<TupleStore>(RandomStore(rng, 120, {2, 3}, {3, 2}, 7));
    groups_ = RandomGroupPool(rng, *store_, 12);
  }
  std::unique_ptr<TupleStore> store_;
  std::vector<TaggingGroup> groups_;
};

TEST_F(ExactTest, SingleGroupPool) {
  ProblemSpec spec;
  spec.k_lo = 1;
  spec.k_hi = 3;
  spec.objectives = {{{Component::kTags, Mode::kSimilarity}, 1.0}};
  const std::vector<TaggingGroup> one = {groups_[0]};
  const auto r = ExactSolve({*store_, one, spec});
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->groups, std::vector<GroupIndex>{0});
  EXPECT_EQ(r->score, 1.0);
  EXPECT_TRUE(r->feasible);
}

TEST_F(ExactTest, FiveGroupsPairs) {
  ProblemSpec spec;
  spec.k_lo = 2;
  spec.k_hi = 2;
  spec.objectives = {{{Component::kTags, Mode::kSimilarity}, 1.0}};
  const std::vector<TaggingGroup> five(groups_.begin(), groups_.begin() + 5);
  double best = -1;
  std::vector<int> arg;
  for (int a = 0; a < 5; ++a) {
    for (int b = a + 1; b < 5; ++b) {
      const double s = CosineSimilarity(five[a].signature, five[b].signature);
      if (s > best) {
        best = s;
        arg = {a, b};
      }
    }
  }
  const auto r = ExactSolve({*store_, five, spec});
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(AsInts(r->groups), arg);
  EXPECT_DOUBLE_EQ(r->score, best);
}

TEST_F(ExactTest, UnreachableSupportIsInfeasible) {
  ProblemSpec spec;
  spec.objectives = {{{Component::kTags, Mode::kSimilarity}, 1.0}};
  spec.support_p = store_->size() + 1;
  EXPECT_FALSE(ExactSolve({*store_, groups_, spec}).has_value());
}

TEST_F(ExactTest, BudgetExceededIsNotInfeasible) {
  ProblemSpec spec;
  spec.objectives = {{{Component::kTags, Mode::kDiversity}, 1.0}};
  ExactOptions options;
  options.max_candidates = 3;
  EXPECT_THROW(ExactSolve({*store_, groups_, spec}, options), BudgetExceededError);
}

TEST_F(ExactTest, InvariantUnderPoolOrder) {
  ProblemSpec spec = Preset("problem2");
  spec.support_p = 30;
  const auto base = ExactSolve({*store_, groups_, spec});
  std::vector<std::size_t> perm(groups_.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<TaggingGroup> shuffled;
    for (std::size_t p : perm) shuffled.push_back(groups_[p]);
    const auto r = ExactSolve({*store_, shuffled, spec});
    ASSERT_EQ(r.has_value(), base.has_value());
    if (!base) continue;
    EXPECT_NEAR(r->score, base->score, 1e-12);
    const OracleResult o = BruteForce(groups_, spec, *store_, {});
    if (o.score - o.runner_up > 1e-9) {
      std::vector<GroupDescriptor> a, b;
      for (GroupIndex g : base->groups) a.push_back(groups_[g].descriptor);
      for (GroupIndex g : r->groups) b.push_back(shuffled[g].descriptor);
      std::sort(b.begin(), b.end());
      EXPECT_EQ(a, b);
    }
  }
}

TEST(ExactOracleTest, MatchesBruteForce) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int found = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const TupleStore store = RandomStore(rng, 60 + trial, {2, 3}, {2, 3}, 6);
    const std::size_t n = 4 + trial % 8;
    const std::vector<TaggingGroup> groups = RandomGroupPool(rng, store, n);
    ProblemSpec spec;
    spec.k_lo = 1 + trial % 3;
    spec.k_hi = std::min<int>(spec.k_lo + trial % 3, static_cast<int>(groups.size()));
    if (spec.k_hi < spec.k_lo) continue;
    spec.support_p = static_cast<std::size_t>(unit(rng) * store.size() * 0.6);
    MetricConfig metrics;
    const Mode tag_mode = unit(rng) < 0.5 ? Mode::kSimilarity : Mode::kDiversity;
    spec.objectives = {{{Component::kTags, tag_mode}, 1.0}};
    if (trial % 4 == 3) {
      // A second objective on users under the set metric, with items
      // constrained structurally.
      metrics.users = AttributeMetric::kSetOverlap;
      spec.objectives.push_back({{Component::kUsers, Mode::kDiversity}, 0.5});
      spec.constraints = {{{Component::kItems, Mode::kSimilarity}, unit(rng) * 0.6}};
    } else {
      for (Component c : {Component::kUsers, Component::kItems}) {
        if (unit(rng) < 0.6) {
          spec.constraints.push_back(
              {{c, unit(rng) < 0.5 ? Mode::kSimilarity : Mode::kDiversity},
               unit(rng) * 0.7});
        }
      }
    }
    if (trial % 5 == 0) spec.describability = Describability::kUser;
    const OracleResult o = BruteForce(groups, spec, store, metrics);
    const auto r = ExactSolve({store, groups, spec, metrics});
    ASSERT_EQ(r.has_value(), o.found) << "trial " << trial;
    if (!o.found) continue;
    ++found;
    EXPECT_NEAR(r->score, o.score, 1e-12) << "trial " << trial;
    EXPECT_TRUE(r->feasible);
    if (o.score - o.runner_up > 1e-9) {
      EXPECT_EQ(AsInts(r->groups), o.best) << "trial " << trial;
    }
  }
  EXPECT_GT(found, 40);
}

}  // namespace
}  // namespace tagdm
