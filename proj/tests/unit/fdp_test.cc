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

#include "tagdm/fdp.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <tuple>
#include <vector>

#include <gtest/gtest.h>

#include "tagdm/error.h"
#include "tagdm/exact.h"
#include "test_util.h"

namespace tagdm {
namespace {

using testing::ForEachSubset;
using testing::RandomGroupPool;
using testing::RandomStore;
using testing::RandomVector;

// Sum of pairwise distances of the chosen points.
double Spread(const DistanceMatrix& d, const std::vector<std::size_t>& pts) {
  double sum = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) sum += d(pts[i], pts[j]);
  }
  return sum;
}

double BestSpread(const DistanceMatrix& d, int k) {
  double best = 0;
  ForEachSubset(static_cast<int>(d.size()), k, k, [&](const std::vector<int>& s) {
    best = std::max(best, Spread(d, {s.begin(), s.end()}));
  });
  return best;
}

TEST(DistanceTest, Examples) {
  const std::vector<double> x = {1, 2, 0}, y = {2, 4, 0}, z = {0, 0, 3};
  EXPECT_EQ(AngularDistance(x, x), 0.0);
  EXPECT_NEAR(AngularDistance(x, y), 0.0, 1e-12);
  EXPECT_NEAR(AngularDistance(x, z), 0.5, 1e-15);
  EXPECT_NEAR(AngularDistance(std::vector<double>{1, 0}, std::vector<double>{-1, 0}),
              1.0, 1e-15);
  EXPECT_NEAR(AngularDistance(std::vector<double>{1, 0}, std::vector<double>{1, 1}),
              0.25, 1e-15);
  EXPECT_THROW(AngularDistance(x, std::vector<double>{0, 0, 0}), InvalidSignatureError);
  EXPECT_THROW(AngularDistance(x, std::vector<double>{1}), InvalidArgument);

  const PointSet angular({x, y, z}, DistanceMetric::kAngular);
  const PointSet complement({x, y, z}, DistanceMetric::kComplement);
  EXPECT_EQ(angular.Distance(0, 0), 0.0);
  EXPECT_EQ(complement.Distance(1, 1), 0.0);
  EXPECT_NEAR(angular.Distance(0, 2), 0.5, 1e-15);
  EXPECT_EQ(complement.Distance(0, 2), 1.0);
  EXPECT_NEAR(complement.Distance(0, 1), 0.0, 1e-15);
  EXPECT_THROW(PointSet({x, {1.0}}, DistanceMetric::kAngular), InvalidArgument);
  EXPECT_THROW(PointSet({x, {0.0, 0.0, 0.0}}, DistanceMetric::kAngular),
               InvalidSignatureError);
}

TEST(DistanceTest, InvalidGroupSignature) {
  std::vector<TaggingGroup> groups(2);
  groups[0].signature.weights = {1, 0};
  groups[1].signature.weights = {0, 0};
  EXPECT_THROW(PointSet(groups, DistanceMetric::kAngular), InvalidSignatureError);
}

TEST(DistanceMatrixTest, SymmetricZeroDiagonalAndConsistent) {
  std::mt19937_64 rng(1);
  std::vector<std::vector<double>> vecs;
  for (int i = 0; i < 40; ++i) vecs.push_back(RandomVector(rng, 7, 0.6));
  for (DistanceMetric metric : {DistanceMetric::kAngular, DistanceMetric::kComplement}) {
    const PointSet points(vecs, metric);
    const DistanceMatrix d(points);
    for (std::size_t a = 0; a < d.size(); ++a) {
      EXPECT_EQ(d(a, a), 0.0);
      for (std::size_t b = 0; b < d.size(); ++b) {
        EXPECT_EQ(d(a, b), d(b, a));
        EXPECT_EQ(d(a, b), points.Distance(a, b));
        EXPECT_GE(d(a, b), 0.0);
        EXPECT_LE(d(a, b), 1.0);
        if (a == b) continue;
        const double expect = metric == DistanceMetric::kAngular
                                  ? AngularDistance(vecs[a], vecs[b])
                                  : 1.0 - CosineSimilarity(vecs[a], vecs[b]);
        EXPECT_NEAR(d(a, b), expect, 1e-12);
      }
    }
  }
}

TEST(DistanceMatrixTest, AngularTriangleInequality) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> normal;
  std::vector<std::vector<double>> vecs;
  for (int i = 0; i < 30; ++i) {
    if (i % 2) {
      vecs.push_back(RandomVector(rng, 5, 0.4));
    } else {
      std::vector<double> v(5);
      for (double& x : v) x = normal(rng);
      vecs.push_back(v);
    }
  }
  const DistanceMatrix d(vecs, DistanceMetric::kAngular);
  for (std::size_t a = 0; a < d.size(); ++a) {
    for (std::size_t b = 0; b < d.size(); ++b) {
      for (std::size_t c = 0; c < d.size(); ++c) {
        EXPECT_LE(d(a, c), d(a, b) + d(b, c) + 1e-12);
      }
    }
  }
}

TEST(GreedyDispersionTest, TargetBounds) {
  const PointSet two({{1, 0}, {0, 1}}, DistanceMetric::kAngular);
  EXPECT_EQ(*GreedyDispersion(two, 2, DispersionMode::kMaxAvg),
            (std::vector<std::size_t>{0, 1}));
  EXPECT_THROW(GreedyDispersion(two, 1, DispersionMode::kMaxAvg), InvalidArgument);
  EXPECT_THROW(GreedyDispersion(two, 3, DispersionMode::kMaxAvg), InvalidArgument);
}

TEST(GreedyDispersionTest, FourAnglesMatchBruteForce) {
  // Angles 0, 30, 90 and 180 degrees, halved into the non-negative quadrant.
  std::vector<std::vector<double>> vecs;
  for (double deg : {0.0, 30.0, 90.0, 180.0}) {
    const double half = deg * std::numbers::pi / 360.0;
    vecs.push_back({std::cos(half), std::sin(half), 0.0});
  }
  const PointSet points(vecs, DistanceMetric::kAngular);
  const DistanceMatrix d(points);
  const auto chosen = GreedyDispersion(points, 3, DispersionMode::kMaxAvg);
  ASSERT_TRUE(chosen.has_value());
  EXPECT_NEAR(Spread(d, *chosen), BestSpread(d, 3), 1e-12);
}

TEST(GreedyDispersionTest, OrthogonalTrace) {
  const PointSet points({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}},
                        DistanceMetric::kAngular);
  DispersionTrace trace;
  const auto chosen = GreedyDispersion(points, 3, DispersionMode::kMaxAvg, {}, &trace);
  ASSERT_TRUE(chosen.has_value());
  EXPECT_EQ(*chosen, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(trace.order, (std::vector<std::size_t>{0, 1, 2}));
  ASSERT_EQ(trace.marginals.size(), 3u);
  EXPECT_NEAR(trace.marginals[2], 1.0, 1e-15);
}

TEST(GreedyDispersionTest, WithinFactorFourOfOptimum) {
  std::mt19937_64 rng(3);
  double worst = 1.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 5 + trial % 10;
    const int k = 2 + trial % 3;
    std::vector<std::vector<double>> vecs;
    for (int i = 0; i < n; ++i) vecs.push_back(RandomVector(rng, 6, 0.5));
    const PointSet points(vecs, DistanceMetric::kAngular);
    const DistanceMatrix d(points);
    const auto chosen = GreedyDispersion(points, k, DispersionMode::kMaxAvg);
    ASSERT_TRUE(chosen.has_value());
    const double greedy = Spread(d, *chosen);
    const double best = BestSpread(d, k);
    EXPECT_LE(greedy, best + 1e-12);
    if (best == 0) continue;
    ASSERT_GT(greedy, 0);
    EXPECT_LE(best / greedy, 4.0);
    worst = std::max(worst, best / greedy);
  }
  EXPECT_LT(worst, 4.0);
}

TEST(GreedyDispersionTest, TraceTakesBestMarginal) {
  std::mt19937_64 rng(4);
  for (DispersionMode mode : {DispersionMode::kMaxAvg, DispersionMode::kMinAvg}) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<std::vector<double>> vecs;
      for (int i = 0; i < 25; ++i) vecs.push_back(RandomVector(rng, 5, 0.5));
      const PointSet points(vecs, DistanceMetric::kAngular);
      const DistanceMatrix d(points);
      DispersionTrace trace;
      ASSERT_TRUE(GreedyDispersion(points, 6, mode, {}, &trace).has_value());
      ASSERT_EQ(trace.order.size(), 6u);
      EXPECT_EQ(trace.marginals[0], d(trace.order[0], trace.order[1]));
      double spread = trace.marginals[0];
      for (std::size_t t = 2; t < trace.order.size(); ++t) {
        const std::vector<std::size_t> before(trace.order.begin(),
                                              trace.order.begin() + t);
        double best = mode == DispersionMode::kMaxAvg ? -1 : 1e300;
        for (std::size_t z = 0; z < d.size(); ++z) {
          if (std::find(before.begin(), before.end(), z) != before.end()) continue;
          double m = 0;
          for (std::size_t p : before) m += d(z, p);
          best = mode == DispersionMode::kMaxAvg ? std::max(best, m) : std::min(best, m);
        }
        EXPECT_NEAR(trace.marginals[t], best, 1e-12);
        const double next = spread + trace.marginals[t];
        EXPECT_GE(next, spread);
        spread = next;
      }
    }
  }
}

TEST(SeedEdgesTest, MatchesFullRanking) {
  std::mt19937_64 rng(5);
  std::vector<std::vector<double>> vecs;
  for (int i = 0; i < 60; ++i) vecs.push_back(RandomVector(rng, 4, 0.5));
  vecs.push_back(vecs[3]);  // ties at distance zero
  const PointSet points(vecs, DistanceMetric::kAngular);
  const DistanceMatrix d(points);
  const PairFilter odd_sum = [](std::size_t a, std::size_t b) { return (a + b) % 2; };
  for (DispersionMode mode : {DispersionMode::kMaxAvg, DispersionMode::kMinAvg}) {
    for (const PairFilter& filter : {PairFilter(), odd_sum}) {
      std::vector<std::tuple<double, std::size_t, std::size_t>> all;
      for (std::size_t a = 0; a < d.size(); ++a) {
        for (std::size_t b = a + 1; b < d.size(); ++b) {
          if (filter && !filter(a, b)) continue;
          const double key = mode == DispersionMode::kMaxAvg ? -d(a, b) : d(a, b);
          all.emplace_back(key, a, b);
        }
      }
      std::sort(all.begin(), all.end());
      const auto edges = SeedEdges(points, mode, filter, 25);
      ASSERT_EQ(edges.size(), 25u);
      for (std::size_t e = 0; e < edges.size(); ++e) {
        EXPECT_EQ(edges[e].a, std::get<1>(all[e]));
        EXPECT_EQ(edges[e].b, std::get<2>(all[e]));
        EXPECT_EQ(edges[e].weight, d(edges[e].a, edges[e].b));
      }
    }
  }
  const PairFilter none = [](std::size_t, std::size_t) { return false; };
  EXPECT_TRUE(SeedEdges(points, DispersionMode::kMaxAvg, none, 3).empty());
  EXPECT_FALSE(GreedyDispersion(points, 3, DispersionMode::kMaxAvg, none).has_value());
}

class DvFdpTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::mt19937_64 rng(6);
    store_ = std::make_unique<TupleStore>(RandomStore(rng, 300, {2, 3}, {3, 2}, 8));
    groups_ = RandomGroupPool(rng, *store_, 40);
  }
  ProblemSpec DiversitySpec(int k) const {
    ProblemSpec spec;
    spec.k_lo = 1;
    spec.k_hi = k;
    spec.objectives = {{{Component::kTags, Mode::kDiversity}, 1.0}};
    return spec;
  }
  std::unique_ptr<TupleStore> store_;
  std::vector<TaggingGroup> groups_;
};

TEST_F(DvFdpTest, Basics) {
  const ProblemSpec spec = DiversitySpec(3);
  const ResultSet a = DvFdp({*store_, groups_, spec});
  const ResultSet b = DvFdp({*store_, groups_, spec});
  EXPECT_EQ(a.groups, b.groups);
  EXPECT_EQ(a.groups.size(), 3u);
  EXPECT_EQ(a.parameters.at("mode"), "max-avg");
  const std::vector<TaggingGroup> two(groups_.begin(), groups_.begin() + 2);
  EXPECT_EQ(DvFdp({*store_, two, DiversitySpec(2)}).groups,
            (std::vector<GroupIndex>{0, 1}));
  EXPECT_THROW(DvFdp({*store_, two, DiversitySpec(3)}), InvalidArgument);
  EXPECT_THROW(DvFdp({*store_, groups_, DiversitySpec(1)}), InvalidArgument);
  ProblemSpec sim = DiversitySpec(3);
  sim.objectives[0].measure.mode = Mode::kSimilarity;
  EXPECT_EQ(DvFdp({*store_, groups_, sim}).parameters.at("mode"), "min-avg");
}

TEST_F(DvFdpTest, FilterVacuousAndUnsatisfiable) {
  ProblemSpec spec = DiversitySpec(3);
  spec.constraints = {{{Component::kUsers, Mode::kSimilarity}, 0.0},
                      {{Component::kItems, Mode::kDiversity}, 0.0}};
  const MetricConfig sets{AttributeMetric::kSetOverlap, AttributeMetric::kSetOverlap, {}};
  const Instance inst{*store_, groups_, spec, sets};
  const auto fi = DvFdpFi(inst);
  ASSERT_TRUE(fi.has_value());
  EXPECT_EQ(fi->groups, DvFdp(inst).groups);
  spec.support_p = store_->size() + 1;
  EXPECT_FALSE(DvFdpFi(inst).has_value());
}

TEST_F(DvFdpTest, FoldVacuousMatchesBase) {
  const ProblemSpec spec = DiversitySpec(4);
  const Instance inst{*store_, groups_, spec};
  const auto fo = DvFdpFo(inst);
  ASSERT_TRUE(fo.has_value());
  EXPECT_EQ(fo->groups, DvFdp(inst).groups);
  EXPECT_EQ(fo->parameters.at("seeds_tried"), "1");
  EXPECT_THROW(DvFdpFo(inst, {.restarts = -1}), InvalidArgument);
}

TEST_F(DvFdpTest, FoldUnsatisfiablePairThreshold) {
  std::vector<TaggingGroup> users_only;
  for (const TaggingGroup& g : groups_) {
    if (!g.descriptor.Constrains(Dimension::kItem)) users_only.push_back(g);
  }
  ASSERT_GE(users_only.size(), 3u);
  ProblemSpec spec = DiversitySpec(2);
  spec.constraints = {{{Component::kUsers, Mode::kSimilarity}, 1.0}};
  EXPECT_FALSE(DvFdpFo({*store_, users_only, spec}).has_value());
  EXPECT_FALSE(DvFdpFo({*store_, users_only, spec}, {.restarts = 50}).has_value());
}

TEST_F(DvFdpTest, OutputsRevalidate) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int fo_found = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::vector<TaggingGroup> pool = RandomGroupPool(rng, *store_, 14);
    ProblemSpec spec = DiversitySpec(2 + trial % 3);
    spec.support_p = static_cast<std::size_t>(unit(rng) * 100);
    spec.constraints = {
        {{Component::kUsers, unit(rng) < 0.5 ? Mode::kSimilarity : Mode::kDiversity},
         unit(rng) * 0.5},
        {{Component::kItems, unit(rng) < 0.5 ? Mode::kSimilarity : Mode::kDiversity},
         unit(rng) * 0.5}};
    const Instance inst{*store_, pool, spec};
    const auto exact = ExactSolve(inst);
    const int restarts = trial % 2 ? 0 : 20;
    const auto fo = DvFdpFo(inst, {.restarts = restarts});
    for (const auto& r : {DvFdpFi(inst), fo}) {
      if (!r) continue;
      std::vector<TaggingGroup> chosen;
      for (GroupIndex g : r->groups) chosen.push_back(pool[g]);
      EXPECT_TRUE(CheckFeasible(chosen, spec, *store_).feasible);
      ASSERT_TRUE(exact.has_value());
      EXPECT_LE(r->score, exact->score + 1e-12);
    }
    if (!fo) continue;
    ++fo_found;
    // Every pair inside the folded set meets each per-pair threshold.
    for (std::size_t i = 0; i < fo->groups.size(); ++i) {
      for (std::size_t j = i + 1; j < fo->groups.size(); ++j) {
        for (const Constraint& c : spec.constraints) {
          EXPECT_GE(PairwiseScore(pool[fo->groups[i]], pool[fo->groups[j]], c.measure),
                    c.threshold);
        }
      }
    }
    if (restarts > 0) {
      const auto single = DvFdpFo(inst);
      if (single) EXPECT_EQ(single->groups, fo->groups);
    }
  }
  EXPECT_GT(fo_found, 5);
}

}  // namespace
}  // namespace tagdm
