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

#ifndef TAGDM_FDP_H_
#define TAGDM_FDP_H_

// Diversity maximization as facility dispersion: greedy MAX-AVG selection
// over a pairwise distance matrix of tag signatures.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tagdm/problem.h"

namespace tagdm {

enum class DistanceMetric {
  kAngular,     // angle / pi, a metric
  kComplement,  // 1 - cosine, no triangle inequality
};

DistanceMetric ParseDistanceMetric(std::string_view name);
std::string_view DistanceMetricName(DistanceMetric metric);

// Angle between two vectors divided by pi.
double AngularDistance(std::span<const double> x, std::span<const double> y);

// A fixed set of vectors with distances computed on demand.
class PointSet {
 public:
  // Throws InvalidSignatureError when a signature is invalid.
  PointSet(std::span<const TaggingGroup> groups, DistanceMetric metric);
  // Throws InvalidArgument for ragged input and InvalidSignatureError for a
  // zero vector.
  PointSet(const std::vector<std::vector<double>>& vectors,
           DistanceMetric metric);

  std::size_t size() const { return n_; }
  std::size_t dimension() const { return dim_; }
  DistanceMetric metric() const { return metric_; }

  double Distance(std::size_t a, std::size_t b) const;
  // Cosine of the unit vectors. Distance never increases with it beyond
  // rounding, so it ranks pairs without the cost of a full distance.
  double Closeness(std::size_t a, std::size_t b) const;

 private:
  template <typename VectorAt>
  void Load(VectorAt vector_at);

  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  DistanceMetric metric_ = DistanceMetric::kAngular;
  std::vector<double> units_;  // [point][dimension]
  std::vector<double> raw_;    // kept for the complement metric
};

// Every pairwise distance of a point set, materialized.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(const PointSet& points);
  DistanceMatrix(std::span<const TaggingGroup> groups, DistanceMetric metric)
      : DistanceMatrix(PointSet(groups, metric)) {}
  DistanceMatrix(const std::vector<std::vector<double>>& vectors,
                 DistanceMetric metric)
      : DistanceMatrix(PointSet(vectors, metric)) {}

  std::size_t size() const { return n_; }
  DistanceMetric metric() const { return metric_; }
  double operator()(std::size_t a, std::size_t b) const {
    return entries_[a * n_ + b];
  }

 private:
  std::size_t n_ = 0;
  DistanceMetric metric_ = DistanceMetric::kAngular;
  std::vector<double> entries_;
};

enum class DispersionMode {
  kMaxAvg,  // seed with the farthest pair, add the farthest point
  kMinAvg,  // seed with the closest pair, add the closest point
};

DispersionMode ParseDispersionMode(std::string_view name);
std::string_view DispersionModeName(DispersionMode mode);

// Step-by-step record of a greedy run: the order points were chosen in and,
// for each added point, its summed distance to the points before it. The
// seed pair's entries both hold the seed edge weight.
struct DispersionTrace {
  std::vector<std::size_t> order;
  std::vector<double> marginals;
};

// Pair admissibility used by the folded variant; empty admits everything.
using PairFilter = std::function<bool(std::size_t, std::size_t)>;

struct SeedEdge {
  std::size_t a = 0;  // a < b
  std::size_t b = 0;
  double weight = 0.0;
};

// The `count` best admissible edges for seeding, best first: largest
// weight for max-avg, smallest for min-avg, ties to the smaller pair.
std::vector<SeedEdge> SeedEdges(const PointSet& points,
                                DispersionMode mode,
                                const PairFilter& admissible,
                                std::size_t count);

// Greedy growth from a seed edge: each step adds the admissible point with
// the best summed distance to the chosen ones, ties to the smallest index.
// std::nullopt when growth stalls before k points.
std::optional<std::vector<std::size_t>> GrowFromSeed(
    const PointSet& points, std::size_t k, DispersionMode mode,
    const SeedEdge& seed, const PairFilter& admissible = {},
    DispersionTrace* trace = nullptr);

// Greedy dispersion over all n points. Ties go to the smallest index
// (lexicographically smallest pair for the seed). Returns the chosen points
// ascending, or std::nullopt when the filter leaves no seed pair or stalls
// growth before k points.
std::optional<std::vector<std::size_t>> GreedyDispersion(
    const PointSet& points, std::size_t k, DispersionMode mode,
    const PairFilter& admissible = {}, DispersionTrace* trace = nullptr);

struct FdpOptions {
  DistanceMetric metric = DistanceMetric::kAngular;
  // Unset: max-avg for diversity objectives, min-avg for similarity ones.
  std::optional<DispersionMode> mode;
  // Metric for the per-pair constraint checks of the folded variant.
  // Unset: the instance's metric configuration.
  std::optional<MetricConfig> pair_metrics;
  // Folded variant only: when a run stalls or its set fails the final
  // check, start over from the next best seed edge, at most this often.
  int restarts = 0;
};

// Greedy over all groups with k = spec.k_hi; the result is not filtered.
// Throws InvalidArgument when k < 2 or k exceeds the group count.
ResultSet DvFdp(const Instance& instance, const FdpOptions& options = {});

// DvFdp, then the single result set is kept only if it is feasible.
std::optional<ResultSet> DvFdpFi(const Instance& instance,
                                 const FdpOptions& options = {});

// Seed and every addition restricted to groups whose pairwise constraint
// scores meet each threshold against every chosen group; the finished set
// must then pass the full feasibility check. See FdpOptions::restarts.
std::optional<ResultSet> DvFdpFo(const Instance& instance,
                                 const FdpOptions& options = {});

}  // namespace tagdm

#endif  // TAGDM_FDP_H_
