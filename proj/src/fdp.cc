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
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "tagdm/error.h"
#include "tagdm/parallel.h"

namespace tagdm {

DistanceMetric ParseDistanceMetric(std::string_view name) {
  if (name == "angular") return DistanceMetric::kAngular;
  if (name == "complement") return DistanceMetric::kComplement;
  throw InvalidArgument("unknown metric '" + std::string(name) + "'");
}

std::string_view DistanceMetricName(DistanceMetric metric) {
  return metric == DistanceMetric::kAngular ? "angular" : "complement";
}

DispersionMode ParseDispersionMode(std::string_view name) {
  if (name == "max-avg") return DispersionMode::kMaxAvg;
  if (name == "min-avg") return DispersionMode::kMinAvg;
  throw InvalidArgument("unknown fdp mode '" + std::string(name) + "'");
}

std::string_view DispersionModeName(DispersionMode mode) {
  return mode == DispersionMode::kMaxAvg ? "max-avg" : "min-avg";
}

namespace {

// Angle / pi between two unit vectors as 2 atan2(|a - b|, |a + b|):
// accurate near 0 and pi, and exactly 0 for equal unit vectors.
double UnitAngle(const double* a, const double* b, std::size_t dim) {
  double diff = 0.0, sum = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    const double d = a[j] - b[j], s = a[j] + b[j];
    diff += d * d;
    sum += s * s;
  }
  return 2.0 * std::atan2(std::sqrt(diff), std::sqrt(sum)) / std::numbers::pi;
}

}  // namespace

double AngularDistance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw InvalidArgument("angular distance: vectors differ in length");
  }
  double xx = 0.0, yy = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    xx += x[j] * x[j];
    yy += y[j] * y[j];
  }
  if (xx == 0.0 || yy == 0.0) {
    throw InvalidSignatureError("undefined angle: zero vector");
  }
  const double nx = std::sqrt(xx), ny = std::sqrt(yy);
  std::vector<double> a(x.size()), b(y.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    a[j] = x[j] / nx;
    b[j] = y[j] / ny;
  }
  return UnitAngle(a.data(), b.data(), a.size());
}

template <typename VectorAt>
void PointSet::Load(VectorAt vector_at) {
  dim_ = n_ == 0 ? 0 : vector_at(0).size();
  units_.resize(n_ * dim_);
  if (metric_ == DistanceMetric::kComplement) raw_.resize(n_ * dim_);
  for (std::size_t a = 0; a < n_; ++a) {
    const std::span<const double> x = vector_at(a);
    if (x.size() != dim_) {
      throw InvalidArgument("point set: vectors differ in length");
    }
    double xx = 0.0;
    for (double v : x) xx += v * v;
    if (xx == 0.0) throw InvalidSignatureError("undefined angle: zero vector");
    const double norm = std::sqrt(xx);
    for (std::size_t j = 0; j < dim_; ++j) units_[a * dim_ + j] = x[j] / norm;
    if (!raw_.empty()) std::copy(x.begin(), x.end(), raw_.begin() + a * dim_);
  }
}

PointSet::PointSet(std::span<const TaggingGroup> groups, DistanceMetric metric)
    : n_(groups.size()), metric_(metric) {
  for (const TaggingGroup& g : groups) {
    if (!g.signature.valid()) {
      throw InvalidSignatureError("point set: invalid signature");
    }
  }
  Load([&](std::size_t i) {
    return std::span<const double>(groups[i].signature.weights);
  });
}

PointSet::PointSet(const std::vector<std::vector<double>>& vectors,
                   DistanceMetric metric)
    : n_(vectors.size()), metric_(metric) {
  Load([&](std::size_t i) { return std::span<const double>(vectors[i]); });
}

double PointSet::Distance(std::size_t a, std::size_t b) const {
  if (a == b) return 0.0;
  if (metric_ == DistanceMetric::kAngular) {
    return UnitAngle(&units_[a * dim_], &units_[b * dim_], dim_);
  }
  return 1.0 - CosineSimilarity(
                   std::span<const double>(&raw_[a * dim_], dim_),
                   std::span<const double>(&raw_[b * dim_], dim_));
}

double PointSet::Closeness(std::size_t a, std::size_t b) const {
  const double* x = &units_[a * dim_];
  const double* y = &units_[b * dim_];
  double dot = 0.0;
  for (std::size_t j = 0; j < dim_; ++j) dot += x[j] * y[j];
  return dot;
}

DistanceMatrix::DistanceMatrix(const PointSet& points)
    : n_(points.size()), metric_(points.metric()), entries_(n_ * n_, 0.0) {
  ParallelFor(n_, [&](std::size_t begin, std::size_t end) {
    for (std::size_t a = begin; a < end; ++a) {
      for (std::size_t b = a + 1; b < n_; ++b) {
        entries_[a * n_ + b] = points.Distance(a, b);
      }
    }
  });
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = 0; b < a; ++b) entries_[a * n_ + b] = entries_[b * n_ + a];
  }
}

namespace {

void CheckTarget(std::size_t n, std::size_t k) {
  if (k < 2 || k > n) throw InvalidArgument("dispersion: need 2 <= k <= n");
}

}  // namespace

std::vector<SeedEdge> SeedEdges(const PointSet& points, DispersionMode mode,
                                const PairFilter& admissible,
                                std::size_t count) {
  std::vector<SeedEdge> edges;
  if (count == 0) return edges;
  const std::size_t n = points.size();
  const bool maximize = mode == DispersionMode::kMaxAvg;

  // Rank every pair by closeness first and compute true distances only for
  // the survivors. A pair whose key trails the count-th best admissible key
  // by more than kMargin cannot make the final list whatever the rounding.
  constexpr double kMargin = 1e-9;
  struct Candidate {
    std::size_t a, b;
    double key;  // larger is better
  };
  std::vector<Candidate> pool;
  double cutoff = -std::numeric_limits<double>::infinity();
  std::size_t next_shrink = 2 * count + 4096;
  auto shrink = [&] {
    if (pool.size() < count) return;
    auto kth = pool.begin() + static_cast<std::ptrdiff_t>(count - 1);
    std::nth_element(pool.begin(), kth, pool.end(),
                     [](const Candidate& x, const Candidate& y) {
                       return x.key > y.key;
                     });
    cutoff = std::max(cutoff, kth->key);
    std::erase_if(pool, [&](const Candidate& c) {
      return c.key < cutoff - kMargin;
    });
    next_shrink = 2 * pool.size() + 4096;
  };
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double closeness = points.Closeness(a, b);
      const double key = maximize ? -closeness : closeness;
      if (key < cutoff - kMargin) continue;
      if (admissible && !admissible(a, b)) continue;
      pool.push_back({a, b, key});
      if (pool.size() >= next_shrink) shrink();
    }
  }
  shrink();

  edges.reserve(pool.size());
  for (const Candidate& c : pool) {
    edges.push_back({c.a, c.b, points.Distance(c.a, c.b)});
  }
  // Better weight first, then the lexicographically smaller pair.
  std::sort(edges.begin(), edges.end(),
            [maximize](const SeedEdge& x, const SeedEdge& y) {
              if (x.weight != y.weight) {
                return maximize ? x.weight > y.weight : x.weight < y.weight;
              }
              return std::pair(x.a, x.b) < std::pair(y.a, y.b);
            });
  if (edges.size() > count) edges.resize(count);
  return edges;
}

std::optional<std::vector<std::size_t>> GrowFromSeed(
    const PointSet& points, std::size_t k, DispersionMode mode,
    const SeedEdge& seed, const PairFilter& admissible,
    DispersionTrace* trace) {
  const std::size_t n = points.size();
  CheckTarget(n, k);
  const bool maximize = mode == DispersionMode::kMaxAvg;
  auto better = [maximize](double v, double best) {
    return maximize ? v > best : v < best;
  };

  std::vector<std::size_t> chosen = {seed.a, seed.b};
  std::vector<bool> in_set(n, false);
  in_set[seed.a] = in_set[seed.b] = true;
  // marginal[z] = summed distance from z to the chosen points
  std::vector<double> marginal(n, 0.0);
  std::vector<bool> blocked(n, false);
  auto absorb = [&](std::size_t p) {
    for (std::size_t z = 0; z < n; ++z) {
      if (in_set[z] || blocked[z]) continue;
      marginal[z] += points.Distance(z, p);
      if (admissible && !admissible(std::min(z, p), std::max(z, p))) {
        blocked[z] = true;
      }
    }
  };
  absorb(seed.a);
  absorb(seed.b);
  if (trace) {
    trace->order = chosen;
    trace->marginals = {seed.weight, seed.weight};
  }

  while (chosen.size() < k) {
    std::size_t pick = n;
    for (std::size_t z = 0; z < n; ++z) {
      if (in_set[z] || blocked[z]) continue;
      if (pick == n || better(marginal[z], marginal[pick])) pick = z;
    }
    if (pick == n) return std::nullopt;
    in_set[pick] = true;
    chosen.push_back(pick);
    if (trace) {
      trace->order.push_back(pick);
      trace->marginals.push_back(marginal[pick]);
    }
    absorb(pick);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

std::optional<std::vector<std::size_t>> GreedyDispersion(
    const PointSet& points, std::size_t k, DispersionMode mode,
    const PairFilter& admissible, DispersionTrace* trace) {
  CheckTarget(points.size(), k);
  const auto seeds = SeedEdges(points, mode, admissible, 1);
  if (seeds.empty()) return std::nullopt;
  return GrowFromSeed(points, k, mode, seeds.front(), admissible, trace);
}

namespace {

DispersionMode ResolveMode(const ProblemSpec& spec, const FdpOptions& options) {
  if (options.mode) return *options.mode;
  if (spec.ObjectivesAll(Mode::kDiversity)) return DispersionMode::kMaxAvg;
  if (spec.ObjectivesAll(Mode::kSimilarity)) return DispersionMode::kMinAvg;
  throw InvalidArgument("dv-fdp: objectives mix similarity and diversity");
}

std::size_t TargetSize(const Instance& instance) {
  instance.spec.Validate();
  const std::size_t k = static_cast<std::size_t>(instance.spec.k_hi);
  if (k < 2) throw InvalidArgument("dv-fdp: k must be at least 2");
  if (k > instance.groups.size()) {
    throw InvalidArgument("dv-fdp: k = " + std::to_string(k) + " exceeds " +
                          std::to_string(instance.groups.size()) + " groups");
  }
  return k;
}

std::int64_t ElapsedMs(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - start)
      .count();
}

ResultSet Finish(const Evaluator& eval, const std::vector<std::size_t>& points,
                 std::string name, DistanceMetric metric, DispersionMode mode) {
  std::vector<GroupIndex> selection(points.begin(), points.end());
  ResultSet result = eval.MakeResult(std::move(selection), std::move(name));
  result.parameters["metric"] = std::string(DistanceMetricName(metric));
  result.parameters["mode"] = std::string(DispersionModeName(mode));
  return result;
}

}  // namespace

ResultSet DvFdp(const Instance& instance, const FdpOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t k = TargetSize(instance);
  const DispersionMode mode = ResolveMode(instance.spec, options);
  const PointSet points(instance.groups, options.metric);
  // Without a filter a seed pair always exists and growth never stalls.
  const auto chosen = *GreedyDispersion(points, k, mode);
  ResultSet result =
      Finish(Evaluator(instance), chosen, "dv-fdp", options.metric, mode);
  result.runtime_ms = ElapsedMs(start);
  return result;
}

std::optional<ResultSet> DvFdpFi(const Instance& instance,
                                 const FdpOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  ResultSet result = DvFdp(instance, options);
  if (!result.feasible) return std::nullopt;
  result.solver = "dv-fdp-fi";
  result.runtime_ms = ElapsedMs(start);
  return result;
}

std::optional<ResultSet> DvFdpFo(const Instance& instance,
                                 const FdpOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t k = TargetSize(instance);
  const DispersionMode mode = ResolveMode(instance.spec, options);
  const PointSet points(instance.groups, options.metric);
  const MetricConfig pair_metrics =
      options.pair_metrics.value_or(instance.metrics);
  const ProblemSpec& spec = instance.spec;

  std::vector<bool> describable(instance.groups.size());
  for (std::size_t g = 0; g < instance.groups.size(); ++g) {
    describable[g] =
        IsDescribable(instance.groups[g].descriptor, spec.describability);
  }
  const PairFilter admissible = [&](std::size_t a, std::size_t b) {
    if (!describable[a] || !describable[b]) return false;
    for (const Constraint& c : spec.constraints) {
      try {
        if (!(PairwiseScore(instance.groups[a], instance.groups[b], c.measure,
                            pair_metrics) >= c.threshold)) {
          return false;
        }
      } catch (const DimensionAbsentError&) {
        return false;
      }
    }
    return true;
  };
  if (options.restarts < 0) throw InvalidArgument("restarts must be >= 0");
  const Evaluator eval(instance);
  const auto seeds = SeedEdges(points, mode, admissible,
                               1 + static_cast<std::size_t>(options.restarts));
  std::optional<ResultSet> found;
  std::size_t tried = 0;
  for (const SeedEdge& seed : seeds) {
    ++tried;
    const auto chosen = GrowFromSeed(points, k, mode, seed, admissible);
    if (!chosen) continue;
    ResultSet result = Finish(eval, *chosen, "dv-fdp-fo", options.metric, mode);
    if (!result.feasible) continue;
    found = std::move(result);
    break;
  }
  if (!found) return std::nullopt;
  ResultSet& result = *found;
  result.parameters["restarts"] = std::to_string(options.restarts);
  result.parameters["seeds_tried"] = std::to_string(tried);
  result.runtime_ms = ElapsedMs(start);
  return found;
}

}  // namespace tagdm
