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
#include <chrono>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "tagdm/error.h"
#include "tagdm/parallel.h"

namespace tagdm {
namespace {

// Slack absorbing the different summation orders of the screening values and
// the canonical score.
constexpr double kScreenEps = 1e-9;
constexpr std::size_t kMaxMatrixEntries = std::size_t{1} << 28;

// Dense pair-score table for one measure over the candidate pool, with the
// per-row and global maxima used by the bounds. Undefined pairs hold NaN.
struct PairTable {
  std::size_t n = 0;
  std::vector<double> values;
  std::vector<double> row_max;
  double global_max = -std::numeric_limits<double>::infinity();

  double at(std::size_t a, std::size_t b) const { return values[a * n + b]; }
};

PairTable BuildTable(const Evaluator& eval, const std::vector<GroupIndex>& pool,
                     MiningMeasure measure) {
  PairTable t;
  t.n = pool.size();
  t.values.assign(t.n * t.n, 0.0);
  ParallelFor(t.n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t a = begin; a < end; ++a) {
      for (std::size_t b = a + 1; b < t.n; ++b) {
        double v;
        try {
          v = eval.PairScore(pool[a], pool[b], measure);
        } catch (const DimensionAbsentError&) {
          v = std::numeric_limits<double>::quiet_NaN();
        }
        t.values[a * t.n + b] = v;
      }
    }
  });
  for (std::size_t a = 0; a < t.n; ++a) {
    for (std::size_t b = 0; b < a; ++b) t.values[a * t.n + b] = t.at(b, a);
  }
  t.row_max.assign(t.n, -std::numeric_limits<double>::infinity());
  for (std::size_t a = 0; a < t.n; ++a) {
    for (std::size_t b = 0; b < t.n; ++b) {
      const double v = t.at(a, b);
      if (a != b && !std::isnan(v)) t.row_max[a] = std::max(t.row_max[a], v);
    }
    t.global_max = std::max(t.global_max, t.row_max[a]);
  }
  return t;
}

class Search {
 public:
  Search(const Evaluator& eval, std::vector<GroupIndex> pool,
         const ExactOptions& options)
      : eval_(eval), spec_(eval.instance().spec), pool_(std::move(pool)),
        options_(options) {
    const std::size_t measures =
        spec_.objectives.size() + spec_.constraints.size();
    if (pool_.size() * pool_.size() * measures > kMaxMatrixEntries) {
      throw BudgetExceededError("exact: " + std::to_string(pool_.size()) +
                                " groups exceed the pair-table limit");
    }
    for (const Objective& o : spec_.objectives) {
      objectives_.push_back(BuildTable(eval_, pool_, o.measure));
      weights_.push_back(o.weight);
    }
    for (const Constraint& c : spec_.constraints) {
      constraints_.push_back(BuildTable(eval_, pool_, c.measure));
      thresholds_.push_back(c.threshold);
    }
  }

  void Run() {
    for (int s = spec_.k_lo; s <= spec_.k_hi; ++s) {
      if (static_cast<std::size_t>(s) > pool_.size()) break;
      size_ = static_cast<std::size_t>(s);
      pairs_ = static_cast<double>(size_) * static_cast<double>(size_ - 1) / 2;
      known_obj_.assign((size_ + 1) * objectives_.size(), 0.0);
      known_con_.assign((size_ + 1) * constraints_.size(), 0.0);
      positions_.clear();
      Descend(0);
    }
  }

  bool found() const { return found_; }
  const std::vector<GroupIndex>& best() const { return best_; }
  std::uint64_t evaluated() const { return evaluated_; }

 private:
  double* ObjRow(std::size_t depth) {
    return known_obj_.data() + depth * objectives_.size();
  }
  double* ConRow(std::size_t depth) {
    return known_con_.data() + depth * constraints_.size();
  }

  // Pair sums at depth + 1 for the prefix extended by pool position `p`.
  void Extend(std::size_t depth, std::size_t p) {
    const double* obj = ObjRow(depth);
    const double* con = ConRow(depth);
    double* next_obj = ObjRow(depth + 1);
    double* next_con = ConRow(depth + 1);
    for (std::size_t m = 0; m < objectives_.size(); ++m) {
      double v = obj[m];
      for (std::size_t q : positions_) v += objectives_[m].at(q, p);
      next_obj[m] = v;
    }
    for (std::size_t c = 0; c < constraints_.size(); ++c) {
      double v = con[c];
      for (std::size_t q : positions_) v += constraints_[c].at(q, p);
      next_con[c] = v;
    }
  }

  // Upper bound of a partial pair sum completed with `rest` more elements.
  double Bound(const PairTable& t, double known, std::size_t rest) const {
    if (rest == 0) return known / pairs_;
    double cross = 0.0;
    for (std::size_t q : positions_) cross += t.row_max[q];
    double total = known + static_cast<double>(rest) * cross;
    if (rest > 1) {
      total += static_cast<double>(rest * (rest - 1) / 2) * t.global_max;
    }
    return total / pairs_;
  }

  // Called with the prefix in positions_ and its sums at depth = its size.
  bool Prunable(std::size_t rest) {
    const std::size_t depth = positions_.size();
    for (std::size_t c = 0; c < constraints_.size(); ++c) {
      const double known = ConRow(depth)[c];
      if (std::isnan(known)) return true;
      if (Bound(constraints_[c], known, rest) + kScreenEps < thresholds_[c]) {
        return true;
      }
    }
    if (!found_) return false;
    double bound = 0.0;
    for (std::size_t m = 0; m < objectives_.size(); ++m) {
      const double known = ObjRow(depth)[m];
      if (std::isnan(known)) return true;
      bound += weights_[m] * Bound(objectives_[m], known, rest);
    }
    return bound + kScreenEps < best_score_;
  }

  void Descend(std::size_t first) {
    const std::size_t depth = positions_.size();
    const std::size_t rest = size_ - depth;
    for (std::size_t p = first; p + rest <= pool_.size(); ++p) {
      Extend(depth, p);
      if (rest == 1) {
        Leaf(p);
        continue;
      }
      positions_.push_back(p);
      if (!Prunable(rest - 1)) Descend(p + 1);
      positions_.pop_back();
    }
  }

  // positions_ + p form a complete candidate whose sums sit at depth size_.
  void Leaf(std::size_t p) {
    if (++evaluated_ > options_.max_candidates) {
      throw BudgetExceededError("exact: more than " +
                                std::to_string(options_.max_candidates) +
                                " candidates");
    }
    if (size_ >= 2) {
      const double* con = ConRow(size_);
      for (std::size_t c = 0; c < constraints_.size(); ++c) {
        const double v = con[c] / pairs_;
        if (std::isnan(v) || v + kScreenEps < thresholds_[c]) return;
      }
      const double* obj = ObjRow(size_);
      double screen = 0.0;
      for (std::size_t m = 0; m < objectives_.size(); ++m) {
        screen += weights_[m] * (obj[m] / pairs_);
      }
      if (std::isnan(screen)) return;
      if (found_ && screen + kScreenEps < best_score_) return;
    }
    std::vector<GroupIndex> selection;
    selection.reserve(size_);
    for (std::size_t q : positions_) selection.push_back(pool_[q]);
    selection.push_back(pool_[p]);
    const double score = eval_.Objective(selection);
    if (found_ && !BetterCandidate(score, selection, best_score_, best_)) {
      return;
    }
    if (!eval_.CheckFeasible(selection).feasible) return;
    found_ = true;
    best_score_ = score;
    best_ = std::move(selection);
  }

  const Evaluator& eval_;
  const ProblemSpec& spec_;
  std::vector<GroupIndex> pool_;
  ExactOptions options_;
  std::vector<PairTable> objectives_;
  std::vector<double> weights_;
  std::vector<PairTable> constraints_;
  std::vector<double> thresholds_;

  std::size_t size_ = 0;
  double pairs_ = 1.0;
  std::vector<std::size_t> positions_;
  // Row d holds the pair sums of the d-element prefix, per objective and
  // per constraint.
  std::vector<double> known_obj_;
  std::vector<double> known_con_;

  bool found_ = false;
  double best_score_ = 0.0;
  std::vector<GroupIndex> best_;
  std::uint64_t evaluated_ = 0;
};

}  // namespace

std::optional<ResultSet> ExactSolve(const Instance& instance,
                                    const ExactOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  instance.spec.Validate();
  const Evaluator eval(instance);
  std::vector<GroupIndex> pool;
  for (std::size_t g = 0; g < instance.groups.size(); ++g) {
    if (IsDescribable(instance.groups[g].descriptor,
                      instance.spec.describability)) {
      pool.push_back(static_cast<GroupIndex>(g));
    }
  }
  Search search(eval, std::move(pool), options);
  search.Run();
  if (!search.found()) return std::nullopt;
  ResultSet result = eval.MakeResult(search.best(), "exact");
  result.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  result.parameters["evaluated"] = std::to_string(search.evaluated());
  return result;
}

}  // namespace tagdm
