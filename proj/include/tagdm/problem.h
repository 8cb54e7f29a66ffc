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

#ifndef TAGDM_PROBLEM_H_
#define TAGDM_PROBLEM_H_

// Problem specification, constraint checking and objective scoring shared by
// every solver.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tagdm/model.h"
#include "tagdm/signature.h"

namespace tagdm {

enum class Describability { kUser, kItem, kEither };

std::string_view DescribabilityName(Describability d);
Describability ParseDescribability(std::string_view name);
bool IsDescribable(const GroupDescriptor& descriptor, Describability d);

struct Constraint {
  MiningMeasure measure;
  double threshold = 0.0;
};

struct Objective {
  MiningMeasure measure;
  double weight = 1.0;
};

struct ProblemSpec {
  int k_lo = 1;
  int k_hi = 3;
  std::size_t support_p = 0;
  std::vector<Constraint> constraints;
  std::vector<Objective> objectives;
  Describability describability = Describability::kEither;

  // Throws InvalidArgument when a field is out of range, objectives are
  // missing, or a component is both constrained and optimized.
  void Validate() const;
  bool ObjectivesAll(Mode mode) const;
};

// problem1 .. problem6: constraints on users and items, objective on tags,
// with k in [1, 3], p = 350 and q = r = 0.5.
ProblemSpec Preset(std::string_view name);
std::vector<std::string> PresetNames();

// JSON round trip. Missing keys take the ProblemSpec defaults; weights
// default to 1.
ProblemSpec ParseProblemSpec(std::string_view json_text);
std::string ProblemSpecToJson(const ProblemSpec& spec);

struct ConstraintValue {
  Constraint constraint;
  double achieved = 0.0;  // NaN when the aggregate is undefined
  bool satisfied = false;
};

struct FeasibilityReport {
  bool feasible = false;
  bool size_ok = false;
  bool describable = false;
  std::size_t support = 0;
  bool support_ok = false;
  std::vector<ConstraintValue> constraints;
};

struct ResultSet {
  std::vector<GroupIndex> groups;  // ascending
  double score = 0.0;
  std::size_t support = 0;
  std::vector<ConstraintValue> constraint_report;
  bool feasible = false;
  std::string solver;
  std::int64_t runtime_ms = 0;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> parameters;
};

// Everything a solver reads. The referenced objects must outlive it.
struct Instance {
  const TupleStore& store;
  std::span<const TaggingGroup> groups;
  const ProblemSpec& spec;
  MetricConfig metrics{};
};

// Aggregate of `measure` over the groups, with the vacuous score for fewer
// than two groups. Pairs are visited in ascending (i, j) order.
double AggregateOrVacuous(std::span<const TaggingGroup> groups,
                          MiningMeasure measure,
                          const MetricConfig& config = {});

// Sum over objectives of weight x aggregate.
double ObjectiveScore(std::span<const TaggingGroup> candidate,
                      const ProblemSpec& spec,
                      const MetricConfig& config = {});

// Size bounds, describability of every group, support and every threshold.
// The report carries all achieved values whatever the verdict.
FeasibilityReport CheckFeasible(std::span<const TaggingGroup> candidate,
                                const ProblemSpec& spec,
                                const TupleStore& store,
                                const MetricConfig& config = {});

// Index-based scoring over an instance's group list. Results agree bit for
// bit with the span-based functions above on the same groups.
class Evaluator {
 public:
  explicit Evaluator(const Instance& instance);

  const Instance& instance() const { return instance_; }
  std::size_t num_groups() const { return instance_.groups.size(); }

  double PairScore(GroupIndex a, GroupIndex b, MiningMeasure measure) const;
  // `selection` must be ascending.
  double Objective(std::span<const GroupIndex> selection) const;
  FeasibilityReport CheckFeasible(std::span<const GroupIndex> selection) const;

  // Sorts the selection and fills score, support and the constraint report.
  ResultSet MakeResult(std::vector<GroupIndex> selection,
                       std::string solver) const;

 private:
  Instance instance_;
};

// Candidate ordering used for every tie: higher score wins, then the
// lexicographically smaller ascending index tuple.
bool BetterCandidate(double score, std::span<const GroupIndex> selection,
                     double best_score, std::span<const GroupIndex> best);

}  // namespace tagdm

#endif  // TAGDM_PROBLEM_H_
