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

#include "tagdm/problem.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "json.hpp"
#include "tagdm/error.h"

namespace tagdm {

std::string_view DescribabilityName(Describability d) {
  switch (d) {
    case Describability::kUser:
      return "user";
    case Describability::kItem:
      return "item";
    case Describability::kEither:
      return "either";
  }
  return "?";
}

Describability ParseDescribability(std::string_view name) {
  if (name == "user") return Describability::kUser;
  if (name == "item") return Describability::kItem;
  if (name == "either") return Describability::kEither;
  throw InvalidArgument("unknown describability '" + std::string(name) + "'");
}

bool IsDescribable(const GroupDescriptor& descriptor, Describability d) {
  switch (d) {
    case Describability::kUser:
      return descriptor.Constrains(Dimension::kUser);
    case Describability::kItem:
      return descriptor.Constrains(Dimension::kItem);
    case Describability::kEither:
      return descriptor.size() > 0;
  }
  return false;
}

void ProblemSpec::Validate() const {
  if (k_lo < 1 || k_hi < k_lo) {
    throw InvalidArgument("need 1 <= k_lo <= k_hi");
  }
  if (objectives.empty()) throw InvalidArgument("no objective given");
  for (const Constraint& c : constraints) {
    // Thresholds above 1 are well formed, merely unsatisfiable.
    if (!std::isfinite(c.threshold) || c.threshold < 0.0) {
      throw InvalidArgument("constraint threshold must be finite and >= 0");
    }
    for (const Objective& o : objectives) {
      if (o.measure.component == c.measure.component) {
        throw InvalidArgument(
            std::string("dimension '") +
            std::string(ComponentName(c.measure.component)) +
            "' is both constrained and optimized");
      }
    }
  }
  for (const Objective& o : objectives) {
    if (!std::isfinite(o.weight) || o.weight < 0.0) {
      throw InvalidArgument("objective weight must be finite and >= 0");
    }
  }
}

bool ProblemSpec::ObjectivesAll(Mode mode) const {
  return std::all_of(objectives.begin(), objectives.end(),
                     [mode](const Objective& o) { return o.measure.mode == mode; });
}

namespace {

struct PresetRow {
  std::string_view name;
  Mode users;
  Mode items;
  Mode tags;
};

constexpr Mode kSim = Mode::kSimilarity;
constexpr Mode kDiv = Mode::kDiversity;

constexpr PresetRow kPresets[] = {
    {"problem1", kSim, kSim, kSim}, {"problem2", kSim, kDiv, kSim},
    {"problem3", kDiv, kSim, kSim}, {"problem4", kDiv, kSim, kDiv},
    {"problem5", kSim, kDiv, kDiv}, {"problem6", kSim, kSim, kDiv},
};

}  // namespace

ProblemSpec Preset(std::string_view name) {
  for (const PresetRow& row : kPresets) {
    if (row.name != name) continue;
    ProblemSpec spec;
    spec.k_lo = 1;
    spec.k_hi = 3;
    spec.support_p = 350;
    spec.constraints = {{{Component::kUsers, row.users}, 0.5},
                        {{Component::kItems, row.items}, 0.5}};
    spec.objectives = {{{Component::kTags, row.tags}, 1.0}};
    spec.describability = Describability::kEither;
    return spec;
  }
  throw InvalidArgument("unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> PresetNames() {
  std::vector<std::string> names;
  for (const PresetRow& row : kPresets) names.emplace_back(row.name);
  return names;
}

ProblemSpec ParseProblemSpec(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("problem spec: ") + e.what());
  }
  ProblemSpec spec;
  try {
    spec.k_lo = j.value("k_lo", spec.k_lo);
    spec.k_hi = j.value("k_hi", spec.k_hi);
    spec.support_p = j.value("support_p", spec.support_p);
    for (const auto& c : j.value("constraints", nlohmann::json::array())) {
      spec.constraints.push_back(
          {{ParseComponent(c.at("dimension").get<std::string>()),
            ParseMode(c.at("mode").get<std::string>())},
           c.at("threshold").get<double>()});
    }
    for (const auto& o : j.value("objectives", nlohmann::json::array())) {
      spec.objectives.push_back(
          {{ParseComponent(o.at("dimension").get<std::string>()),
            ParseMode(o.at("mode").get<std::string>())},
           o.value("weight", 1.0)});
    }
    spec.describability =
        ParseDescribability(j.value("describability", std::string("either")));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("problem spec: ") + e.what());
  }
  spec.Validate();
  return spec;
}

std::string ProblemSpecToJson(const ProblemSpec& spec) {
  nlohmann::ordered_json j;
  j["k_lo"] = spec.k_lo;
  j["k_hi"] = spec.k_hi;
  j["support_p"] = spec.support_p;
  j["constraints"] = nlohmann::ordered_json::array();
  for (const Constraint& c : spec.constraints) {
    j["constraints"].push_back({{"dimension", ComponentName(c.measure.component)},
                                {"mode", ModeName(c.measure.mode)},
                                {"threshold", c.threshold}});
  }
  j["objectives"] = nlohmann::ordered_json::array();
  for (const Objective& o : spec.objectives) {
    j["objectives"].push_back({{"dimension", ComponentName(o.measure.component)},
                               {"mode", ModeName(o.measure.mode)},
                               {"weight", o.weight}});
  }
  j["describability"] = DescribabilityName(spec.describability);
  return j.dump(2);
}

namespace {

// Shared by the span and index paths so both produce identical sums. `pair`
// returns the pairwise score of positions (i, j) of the candidate.
template <typename PairFn>
double AggregateOver(std::size_t count, Mode mode, PairFn pair) {
  if (count < 2) return VacuousScore(mode);
  double sum = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) sum += pair(i, j);
  }
  const double pairs =
      static_cast<double>(count) * static_cast<double>(count - 1) / 2.0;
  return sum / pairs;
}

// NaN marks an aggregate that cannot be computed (dimension absent).
template <typename PairFn>
double AggregateOrNan(std::size_t count, Mode mode, PairFn pair) {
  try {
    return AggregateOver(count, mode, pair);
  } catch (const DimensionAbsentError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

template <typename GroupAt>
double ObjectiveOver(std::size_t count, const ProblemSpec& spec,
                     const MetricConfig& config, GroupAt group_at) {
  double total = 0.0;
  for (const Objective& o : spec.objectives) {
    total += o.weight * AggregateOver(count, o.measure.mode,
                                      [&](std::size_t i, std::size_t j) {
                                        return PairwiseScore(group_at(i),
                                                             group_at(j),
                                                             o.measure, config);
                                      });
  }
  return total;
}

template <typename GroupAt, typename SupportFn>
FeasibilityReport FeasibilityOver(std::size_t count, const ProblemSpec& spec,
                                  const MetricConfig& config, GroupAt group_at,
                                  SupportFn support) {
  FeasibilityReport report;
  report.size_ok = count >= static_cast<std::size_t>(spec.k_lo) &&
                   count <= static_cast<std::size_t>(spec.k_hi);
  report.describable = true;
  for (std::size_t i = 0; i < count; ++i) {
    if (!IsDescribable(group_at(i).descriptor, spec.describability)) {
      report.describable = false;
    }
  }
  report.support = support();
  report.support_ok = report.support >= spec.support_p;
  bool constraints_ok = true;
  for (const Constraint& c : spec.constraints) {
    ConstraintValue value;
    value.constraint = c;
    value.achieved = AggregateOrNan(
        count, c.measure.mode, [&](std::size_t i, std::size_t j) {
          return PairwiseScore(group_at(i), group_at(j), c.measure, config);
        });
    value.satisfied = value.achieved >= c.threshold;  // false for NaN
    constraints_ok = constraints_ok && value.satisfied;
    report.constraints.push_back(value);
  }
  report.feasible = report.size_ok && report.describable &&
                    report.support_ok && constraints_ok;
  return report;
}

}  // namespace

double AggregateOrVacuous(std::span<const TaggingGroup> groups,
                          MiningMeasure measure, const MetricConfig& config) {
  return AggregateOver(groups.size(), measure.mode,
                       [&](std::size_t i, std::size_t j) {
                         return PairwiseScore(groups[i], groups[j], measure,
                                              config);
                       });
}

double ObjectiveScore(std::span<const TaggingGroup> candidate,
                      const ProblemSpec& spec, const MetricConfig& config) {
  return ObjectiveOver(candidate.size(), spec, config,
                       [&](std::size_t i) -> const TaggingGroup& {
                         return candidate[i];
                       });
}

FeasibilityReport CheckFeasible(std::span<const TaggingGroup> candidate,
                                const ProblemSpec& spec,
                                const TupleStore& store,
                                const MetricConfig& config) {
  return FeasibilityOver(
      candidate.size(), spec, config,
      [&](std::size_t i) -> const TaggingGroup& { return candidate[i]; },
      [&] { return GroupSupport(candidate, store); });
}

Evaluator::Evaluator(const Instance& instance) : instance_(instance) {}

double Evaluator::PairScore(GroupIndex a, GroupIndex b,
                            MiningMeasure measure) const {
  return PairwiseScore(instance_.groups[a], instance_.groups[b], measure,
                       instance_.metrics);
}

double Evaluator::Objective(std::span<const GroupIndex> selection) const {
  return ObjectiveOver(selection.size(), instance_.spec, instance_.metrics,
                       [&](std::size_t i) -> const TaggingGroup& {
                         return instance_.groups[selection[i]];
                       });
}

FeasibilityReport Evaluator::CheckFeasible(
    std::span<const GroupIndex> selection) const {
  return FeasibilityOver(
      selection.size(), instance_.spec, instance_.metrics,
      [&](std::size_t i) -> const TaggingGroup& {
        return instance_.groups[selection[i]];
      },
      [&] {
        return GroupSupport(instance_.groups, selection, instance_.store);
      });
}

ResultSet Evaluator::MakeResult(std::vector<GroupIndex> selection,
                                std::string solver) const {
  std::sort(selection.begin(), selection.end());
  ResultSet result;
  const FeasibilityReport report = CheckFeasible(selection);
  result.score = Objective(selection);
  result.support = report.support;
  result.constraint_report = report.constraints;
  result.feasible = report.feasible;
  result.groups = std::move(selection);
  result.solver = std::move(solver);
  return result;
}

bool BetterCandidate(double score, std::span<const GroupIndex> selection,
                     double best_score, std::span<const GroupIndex> best) {
  if (score != best_score) return score > best_score;
  return std::lexicographical_compare(selection.begin(), selection.end(),
                                      best.begin(), best.end());
}

}  // namespace tagdm
