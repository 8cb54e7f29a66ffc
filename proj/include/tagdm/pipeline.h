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

#ifndef TAGDM_PIPELINE_H_
#define TAGDM_PIPELINE_H_

// End-to-end query flow: scope the tuples, enumerate describable groups,
// build signatures, dispatch a solver and render the report.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tagdm/exact.h"
#include "tagdm/fdp.h"
#include "tagdm/lsh.h"
#include "tagdm/model.h"
#include "tagdm/problem.h"
#include "tagdm/signature.h"

namespace tagdm {

enum class SolverKind {
  kExact,
  kSmLsh,
  kSmLshFi,
  kSmLshFo,
  kDvFdp,
  kDvFdpFi,
  kDvFdpFo,
};

SolverKind ParseSolver(std::string_view name);
std::string_view SolverName(SolverKind solver);

struct Tunables;

// Similarity objectives go to exact or the LSH family, diversity objectives
// to exact or the FDP family. The FDP family also takes similarity
// objectives when min-avg mode is requested explicitly. Throws
// InvalidArgument otherwise.
void CheckCompatible(const ProblemSpec& spec, SolverKind solver,
                     const Tunables& tunables);

struct Tunables {
  std::size_t min_group_size = 5;
  std::size_t max_predicates = 0;  // 0: one per attribute
  std::size_t vocabulary_size = 25;
  std::uint64_t seed = 0;
  LshOptions lsh;  // lsh.seed is overwritten by `seed`
  FdpOptions fdp;
  ExactOptions exact;
  MetricConfig metrics;
  std::string signatures_path;  // precomputed signatures, optional
};

struct Query {
  std::vector<std::string> scope;  // "u:gender=m", ...
  ProblemSpec spec;
  SolverKind solver = SolverKind::kExact;
  Tunables tunables;
};

struct PreparedData {
  TupleStore store;
  std::vector<TaggingGroup> groups;
  // Position of each kept group in the enumeration (signature file index).
  std::vector<std::size_t> enumeration_index;
  // Name of each signature coordinate.
  std::vector<std::string> coordinates;
  std::size_t enumerated = 0;
  std::size_t dropped_invalid = 0;
};

// Throws NoDataError("no data in scope") when the scope matches no tuple.
PreparedData Prepare(const TupleStore& data,
                     const std::vector<std::string>& scope,
                     const ProblemSpec& spec, const Tunables& tunables);

// Runs one solver. std::nullopt when the solver finds no answer or the
// pool holds fewer groups than the solver needs.
std::optional<ResultSet> Solve(const Instance& instance, SolverKind solver,
                               const Tunables& tunables);

// Mean pairwise cosine of the selected groups' signatures; 1 for a single
// group.
double AverageCosine(std::span<const TaggingGroup> groups,
                     std::span<const GroupIndex> selection);

struct ReportGroup {
  GroupIndex index = 0;
  std::string descriptor;
  std::size_t size = 0;
  std::vector<std::pair<std::string, double>> tag_weights;  // descending, then by name
};

struct Report {
  bool found = false;
  SolverKind solver = SolverKind::kExact;
  ProblemSpec spec;
  std::vector<std::string> scope;
  std::size_t tuples = 0;
  std::size_t groups = 0;
  std::uint64_t seed = 0;
  std::optional<ResultSet> result;
  std::vector<ReportGroup> chosen;
  double quality = 0.0;
};

Report RunQuery(const Query& query, const TupleStore& data);

enum class ReportFormat { kText, kJson, kCsv };
ReportFormat ParseReportFormat(std::string_view name);

// Every format leaves out wall-clock fields unless
// `include_timing`, so equal inputs render to equal bytes.
std::string RenderReport(const Report& report, ReportFormat format,
                         bool include_timing);

}  // namespace tagdm

#endif  // TAGDM_PIPELINE_H_
