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

#include "tagdm/pipeline.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "tagdm/error.h"
#include "tagdm/io.h"

namespace tagdm {

namespace {

constexpr std::array<std::pair<std::string_view, SolverKind>, 7> kSolvers = {{
    {"exact", SolverKind::kExact},
    {"sm-lsh", SolverKind::kSmLsh},
    {"sm-lsh-fi", SolverKind::kSmLshFi},
    {"sm-lsh-fo", SolverKind::kSmLshFo},
    {"dv-fdp", SolverKind::kDvFdp},
    {"dv-fdp-fi", SolverKind::kDvFdpFi},
    {"dv-fdp-fo", SolverKind::kDvFdpFo},
}};

bool IsLsh(SolverKind s) {
  return s == SolverKind::kSmLsh || s == SolverKind::kSmLshFi ||
         s == SolverKind::kSmLshFo;
}

bool IsFdp(SolverKind s) {
  return s == SolverKind::kDvFdp || s == SolverKind::kDvFdpFi ||
         s == SolverKind::kDvFdpFo;
}

std::string FormatDouble(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream out;
  out << std::setprecision(6) << v;
  return out.str();
}

// Shortest text that reads back to the same double.
std::string ExactDouble(double v) {
  char buffer[32];
  const auto end = std::to_chars(buffer, buffer + sizeof buffer, v).ptr;
  return std::string(buffer, end);
}

}  // namespace

SolverKind ParseSolver(std::string_view name) {
  for (const auto& [n, kind] : kSolvers) {
    if (n == name) return kind;
  }
  throw InvalidArgument("unknown solver '" + std::string(name) + "'");
}

std::string_view SolverName(SolverKind solver) {
  for (const auto& [n, kind] : kSolvers) {
    if (kind == solver) return n;
  }
  return "?";
}

void CheckCompatible(const ProblemSpec& spec, SolverKind solver,
                     const Tunables& tunables) {
  spec.Validate();
  if (IsLsh(solver) && !spec.ObjectivesAll(Mode::kSimilarity)) {
    throw InvalidArgument(std::string(SolverName(solver)) +
                          " needs similarity objectives");
  }
  if (IsFdp(solver) && !spec.ObjectivesAll(Mode::kDiversity)) {
    const bool min_avg = tunables.fdp.mode == DispersionMode::kMinAvg;
    if (!(min_avg && spec.ObjectivesAll(Mode::kSimilarity))) {
      throw InvalidArgument(std::string(SolverName(solver)) +
                            " needs diversity objectives (or similarity "
                            "objectives with --fdp-mode min-avg)");
    }
  }
}

PreparedData Prepare(const TupleStore& data,
                     const std::vector<std::string>& scope,
                     const ProblemSpec& spec, const Tunables& tunables) {
  std::vector<Predicate> filters;
  bool unknown_value = false;
  for (const std::string& text : scope) {
    const auto p = ParsePredicate(text, data);
    if (!p) {
      unknown_value = true;
      continue;
    }
    filters.push_back(*p);
  }
  std::vector<TupleId> ids;
  if (!unknown_value) ids = MatchingTuples(data, filters);
  if (ids.empty()) throw NoDataError("no data in scope");

  PreparedData out{data.Subset(ids), {}, {}, {}, 0, 0};
  const std::size_t attributes = out.store.user_schema().num_attributes() +
                                 out.store.item_schema().num_attributes();
  const std::size_t max_predicates =
      tunables.max_predicates > 0 ? tunables.max_predicates : attributes;
  std::vector<TaggingGroup> all =
      EnumerateGroups(out.store, tunables.min_group_size, max_predicates);
  out.enumerated = all.size();

  std::map<int, std::vector<double>> loaded;
  if (!tunables.signatures_path.empty()) {
    loaded = ReadSignaturesFile(tunables.signatures_path);
    const std::size_t dim = loaded.empty() ? 0 : loaded.begin()->second.size();
    for (std::size_t j = 0; j < dim; ++j) {
      out.coordinates.push_back("topic" + std::to_string(j));
    }
  } else {
    const Vocabulary vocab =
        BuildVocabulary(out.store, tunables.vocabulary_size);
    for (std::uint32_t tag : vocab.tags()) {
      out.coordinates.push_back(out.store.tag_name(tag));
    }
    for (TaggingGroup& g : all) {
      try {
        g.signature = BuildSignature(g, vocab, out.store);
      } catch (const InvalidSignatureError&) {
        g.signature = {};
      }
    }
  }

  for (std::size_t e = 0; e < all.size(); ++e) {
    TaggingGroup& g = all[e];
    if (!IsDescribable(g.descriptor, spec.describability)) continue;
    if (!tunables.signatures_path.empty()) {
      const auto it = loaded.find(static_cast<int>(e));
      g.signature = {};
      if (it != loaded.end()) g.signature.weights = it->second;
    }
    if (!g.signature.valid()) {
      ++out.dropped_invalid;
      continue;
    }
    out.groups.push_back(std::move(g));
    out.enumeration_index.push_back(e);
  }
  return out;
}

std::optional<ResultSet> Solve(const Instance& instance, SolverKind solver,
                               const Tunables& tunables) {
  // A pool too small for the size window has no feasible answer.
  const std::size_t n = instance.groups.size();
  if (n == 0 || n < static_cast<std::size_t>(instance.spec.k_lo) ||
      (IsFdp(solver) && n < static_cast<std::size_t>(instance.spec.k_hi))) {
    return std::nullopt;
  }
  LshOptions lsh = tunables.lsh;
  lsh.seed = tunables.seed;
  std::optional<ResultSet> result;
  switch (solver) {
    case SolverKind::kExact:
      result = ExactSolve(instance, tunables.exact);
      break;
    case SolverKind::kSmLsh:
      result = SmLsh(instance, lsh);
      break;
    case SolverKind::kSmLshFi:
      result = SmLshFi(instance, lsh);
      break;
    case SolverKind::kSmLshFo:
      result = SmLshFo(instance, lsh);
      break;
    case SolverKind::kDvFdp:
      result = DvFdp(instance, tunables.fdp);
      break;
    case SolverKind::kDvFdpFi:
      result = DvFdpFi(instance, tunables.fdp);
      break;
    case SolverKind::kDvFdpFo:
      result = DvFdpFo(instance, tunables.fdp);
      break;
  }
  if (result) result->seed = tunables.seed;
  return result;
}

double AverageCosine(std::span<const TaggingGroup> groups,
                     std::span<const GroupIndex> selection) {
  if (selection.size() < 2) return 1.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < selection.size(); ++i) {
    for (std::size_t j = i + 1; j < selection.size(); ++j) {
      sum += CosineSimilarity(groups[selection[i]].signature,
                              groups[selection[j]].signature);
    }
  }
  const double n = static_cast<double>(selection.size());
  return sum / (n * (n - 1.0) / 2.0);
}

Report RunQuery(const Query& query, const TupleStore& data) {
  CheckCompatible(query.spec, query.solver, query.tunables);
  PreparedData prepared =
      Prepare(data, query.scope, query.spec, query.tunables);

  Report report;
  report.solver = query.solver;
  report.spec = query.spec;
  report.scope = query.scope;
  report.tuples = prepared.store.size();
  report.groups = prepared.groups.size();
  report.seed = query.tunables.seed;

  const Instance instance{prepared.store, prepared.groups, query.spec,
                          query.tunables.metrics};
  report.result = Solve(instance, query.solver, query.tunables);
  if (!report.result) return report;

  report.found = true;
  report.quality = AverageCosine(prepared.groups, report.result->groups);
  for (GroupIndex g : report.result->groups) {
    const TaggingGroup& group = prepared.groups[g];
    ReportGroup rg;
    rg.index = static_cast<GroupIndex>(prepared.enumeration_index[g]);
    rg.descriptor = group.descriptor.ToString(prepared.store);
    rg.size = group.members.size();
    for (std::size_t j = 0; j < group.signature.weights.size(); ++j) {
      if (group.signature.weights[j] > 0.0) {
        rg.tag_weights.emplace_back(prepared.coordinates[j],
                                    group.signature.weights[j]);
      }
    }
    std::sort(rg.tag_weights.begin(), rg.tag_weights.end(),
              [](const auto& a, const auto& b) {
                return a.second != b.second ? a.second > b.second
                                            : a.first < b.first;
              });
    report.chosen.push_back(std::move(rg));
  }
  return report;
}

ReportFormat ParseReportFormat(std::string_view name) {
  if (name == "text") return ReportFormat::kText;
  if (name == "json") return ReportFormat::kJson;
  if (name == "csv") return ReportFormat::kCsv;
  throw InvalidArgument("unknown format '" + std::string(name) + "'");
}

namespace {

nlohmann::ordered_json NumberOrNull(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

std::string RenderJson(const Report& report, bool include_timing) {
  nlohmann::ordered_json j;
  j["status"] = report.found ? "ok" : "no_result";
  j["solver"] = SolverName(report.solver);
  j["seed"] = report.seed;
  j["scope"] = report.scope;
  j["problem"] = nlohmann::ordered_json::parse(ProblemSpecToJson(report.spec));
  j["tuples"] = report.tuples;
  j["groups"] = report.groups;
  nlohmann::ordered_json chosen = nlohmann::ordered_json::array();
  for (const ReportGroup& g : report.chosen) {
    nlohmann::ordered_json tags = nlohmann::ordered_json::array();
    for (const auto& [tag, w] : g.tag_weights) tags.push_back({tag, w});
    chosen.push_back({{"index", g.index},
                      {"descriptor", g.descriptor},
                      {"size", g.size},
                      {"tags", tags}});
  }
  j["chosen"] = chosen;
  const ResultSet* r = report.result ? &*report.result : nullptr;
  j["score"] = r ? NumberOrNull(r->score) : nullptr;
  j["quality"] = r ? NumberOrNull(report.quality) : nullptr;
  j["support"] = r ? nlohmann::ordered_json(r->support) : nullptr;
  j["feasible"] = r ? r->feasible : false;
  nlohmann::ordered_json constraints = nlohmann::ordered_json::array();
  if (r) {
    for (const ConstraintValue& c : r->constraint_report) {
      constraints.push_back(
          {{"dimension", ComponentName(c.constraint.measure.component)},
           {"mode", ModeName(c.constraint.measure.mode)},
           {"threshold", c.constraint.threshold},
           {"achieved", NumberOrNull(c.achieved)},
           {"satisfied", c.satisfied}});
    }
  }
  j["constraints"] = constraints;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  if (r) {
    for (const auto& [k, v] : r->parameters) params[k] = v;
  }
  j["parameters"] = params;
  if (include_timing) {
    j["runtime_ms"] = r ? nlohmann::ordered_json(r->runtime_ms) : nullptr;
  }
  return j.dump(2) + "\n";
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string RenderCsv(const Report& report, bool include_timing) {
  std::ostringstream out;
  out << "status,solver,seed,score,quality,support,feasible,group_index,"
         "descriptor,size";
  if (include_timing) out << ",runtime_ms";
  out << "\n";
  const std::string status = report.found ? "ok" : "no_result";
  auto prefix = [&] {
    out << status << ',' << SolverName(report.solver) << ',' << report.seed
        << ',';
    if (report.result) {
      out << ExactDouble(report.result->score) << ','
          << ExactDouble(report.quality) << ',' << report.result->support << ','
          << (report.result->feasible ? "true" : "false");
    } else {
      out << ",,,false";
    }
  };
  auto suffix = [&] {
    if (include_timing) {
      out << ',';
      if (report.result) out << report.result->runtime_ms;
    }
    out << "\n";
  };
  if (report.chosen.empty()) {
    prefix();
    out << ",,,";
    suffix();
  }
  for (const ReportGroup& g : report.chosen) {
    prefix();
    out << ',' << g.index << ',' << CsvField(g.descriptor) << ',' << g.size;
    suffix();
  }
  return out.str();
}

std::string RenderText(const Report& report, bool include_timing) {
  std::ostringstream out;
  out << "solver: " << SolverName(report.solver) << "  seed: " << report.seed
      << "\n";
  out << "tuples in scope: " << report.tuples
      << "  candidate groups: " << report.groups << "\n";
  if (!report.result) {
    out << "status: no result (no feasible group set found)\n";
    return out.str();
  }
  const ResultSet& r = *report.result;
  out << "status: ok\n";
  out << "score: " << FormatDouble(r.score)
      << "  quality (avg cosine): " << FormatDouble(report.quality) << "\n";
  out << "support: " << r.support << " (required " << report.spec.support_p
      << ")  feasible: " << (r.feasible ? "yes" : "no") << "\n";
  for (const ConstraintValue& c : r.constraint_report) {
    out << "  " << ComponentName(c.constraint.measure.component) << ' '
        << ModeName(c.constraint.measure.mode) << " >= "
        << FormatDouble(c.constraint.threshold) << ": "
        << FormatDouble(c.achieved) << (c.satisfied ? "  ok" : "  violated")
        << "\n";
  }
  if (include_timing) out << "runtime: " << r.runtime_ms << " ms\n";
  out << "groups:\n";
  for (const ReportGroup& g : report.chosen) {
    out << "  [" << g.index << "] " << g.descriptor << "  (" << g.size
        << " tuples)\n    ";
    const std::size_t shown = std::min<std::size_t>(g.tag_weights.size(), 8);
    for (std::size_t t = 0; t < shown; ++t) {
      if (t) out << ", ";
      out << g.tag_weights[t].first << ':' << FormatDouble(g.tag_weights[t].second);
    }
    if (shown < g.tag_weights.size()) out << ", ...";
    out << "\n";
  }
  return out.str();
}

}  // namespace

std::string RenderReport(const Report& report, ReportFormat format,
                         bool include_timing) {
  switch (format) {
    case ReportFormat::kText:
      return RenderText(report, include_timing);
    case ReportFormat::kJson:
      return RenderJson(report, include_timing);
    case ReportFormat::kCsv:
      return RenderCsv(report, include_timing);
  }
  return {};
}

}  // namespace tagdm
