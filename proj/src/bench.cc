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

#include "tagdm/bench.h"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <numeric>
#include <ostream>

#include <boost/random/uniform_int_distribution.hpp>

#include "json.hpp"
#include "tagdm/error.h"
#include "tagdm/io.h"
#include "tagdm/random.h"

namespace tagdm {

namespace {

void SetThreshold(ProblemSpec& spec, Component component, double value) {
  for (Constraint& c : spec.constraints) {
    if (c.measure.component == component) c.threshold = value;
  }
}

}  // namespace

BenchConfig ParseBenchConfig(std::string_view json_text) {
  BenchConfig config;
  try {
    const nlohmann::json j = nlohmann::json::parse(json_text);
    config.data_path = j.value("data", std::string());
    if (j.contains("synthetic")) {
      const auto& s = j["synthetic"];
      config.synth.tuples = s.value("tuples", config.synth.tuples);
      config.synth.clusters = s.value("clusters", config.synth.clusters);
      config.synth.seed = s.value("seed", config.synth.seed);
    }
    config.bins = j.at("bins").get<std::vector<std::size_t>>();
    for (const auto& s : j.at("solvers")) {
      config.solvers.push_back(ParseSolver(s.get<std::string>()));
    }
    const auto& problem = j.at("problem");
    config.spec = problem.is_string() ? Preset(problem.get<std::string>())
                                      : ParseProblemSpec(problem.dump());
    if (j.contains("k")) config.spec.k_hi = j["k"].get<int>();
    if (j.contains("k_min")) config.spec.k_lo = j["k_min"].get<int>();
    config.spec.k_lo = std::min(config.spec.k_lo, config.spec.k_hi);
    if (j.contains("support")) {
      config.spec.support_p = j["support"].get<std::size_t>();
    }
    if (j.contains("q")) {
      SetThreshold(config.spec, Component::kUsers, j["q"].get<double>());
    }
    if (j.contains("r")) {
      SetThreshold(config.spec, Component::kItems, j["r"].get<double>());
    }
    config.spec.Validate();
    if (j.contains("seeds")) {
      config.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
    }
    config.sample_seed = j.value("sample_seed", config.sample_seed);
    Tunables& t = config.tunables;
    t.min_group_size = j.value("min_group_size", t.min_group_size);
    t.lsh.initial_bits = j.value("lsh_bits", t.lsh.initial_bits);
    t.lsh.tables = j.value("lsh_tables", t.lsh.tables);
    t.lsh.bucket_max = j.value("bucket_max", t.lsh.bucket_max);
    if (j.contains("metric")) {
      t.fdp.metric = ParseDistanceMetric(j["metric"].get<std::string>());
    }
    if (j.contains("fdp_mode")) {
      t.fdp.mode = ParseDispersionMode(j["fdp_mode"].get<std::string>());
    }
    t.fdp.restarts = j.value("fdp_restarts", t.fdp.restarts);
    t.exact.max_candidates = j.value("exact_budget", t.exact.max_candidates);
    config.skip_incompatible =
        j.value("skip_incompatible", config.skip_incompatible);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("bench config: ") + e.what());
  }
  if (config.bins.empty() || config.solvers.empty() || config.seeds.empty()) {
    throw InvalidArgument("bench config: bins, solvers and seeds must be set");
  }
  return config;
}

TupleStore SampleTuples(const TupleStore& store, std::size_t count,
                        std::uint64_t seed) {
  std::vector<TupleId> ids(store.size());
  std::iota(ids.begin(), ids.end(), TupleId{0});
  if (count < ids.size()) {
    // Partial Fisher-Yates.
    Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
      boost::random::uniform_int_distribution<std::size_t> pick(
          i, ids.size() - 1);
      std::swap(ids[i], ids[pick(rng)]);
    }
    ids.resize(count);
    std::sort(ids.begin(), ids.end());
  }
  return store.Subset(ids);
}

std::vector<BenchRow> RunBenchmark(const BenchConfig& config) {
  const TupleStore data = config.data_path.empty()
                              ? GenerateSynthetic(config.synth)
                              : ReadTuplesFile(config.data_path);
  std::vector<BenchRow> rows;
  for (std::size_t b = 0; b < config.bins.size(); ++b) {
    const std::size_t bin = config.bins[b];
    const TupleStore sample =
        SampleTuples(data, bin, MixSeed(config.sample_seed, b));
    const PreparedData prepared =
        Prepare(sample, {}, config.spec, config.tunables);
    const Instance instance{prepared.store, prepared.groups, config.spec,
                            config.tunables.metrics};
    for (SolverKind solver : config.solvers) {
      try {
        CheckCompatible(config.spec, solver, config.tunables);
      } catch (const InvalidArgument&) {
        if (config.skip_incompatible) continue;
        throw;
      }
      for (std::uint64_t seed : config.seeds) {
        Tunables tunables = config.tunables;
        tunables.seed = seed;
        BenchRow row;
        row.bin = bin;
        row.solver = solver;
        row.seed = seed;
        row.groups = prepared.groups.size();
        const auto start = std::chrono::steady_clock::now();
        std::optional<ResultSet> result;
        try {
          result = Solve(instance, solver, tunables);
          row.status = result ? "ok" : "no_result";
        } catch (const BudgetExceededError&) {
          row.status = "budget_exceeded";
        }
        row.runtime_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
        if (result) {
          row.score = result->score;
          row.quality = AverageCosine(prepared.groups, result->groups);
          row.feasible = result->feasible;
          row.selection = result->groups;
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

void WriteBenchCsv(const std::vector<BenchRow>& rows, std::ostream& out) {
  out << "bin,solver,seed,groups,runtime_ms,status,score,quality,feasible\n";
  for (const BenchRow& r : rows) {
    out << r.bin << ',' << SolverName(r.solver) << ',' << r.seed << ','
        << r.groups << ',' << std::fixed << std::setprecision(3)
        << r.runtime_ms << ',' << r.status << ',' << std::defaultfloat
        << std::setprecision(10);
    if (r.score) out << *r.score;
    out << ',';
    if (r.quality) out << *r.quality;
    out << ',' << (r.feasible ? "true" : "false") << '\n';
  }
}

}  // namespace tagdm
