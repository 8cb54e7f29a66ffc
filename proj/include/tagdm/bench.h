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

#ifndef TAGDM_BENCH_H_
#define TAGDM_BENCH_H_

// Timing and quality tables over tuple-count bins.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tagdm/pipeline.h"
#include "tagdm/synth.h"

namespace tagdm {

struct BenchConfig {
  // Tuple file; when empty the tuples come from `synth`.
  std::string data_path;
  SynthOptions synth;
  std::vector<std::size_t> bins;
  std::vector<SolverKind> solvers;
  ProblemSpec spec;
  std::vector<std::uint64_t> seeds = {0};
  std::uint64_t sample_seed = 0;
  Tunables tunables;
  // Solvers incompatible with the spec are skipped instead of failing.
  bool skip_incompatible = true;
};

// Keys: "data" or "synthetic" {tuples, clusters, seed}, "bins", "solvers",
// "problem" (preset name or inline spec object), "k", "k_min", "support",
// "q", "r", "seeds", "sample_seed", "min_group_size", "lsh_bits",
// "lsh_tables", "bucket_max", "metric", "fdp_mode", "fdp_restarts", "exact_budget".
BenchConfig ParseBenchConfig(std::string_view json_text);

struct BenchRow {
  std::size_t bin = 0;
  SolverKind solver = SolverKind::kExact;
  std::uint64_t seed = 0;
  std::size_t groups = 0;
  double runtime_ms = 0.0;
  std::string status;  // ok, no_result, budget_exceeded
  std::optional<double> score;
  std::optional<double> quality;
  bool feasible = false;
  std::vector<GroupIndex> selection;
};

// Uniform sample of `count` tuples without replacement (all of them when
// count >= size), renumbered in original order.
TupleStore SampleTuples(const TupleStore& store, std::size_t count,
                        std::uint64_t seed);

// Rows ordered by bin, solver and seed as listed in the config.
std::vector<BenchRow> RunBenchmark(const BenchConfig& config);

void WriteBenchCsv(const std::vector<BenchRow>& rows, std::ostream& out);

}  // namespace tagdm

#endif  // TAGDM_BENCH_H_
