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

// tagdm: mine tagging-behavior groups from the command line.
//
// Exit codes: 0 success, 2 no result, 1 error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tagdm/bench.h"
#include "tagdm/error.h"
#include "tagdm/io.h"
#include "tagdm/pipeline.h"
#include "tagdm/problem.h"
#include "tagdm/synth.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNoResult = 2;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw tagdm::InvalidArgument("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

tagdm::ProblemSpec LoadProblem(const std::string& name) {
  for (const std::string& preset : tagdm::PresetNames()) {
    if (preset == name) return tagdm::Preset(name);
  }
  return tagdm::ParseProblemSpec(ReadFile(name));
}

void SetThreshold(tagdm::ProblemSpec& spec, tagdm::Component component,
                  double value) {
  bool found = false;
  for (tagdm::Constraint& c : spec.constraints) {
    if (c.measure.component == component) {
      c.threshold = value;
      found = true;
    }
  }
  if (!found) {
    throw tagdm::InvalidArgument(
        "the problem has no constraint on " +
        std::string(tagdm::ComponentName(component)));
  }
}

struct RunArgs {
  std::string data;
  std::string problem;
  std::string solver;
  std::vector<std::string> scope;
  std::optional<int> k;
  std::optional<int> k_min;
  std::optional<std::size_t> support;
  std::optional<double> q;
  std::optional<double> r;
  std::uint64_t seed = 0;
  std::string format = "text";
  bool timing = false;
  std::size_t min_group_size = 5;
  std::size_t max_predicates = 0;
  std::size_t vocabulary = 25;
  int lsh_bits = 10;
  int lsh_tables = 1;
  int bucket_max = 12;
  std::string metric = "angular";
  std::string fdp_mode;
  int fdp_restarts = 0;
  std::string users_metric = "structural";
  std::string items_metric = "structural";
  std::uint64_t exact_budget = tagdm::ExactOptions{}.max_candidates;
  std::string signatures;
};

int Run(const RunArgs& args) {
  tagdm::Query query;
  query.spec = LoadProblem(args.problem);
  if (args.k) {
    query.spec.k_hi = *args.k;
    query.spec.k_lo = std::min(query.spec.k_lo, *args.k);
  }
  if (args.k_min) query.spec.k_lo = *args.k_min;
  if (args.support) query.spec.support_p = *args.support;
  if (args.q) SetThreshold(query.spec, tagdm::Component::kUsers, *args.q);
  if (args.r) SetThreshold(query.spec, tagdm::Component::kItems, *args.r);
  query.solver = tagdm::ParseSolver(args.solver);
  query.scope = args.scope;

  tagdm::Tunables& t = query.tunables;
  t.seed = args.seed;
  t.min_group_size = args.min_group_size;
  t.max_predicates = args.max_predicates;
  t.vocabulary_size = args.vocabulary;
  t.lsh.initial_bits = args.lsh_bits;
  t.lsh.tables = args.lsh_tables;
  t.lsh.bucket_max = args.bucket_max;
  t.fdp.metric = tagdm::ParseDistanceMetric(args.metric);
  if (!args.fdp_mode.empty()) {
    t.fdp.mode = tagdm::ParseDispersionMode(args.fdp_mode);
  }
  t.fdp.restarts = args.fdp_restarts;
  t.metrics.users = tagdm::ParseAttributeMetric(args.users_metric);
  t.metrics.items = tagdm::ParseAttributeMetric(args.items_metric);
  t.exact.max_candidates = args.exact_budget;
  t.signatures_path = args.signatures;

  const tagdm::ReportFormat format = tagdm::ParseReportFormat(args.format);
  const tagdm::TupleStore data = tagdm::ReadTuplesFile(args.data);
  const tagdm::Report report = tagdm::RunQuery(query, data);
  std::cout << tagdm::RenderReport(report, format, args.timing);
  return report.found ? kExitOk : kExitNoResult;
}

int Bench(const std::string& config_path, const std::string& out_path) {
  const tagdm::BenchConfig config =
      tagdm::ParseBenchConfig(ReadFile(config_path));
  const auto rows = tagdm::RunBenchmark(config);
  if (out_path.empty() || out_path == "-") {
    tagdm::WriteBenchCsv(rows, std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) throw tagdm::InvalidArgument("cannot write '" + out_path + "'");
    tagdm::WriteBenchCsv(rows, out);
  }
  return kExitOk;
}

int Synth(const tagdm::SynthOptions& options, const std::string& out_path) {
  const tagdm::TupleStore store = tagdm::GenerateSynthetic(options);
  if (out_path.empty() || out_path == "-") {
    tagdm::WriteTuples(store, std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) throw tagdm::InvalidArgument("cannot write '" + out_path + "'");
    tagdm::WriteTuples(store, out);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mine user, item and tag groups with similar or diverse "
               "tagging behavior."};
  app.require_subcommand(1);

  RunArgs run;
  CLI::App* run_cmd = app.add_subcommand("run", "Solve one problem");
  run_cmd->add_option("--data", run.data, "Tuple file (TSV)")->required();
  run_cmd->add_option("--problem", run.problem,
                      "Preset (problem1..problem6) or JSON spec file")
      ->required();
  run_cmd->add_option("--solver", run.solver,
                      "exact, sm-lsh, sm-lsh-fi, sm-lsh-fo, dv-fdp, "
                      "dv-fdp-fi or dv-fdp-fo")
      ->required();
  run_cmd->add_option("--scope", run.scope,
                      "Tuple filter dim:attr=value, repeatable");
  run_cmd->add_option("--k", run.k, "Largest result size");
  run_cmd->add_option("--k-min", run.k_min, "Smallest result size");
  run_cmd->add_option("--support", run.support, "Minimum group support");
  run_cmd->add_option("--q", run.q, "User constraint threshold");
  run_cmd->add_option("--r", run.r, "Item constraint threshold");
  run_cmd->add_option("--seed", run.seed, "Random seed");
  run_cmd->add_option("--format", run.format, "text, json or csv");
  run_cmd->add_flag("--timing", run.timing,
                    "Include solver runtime in the report");
  run_cmd->add_option("--min-group-size", run.min_group_size,
                      "Smallest enumerated group");
  run_cmd->add_option("--max-predicates", run.max_predicates,
                      "Most predicates per descriptor (0: all attributes)");
  run_cmd->add_option("--vocabulary", run.vocabulary,
                      "Signature length d (0: every tag)");
  run_cmd->add_option("--lsh-bits", run.lsh_bits, "Initial hash bits d'");
  run_cmd->add_option("--lsh-tables", run.lsh_tables, "Hash tables l");
  run_cmd->add_option("--bucket-max", run.bucket_max,
                      "Largest bucket searched exhaustively");
  run_cmd->add_option("--metric", run.metric, "angular or complement");
  run_cmd->add_option("--fdp-mode", run.fdp_mode, "max-avg or min-avg");
  run_cmd->add_option("--fdp-restarts", run.fdp_restarts,
                      "Seed edges dv-fdp-fo may fall back to");
  run_cmd->add_option("--users-metric", run.users_metric,
                      "structural or set");
  run_cmd->add_option("--items-metric", run.items_metric,
                      "structural or set");
  run_cmd->add_option("--exact-budget", run.exact_budget,
                      "Most candidates the exact solver may score");
  run_cmd->add_option("--signatures", run.signatures,
                      "Precomputed signature file");

  std::string bench_config, bench_out;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Benchmark solvers");
  bench_cmd->add_option("--config", bench_config, "JSON config")->required();
  bench_cmd->add_option("--out", bench_out, "CSV output (default stdout)");

  tagdm::SynthOptions synth;
  std::string synth_out;
  CLI::App* synth_cmd =
      app.add_subcommand("synth", "Generate synthetic tagging data");
  synth_cmd->add_option("--tuples", synth.tuples, "Tuple count");
  synth_cmd->add_option("--clusters", synth.clusters, "Latent clusters")
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--seed", synth.seed, "Random seed");
  synth_cmd->add_option("--out", synth_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*run_cmd) return Run(run);
    if (*bench_cmd) return Bench(bench_config, bench_out);
    if (*synth_cmd) return Synth(synth, synth_out);
  } catch (const std::exception& e) {
    std::cerr << "tagdm: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
