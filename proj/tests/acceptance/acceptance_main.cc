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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.
//
// Usage: tagdm_acceptance <tagdm binary> <tuple fixture>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "tagdm/error.h"
#include "tagdm/exact.h"
#include "tagdm/fdp.h"
#include "tagdm/lsh.h"
#include "tagdm/pipeline.h"
#include "tagdm/synth.h"

namespace tagdm {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fixed(double v, int digits = 4) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << v;
  return s.str();
}

// Store with two user and two item attributes and eight tags.
TupleStore RandomStore(std::mt19937_64& rng, std::size_t tuples) {
  TupleStoreBuilder b({"u0", "u1"}, {"i0", "i1"});
  std::uniform_int_distribution<int> two(0, 1), three(0, 2), tag(0, 7), count(1, 3);
  for (std::size_t t = 0; t < tuples; ++t) {
    std::vector<std::string> tags;
    for (int k = count(rng); k > 0; --k) tags.push_back("t" + std::to_string(tag(rng)));
    b.AddRow({"v" + std::to_string(two(rng)), "v" + std::to_string(three(rng))},
             {"v" + std::to_string(three(rng)), "v" + std::to_string(two(rng))}, tags);
  }
  return b.Build();
}

// Up to `n` groups with signatures, drawn at random from the enumeration.
std::vector<TaggingGroup> RandomPool(std::mt19937_64& rng, const TupleStore& store,
                                     std::size_t n) {
  std::vector<TaggingGroup> all = EnumerateGroups(store, 3, 4);
  const Vocabulary vocab = BuildVocabulary(store, 25);
  std::vector<TaggingGroup> valid;
  for (TaggingGroup& g : all) {
    try {
      g.signature = BuildSignature(g, vocab, store);
      valid.push_back(std::move(g));
    } catch (const InvalidSignatureError&) {
    }
  }
  std::shuffle(valid.begin(), valid.end(), rng);
  if (valid.size() > n) valid.resize(n);
  std::sort(valid.begin(), valid.end(),
            [](const auto& a, const auto& b) { return a.descriptor < b.descriptor; });
  return valid;
}

// 1. Per-bit collision frequency of random hyperplanes.
Outcome CollisionLaw() {
  const int tables = 160, bits = 64;  // 10240 hyperplanes per pair
  std::mt19937_64 rng(101);
  std::normal_distribution<double> normal;
  double worst = 0;
  std::string detail;
  for (double theta : {0.0, std::numbers::pi / 4, std::numbers::pi / 2,
                       3 * std::numbers::pi / 4}) {
    // Orthonormal u, w in 25 dimensions; the pair is u and cos t u + sin t w.
    const std::size_t dim = 25;
    std::vector<double> u(dim), w(dim);
    for (auto& x : u) x = normal(rng);
    for (auto& x : w) x = normal(rng);
    auto dot = [&](const auto& a, const auto& b) {
      double s = 0;
      for (std::size_t j = 0; j < dim; ++j) s += a[j] * b[j];
      return s;
    };
    const double nu = std::sqrt(dot(u, u));
    for (auto& x : u) x /= nu;
    const double p = dot(u, w);
    for (std::size_t j = 0; j < dim; ++j) w[j] -= p * u[j];
    const double nw = std::sqrt(dot(w, w));
    for (auto& x : w) x /= nw;
    RowMatrix m(2, dim);
    for (std::size_t j = 0; j < dim; ++j) {
      m.row(0)[j] = u[j];
      m.row(1)[j] = std::cos(theta) * u[j] + std::sin(theta) * w[j];
    }
    const HashEnsemble e = HashEnsemble::Build(m, tables, bits, 7);
    long same = 0;
    for (int z = 0; z < tables; ++z) {
      same += bits - std::popcount(e.signature_of(z, 0) ^ e.signature_of(z, 1));
    }
    const double rate = static_cast<double>(same) / (tables * bits);
    const double expect = 1 - theta / std::numbers::pi;
    worst = std::max(worst, std::abs(rate - expect));
    detail += " theta=" + Fixed(theta / std::numbers::pi, 2) + "pi:" + Fixed(rate, 4) +
              "/" + Fixed(expect, 4);
  }
  return {worst <= 0.02, "max deviation " + Fixed(worst) + ";" + detail};
}

// 2. Brute-force MAX-AVG optimum over the greedy value, angular metric.
Outcome ApproximationBound() {
  std::mt19937_64 rng(202);
  double worst = 1;
  int within_1_5 = 0, instances = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const TupleStore store = RandomStore(rng, 80 + trial % 40);
    const std::size_t n = 5 + trial % 10;  // 5..14
    const std::vector<TaggingGroup> pool = RandomPool(rng, store, n);
    ProblemSpec spec;
    spec.k_lo = 1;
    spec.k_hi = std::min<int>(2 + trial % 3, static_cast<int>(pool.size()));
    spec.objectives = {{{Component::kTags, Mode::kDiversity}, 1.0}};
    const ResultSet r = DvFdp({store, pool, spec});
    const DistanceMatrix d(pool, DistanceMetric::kAngular);
    auto spread = [&](const std::vector<std::size_t>& s) {
      double sum = 0;
      for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) sum += d(s[i], s[j]);
      }
      return sum;
    };
    const double greedy = spread({r.groups.begin(), r.groups.end()});
    double best = 0;
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
      if (static_cast<int>(cur.size()) == spec.k_hi) {
        best = std::max(best, spread(cur));
        return;
      }
      for (std::size_t i = start; i < pool.size(); ++i) {
        cur.push_back(i);
        rec(i + 1);
        cur.pop_back();
      }
    };
    rec(0);
    ++instances;
    const double ratio = greedy > 0 ? best / greedy : (best > 0 ? INFINITY : 1.0);
    worst = std::max(worst, ratio);
    within_1_5 += ratio <= 1.5;
  }
  return {worst <= 4.0, std::to_string(instances) + " instances, max ratio " +
                            Fixed(worst) + ", " + std::to_string(within_1_5) +
                            " with ratio <= 1.5"};
}

// 3. Every solver's output re-validates and never beats exact.
Outcome OracleDominance() {
  std::mt19937_64 rng(303);
  int violations = 0, outputs = 0, feasible_outputs = 0, exact_found = 0;
  std::string first_violation;
  auto violate = [&](const std::string& what) {
    if (violations++ == 0) first_violation = what;
  };
  for (int trial = 0; trial < 50; ++trial) {
    const TupleStore store = RandomStore(rng, 1500);
    const std::vector<TaggingGroup> pool = RandomPool(rng, store, 20);
    for (const char* preset : {"problem1", "problem6"}) {
      const ProblemSpec spec = Preset(preset);
      const Instance inst{store, pool, spec};
      const auto exact = ExactSolve(inst);
      exact_found += exact.has_value();
      Tunables tunables;
      tunables.seed = static_cast<std::uint64_t>(trial);
      tunables.fdp.restarts = 8;
      std::vector<SolverKind> solvers;
      if (spec.ObjectivesAll(Mode::kSimilarity)) {
        solvers = {SolverKind::kSmLsh, SolverKind::kSmLshFi, SolverKind::kSmLshFo,
                   SolverKind::kDvFdp, SolverKind::kDvFdpFi, SolverKind::kDvFdpFo};
        tunables.fdp.mode = DispersionMode::kMinAvg;
      } else {
        solvers = {SolverKind::kDvFdp, SolverKind::kDvFdpFi, SolverKind::kDvFdpFo};
      }
      for (SolverKind solver : solvers) {
        const auto r = Solve(inst, solver, tunables);
        if (!r) continue;
        ++outputs;
        const std::string tag = std::string(preset) + "/" +
                                std::string(SolverName(solver)) + " trial " +
                                std::to_string(trial);
        std::vector<TaggingGroup> chosen;
        for (GroupIndex g : r->groups) chosen.push_back(pool[g]);
        const FeasibilityReport check = CheckFeasible(chosen, spec, store);
        if (check.feasible != r->feasible) violate(tag + ": feasibility flag");
        if (std::abs(ObjectiveScore(chosen, spec) - r->score) > 1e-12) {
          violate(tag + ": score");
        }
        const bool filtered = solver != SolverKind::kSmLsh && solver != SolverKind::kDvFdp;
        if (filtered && !check.feasible) violate(tag + ": infeasible output");
        if (!check.feasible) continue;
        ++feasible_outputs;
        if (!exact || r->score > exact->score + 1e-12) violate(tag + ": beats exact");
      }
    }
  }
  std::string detail = std::to_string(outputs) + " outputs (" +
                       std::to_string(feasible_outputs) + " feasible), exact found " +
                       std::to_string(exact_found) + "/100, violations " +
                       std::to_string(violations);
  if (violations) detail += "; first: " + first_violation;
  return {violations == 0 && feasible_outputs > 0, detail};
}

// 4. Union support against a materialized union.
Outcome SupportSemantics() {
  std::mt19937_64 rng(404);
  const TupleStore store = RandomStore(rng, 400);
  const std::vector<TaggingGroup> groups = EnumerateGroups(store, 1, 4);
  std::uniform_int_distribution<std::size_t> pick(0, groups.size() - 1), size(1, 6);
  int mismatches = 0;
  for (int draw = 0; draw < 1000; ++draw) {
    std::vector<TaggingGroup> chosen;
    for (std::size_t i = size(rng); i > 0; --i) chosen.push_back(groups[pick(rng)]);
    std::set<TupleId> materialized;
    for (TupleId id = 0; id < store.size(); ++id) {
      for (const TaggingGroup& g : chosen) {
        if (g.descriptor.Matches(store.tuple(id))) {
          materialized.insert(id);
          break;
        }
      }
    }
    mismatches += GroupSupport(chosen, store) != materialized.size();
  }
  return {mismatches == 0, "1000 draws, " + std::to_string(mismatches) + " mismatches"};
}

// 5. Hashing dimension of the folded variant.
Outcome FoldingDimension() {
  struct Config {
    std::vector<int> users, items;
    std::size_t tags;
    const char* preset;
  };
  const std::vector<Config> configs = {
      {{2, 8, 21}, {19}, 25, "problem1"},  // the worked 75-dimension case
      {{2, 8, 21}, {19}, 25, "problem2"},
      {{3, 4}, {5, 6}, 10, "problem3"},
      {{7}, {2, 2, 2}, 12, "problem6"},
  };
  int mismatches = 0;
  std::string detail;
  for (const Config& c : configs) {
    std::vector<std::string> ua, ia;
    for (std::size_t a = 0; a < c.users.size(); ++a) ua.push_back("u" + std::to_string(a));
    for (std::size_t a = 0; a < c.items.size(); ++a) ia.push_back("i" + std::to_string(a));
    TupleStoreBuilder b(ua, ia);
    for (std::size_t a = 0; a < c.users.size(); ++a) {
      for (int v = 0; v < c.users[a]; ++v) b.DeclareValue(Dimension::kUser, a, std::to_string(v));
    }
    for (std::size_t a = 0; a < c.items.size(); ++a) {
      for (int v = 0; v < c.items[a]; ++v) b.DeclareValue(Dimension::kItem, a, std::to_string(v));
    }
    std::vector<std::string> tags;
    for (std::size_t t = 0; t < c.tags; ++t) tags.push_back("t" + std::to_string(t));
    b.AddRow(std::vector<std::string>(ua.size(), "0"), std::vector<std::string>(ia.size(), "0"),
             tags);
    const TupleStore store = b.Build();
    const ProblemSpec spec = Preset(c.preset);
    std::size_t expect = c.tags;
    for (const Constraint& con : spec.constraints) {
      if (con.measure.mode != Mode::kSimilarity) continue;
      const auto& domains = con.measure.component == Component::kUsers ? c.users : c.items;
      for (int d : domains) expect += static_cast<std::size_t>(d);
    }
    const std::size_t got = HashingDimension(store, c.tags, spec, LshVariant::kFold);
    // The vectors actually hashed have the same width.
    std::vector<TaggingGroup> groups = EnumerateGroups(store, 1, 1);
    const Vocabulary vocab = BuildVocabulary(store, c.tags);
    for (TaggingGroup& g : groups) g.signature = BuildSignature(g, vocab, store);
    const std::size_t width = HashingVectors({store, groups, spec}, LshVariant::kFold).cols();
    mismatches += got != expect || width != expect;
    detail += " " + std::string(c.preset) + ":" + std::to_string(got) + "/" +
              std::to_string(expect);
  }
  return {mismatches == 0, std::to_string(configs.size()) + " schemas;" + detail};
}

// 6. Speed and quality of the folded solvers against exact.
Outcome SpeedCrossover() {
  const int runs = 20;
  double exact_s = 0;
  struct Tally {
    SolverKind solver;
    double seconds = 0;
    double min_ratio = INFINITY;
    int close = 0;
  };
  std::vector<Tally> tallies = {{SolverKind::kSmLshFo}, {SolverKind::kDvFdpFo}};
  std::size_t min_groups = SIZE_MAX;
  for (int run = 0; run < runs; ++run) {
    SynthOptions synth;
    synth.tuples = 2000;
    synth.clusters = 3;
    synth.seed = static_cast<std::uint64_t>(run);
    const TupleStore data = GenerateSynthetic(synth);
    ProblemSpec spec = Preset("problem1");
    spec.k_lo = spec.k_hi = 3;
    spec.support_p = data.size() / 100;
    Tunables tunables;
    tunables.seed = static_cast<std::uint64_t>(run);
    tunables.fdp.mode = DispersionMode::kMinAvg;
    tunables.fdp.restarts = 64;
    const PreparedData prepared = Prepare(data, {}, spec, tunables);
    min_groups = std::min(min_groups, prepared.groups.size());
    const Instance inst{prepared.store, prepared.groups, spec};
    auto start = Clock::now();
    const auto exact = Solve(inst, SolverKind::kExact, tunables);
    const double exact_time = Seconds(start);
    exact_s += exact_time;
    if (!exact) continue;
    const double exact_q = AverageCosine(prepared.groups, exact->groups);
    for (Tally& t : tallies) {
      start = Clock::now();
      const auto r = Solve(inst, t.solver, tunables);
      const double time = Seconds(start);
      t.seconds += time;
      t.min_ratio = std::min(t.min_ratio, exact_time / time);
      if (r && std::abs(AverageCosine(prepared.groups, r->groups) - exact_q) <=
                   0.15 * exact_q) {
        ++t.close;
      }
    }
  }
  bool pass = min_groups >= 2000;
  std::string detail = "groups >= " + std::to_string(min_groups) + ", exact " +
                       Fixed(exact_s, 2) + "s";
  for (const Tally& t : tallies) {
    const double speedup = exact_s / t.seconds;
    pass = pass && speedup >= 5.0 && t.close >= 14;
    detail += "; " + std::string(SolverName(t.solver)) + " " + Fixed(t.seconds, 2) +
              "s (" + Fixed(speedup, 1) + "x, slowest run " + Fixed(t.min_ratio, 1) +
              "x), quality within 15% in " + std::to_string(t.close) + "/" +
              std::to_string(runs);
  }
  return {pass, detail};
}

std::optional<std::string> Capture(const std::string& command) {
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return std::nullopt;
  std::string out;
  char buffer[4096];
  std::size_t got;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) out.append(buffer, got);
  // Exit status 2 reports a query without a result, still a valid report.
  const int status = pclose(pipe);
  if (!WIFEXITED(status) || (WEXITSTATUS(status) != 0 && WEXITSTATUS(status) != 2)) {
    return std::nullopt;
  }
  return out;
}

// 7. Identical command lines give identical machine-readable reports.
Outcome Determinism(const std::string& cli, const std::string& fixture) {
  const std::string base = "'" + cli + "' run --data '" + fixture + "' --support 20 ";
  const std::vector<std::string> commands = {
      base + "--problem problem1 --solver exact --k 3 --k-min 2 --format json",
      base + "--problem problem1 --solver sm-lsh-fo --seed 3 --format json",
      base + "--problem problem1 --solver sm-lsh --seed 11 --format csv",
      base + "--problem problem6 --solver dv-fdp-fo --q 0.3 --r 0.3 "
             "--fdp-restarts 32 --format json",
      base + "--problem problem1 --solver dv-fdp-fo --fdp-mode min-avg "
             "--fdp-restarts 64 --k 2 --format csv",
      base + "--problem problem2 --solver exact --k 2 --format text",
      "'" + cli + "' synth --tuples 300 --seed 9",
  };
  int differ = 0, failed = 0;
  for (const std::string& c : commands) {
    const auto a = Capture(c), b = Capture(c);
    if (!a || !b || a->empty()) {
      ++failed;
      continue;
    }
    differ += *a != *b;
  }
  return {differ == 0 && failed == 0,
          std::to_string(commands.size()) + " command lines run twice, " +
              std::to_string(differ) + " differ, " + std::to_string(failed) + " failed"};
}

// 8. Complementarity, symmetry, scale invariance and the triangle
// inequality on random triples.
Outcome PropertySuite() {
  std::mt19937_64 rng(808);
  const TupleStore store = RandomStore(rng, 600);
  const std::vector<TaggingGroup> groups = RandomPool(rng, store, 400);
  const MetricConfig structural;
  const MetricConfig sets{AttributeMetric::kSetOverlap, AttributeMetric::kSetOverlap, {}};
  std::uniform_int_distribution<std::size_t> pick(0, groups.size() - 1);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  long checks = 0, violations = 0;
  auto expect = [&](bool ok) {
    ++checks;
    violations += !ok;
  };
  for (int t = 0; t < 10000; ++t) {
    const TaggingGroup& a = groups[pick(rng)];
    const TaggingGroup& b = groups[pick(rng)];
    const TaggingGroup& c = groups[pick(rng)];
    for (const MetricConfig* config : {&structural, &sets}) {
      for (Component comp : {Component::kUsers, Component::kItems, Component::kTags}) {
        double sim, div, sim_ba;
        try {
          sim = PairwiseScore(a, b, {comp, Mode::kSimilarity}, *config);
          div = PairwiseScore(a, b, {comp, Mode::kDiversity}, *config);
          sim_ba = PairwiseScore(b, a, {comp, Mode::kSimilarity}, *config);
        } catch (const DimensionAbsentError&) {
          continue;  // undefined for this pair in this dimension
        }
        expect(sim + div == 1.0 || std::abs(sim + div - 1.0) <= 1e-15);
        expect(sim == sim_ba);
        expect(sim >= 0.0 && sim <= 1.0);
      }
    }
    std::vector<double> scaled = a.signature.weights;
    const double s = scale(rng);
    for (double& x : scaled) x *= s;
    expect(std::abs(CosineSimilarity(scaled, b.signature.weights) -
                    CosineSimilarity(a.signature, b.signature)) <= 1e-12);
    const double ab = AngularDistance(a.signature.weights, b.signature.weights);
    const double bc = AngularDistance(b.signature.weights, c.signature.weights);
    const double ac = AngularDistance(a.signature.weights, c.signature.weights);
    expect(ac <= ab + bc + 1e-12);
    expect(ab == AngularDistance(b.signature.weights, a.signature.weights));
  }
  return {violations == 0, "10000 triples, " + std::to_string(checks) + " checks, " +
                               std::to_string(violations) + " violations"};
}

}  // namespace
}  // namespace tagdm

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: " << argv[0] << " <tagdm binary> <tuple fixture>\n";
    return 2;
  }
  using tagdm::Outcome;
  const std::string cli = argv[1], fixture = argv[2];
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"collision law", tagdm::CollisionLaw},
      {"approximation bound", tagdm::ApproximationBound},
      {"oracle dominance", tagdm::OracleDominance},
      {"support semantics", tagdm::SupportSemantics},
      {"folding dimension", tagdm::FoldingDimension},
      {"speed crossover", tagdm::SpeedCrossover},
      {"determinism", [&] { return tagdm::Determinism(cli, fixture); }},
      {"property suite", tagdm::PropertySuite},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = tagdm::Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " ("
              << criteria[i].first << "): " << o.detail << " ["
              << tagdm::Fixed(tagdm::Seconds(start), 2) << "s]" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
