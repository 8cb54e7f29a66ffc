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

#include "tagdm/lsh.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>
#include <utility>

#include <boost/random/normal_distribution.hpp>

#include "tagdm/error.h"
#include "tagdm/parallel.h"
#include "tagdm/random.h"

namespace tagdm {

bool HashBit(std::span<const double> vector,
             std::span<const double> hyperplane) {
  if (vector.size() != hyperplane.size()) {
    throw InvalidArgument("hash: vector and hyperplane differ in length");
  }
  double dot = 0.0;
  for (std::size_t j = 0; j < vector.size(); ++j) dot += vector[j] * hyperplane[j];
  return dot >= 0.0;
}

HashEnsemble HashEnsemble::Build(const RowMatrix& vectors, int tables, int bits,
                                 std::uint64_t seed) {
  if (vectors.rows() == 0 || vectors.cols() == 0) {
    throw InvalidArgument("hash: no vectors");
  }
  if (tables < 1) throw InvalidArgument("hash: need at least one table");
  if (bits < 1 || bits > kMaxBits) {
    throw InvalidArgument("hash: bits must lie in [1, 64]");
  }
  for (std::size_t r = 0; r < vectors.rows(); ++r) {
    for (double v : vectors.row(r)) {
      if (!std::isfinite(v)) throw InvalidArgument("hash: non-finite entry");
    }
  }
  HashEnsemble e;
  e.tables_ = tables;
  e.bits_ = bits;
  e.dimension_ = vectors.cols();
  e.seed_ = seed;
  e.planes_.resize(static_cast<std::size_t>(tables) * bits * e.dimension_);
  for (int z = 0; z < tables; ++z) {
    Rng rng(MixSeed(seed, static_cast<std::uint64_t>(z)));
    boost::random::normal_distribution<double> normal(0.0, 1.0);
    double* out = e.planes_.data() +
                  static_cast<std::size_t>(z) * bits * e.dimension_;
    for (std::size_t k = 0; k < static_cast<std::size_t>(bits) * e.dimension_;
         ++k) {
      out[k] = normal(rng);
    }
  }

  e.signatures_.assign(static_cast<std::size_t>(tables),
                       std::vector<std::uint64_t>(vectors.rows(), 0));
  ParallelFor(vectors.rows(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      for (int z = 0; z < tables; ++z) {
        e.signatures_[static_cast<std::size_t>(z)][r] =
            e.Signature(z, vectors.row(r));
      }
    }
  });
  e.buckets_.resize(static_cast<std::size_t>(tables));
  for (int z = 0; z < tables; ++z) {
    for (std::size_t r = 0; r < vectors.rows(); ++r) {
      e.buckets_[static_cast<std::size_t>(z)]
                [e.signatures_[static_cast<std::size_t>(z)][r]]
                    .push_back(static_cast<int>(r));
    }
  }
  return e;
}

std::span<const double> HashEnsemble::hyperplane(int table, int bit) const {
  const std::size_t offset =
      (static_cast<std::size_t>(table) * bits_ + static_cast<std::size_t>(bit)) *
      dimension_;
  return {planes_.data() + offset, dimension_};
}

std::uint64_t HashEnsemble::Signature(int table,
                                      std::span<const double> vector) const {
  std::uint64_t sig = 0;
  for (int y = 0; y < bits_; ++y) {
    if (HashBit(vector, hyperplane(table, y))) sig |= std::uint64_t{1} << y;
  }
  return sig;
}

namespace {

bool FoldsUsers(const ProblemSpec& spec, LshVariant variant) {
  if (variant != LshVariant::kFold) return false;
  return std::any_of(spec.constraints.begin(), spec.constraints.end(),
                     [](const Constraint& c) {
                       return c.measure.component == Component::kUsers &&
                              c.measure.mode == Mode::kSimilarity;
                     });
}

bool FoldsItems(const ProblemSpec& spec, LshVariant variant) {
  if (variant != LshVariant::kFold) return false;
  return std::any_of(spec.constraints.begin(), spec.constraints.end(),
                     [](const Constraint& c) {
                       return c.measure.component == Component::kItems &&
                              c.measure.mode == Mode::kSimilarity;
                     });
}

// Copies `values` into `out` scaled to unit length; a zero block stays zero.
template <typename Values>
void PutUnitBlock(const Values& values, std::span<double> out) {
  double norm = 0.0;
  for (std::size_t j = 0; j < out.size(); ++j) {
    norm += static_cast<double>(values[j]) * static_cast<double>(values[j]);
  }
  if (norm == 0.0) return;
  norm = std::sqrt(norm);
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = static_cast<double>(values[j]) / norm;
  }
}

const char* VariantName(LshVariant variant) {
  switch (variant) {
    case LshVariant::kBase:
      return "sm-lsh";
    case LshVariant::kFilter:
      return "sm-lsh-fi";
    case LshVariant::kFold:
      return "sm-lsh-fo";
  }
  return "?";
}

struct Candidate {
  double score = 0.0;
  std::vector<GroupIndex> selection;
};

class BucketRanker {
 public:
  BucketRanker(const Evaluator& eval, LshVariant variant, int bucket_max)
      : eval_(eval), spec_(eval.instance().spec), variant_(variant),
        bucket_max_(static_cast<std::size_t>(std::max(bucket_max, 1))) {}

  // Offers every candidate drawn from `bucket` (ascending group indices).
  void Offer(const std::vector<int>& bucket) {
    if (bucket.size() < static_cast<std::size_t>(spec_.k_lo)) return;
    if (bucket.size() <= bucket_max_) {
      Exhaustive(bucket);
    } else {
      Greedy(bucket);
    }
  }

  const std::optional<Candidate>& best() const { return best_; }
  void Reset() { best_.reset(); }

 private:
  void Consider(std::vector<GroupIndex> selection) {
    std::sort(selection.begin(), selection.end());
    const double score = eval_.Objective(selection);
    if (best_ &&
        !BetterCandidate(score, selection, best_->score, best_->selection)) {
      return;
    }
    if (variant_ != LshVariant::kBase &&
        !eval_.CheckFeasible(selection).feasible) {
      return;
    }
    best_ = Candidate{score, std::move(selection)};
  }

  void Exhaustive(const std::vector<int>& bucket) {
    const std::size_t m = bucket.size();
    const std::size_t top = std::min(m, static_cast<std::size_t>(spec_.k_hi));
    for (std::size_t s = static_cast<std::size_t>(spec_.k_lo); s <= top; ++s) {
      // Lexicographic s-combinations of bucket positions.
      std::vector<std::size_t> pos(s);
      for (std::size_t i = 0; i < s; ++i) pos[i] = i;
      while (true) {
        std::vector<GroupIndex> selection(s);
        for (std::size_t i = 0; i < s; ++i) selection[i] = bucket[pos[i]];
        Consider(std::move(selection));
        std::size_t i = s;
        while (i > 0 && pos[i - 1] == m - s + i - 1) --i;
        if (i == 0) break;
        ++pos[i - 1];
        for (std::size_t j = i; j < s; ++j) pos[j] = pos[j - 1] + 1;
      }
    }
  }

  // Grows from the bucket's best-scoring pair, adding the member that
  // maximizes the objective of the grown set; every prefix whose size lies
  // in [k_lo, k_hi] is a candidate.
  void Greedy(const std::vector<int>& bucket) {
    const std::size_t m = bucket.size();
    std::vector<GroupIndex> chosen;
    if (spec_.k_hi >= 2) {
      double best_pair = 0.0;
      std::vector<GroupIndex> pair;
      for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
          const GroupIndex sel[2] = {bucket[a], bucket[b]};
          const double score = eval_.Objective(sel);
          if (pair.empty() || BetterCandidate(score, sel, best_pair, pair)) {
            best_pair = score;
            pair.assign(sel, sel + 2);
          }
        }
      }
      chosen = pair;
    } else {
      chosen = {bucket.front()};
    }
    std::vector<bool> used(m, false);
    for (std::size_t a = 0; a < m; ++a) {
      used[a] = std::find(chosen.begin(), chosen.end(), bucket[a]) !=
                chosen.end();
    }
    if (spec_.k_lo <= 1) Consider({chosen.front()});
    if (chosen.size() >= static_cast<std::size_t>(spec_.k_lo)) Consider(chosen);
    while (chosen.size() < static_cast<std::size_t>(spec_.k_hi)) {
      double best_score = 0.0;
      std::vector<GroupIndex> best_set;
      std::size_t best_pos = m;
      for (std::size_t a = 0; a < m; ++a) {
        if (used[a]) continue;
        std::vector<GroupIndex> grown = chosen;
        grown.push_back(bucket[a]);
        std::sort(grown.begin(), grown.end());
        const double score = eval_.Objective(grown);
        if (best_pos == m || BetterCandidate(score, grown, best_score, best_set)) {
          best_score = score;
          best_set = std::move(grown);
          best_pos = a;
        }
      }
      if (best_pos == m) break;
      used[best_pos] = true;
      chosen = std::move(best_set);
      if (chosen.size() >= static_cast<std::size_t>(spec_.k_lo)) {
        Consider(chosen);
      }
    }
  }

  const Evaluator& eval_;
  const ProblemSpec& spec_;
  LshVariant variant_;
  std::size_t bucket_max_;
  std::optional<Candidate> best_;
};

}  // namespace

std::size_t HashingDimension(const TupleStore& store, std::size_t signature_dim,
                             const ProblemSpec& spec, LshVariant variant) {
  std::size_t dim = signature_dim;
  if (FoldsUsers(spec, variant)) dim += store.user_schema().OneHotWidth();
  if (FoldsItems(spec, variant)) dim += store.item_schema().OneHotWidth();
  return dim;
}

RowMatrix HashingVectors(const Instance& instance, LshVariant variant) {
  if (instance.groups.empty()) throw InvalidArgument("hash: no groups");
  const std::size_t sig_dim = instance.groups.front().signature.dimension();
  const bool users = FoldsUsers(instance.spec, variant);
  const bool items = FoldsItems(instance.spec, variant);
  const std::size_t user_w = instance.store.user_schema().OneHotWidth();
  const std::size_t item_w = instance.store.item_schema().OneHotWidth();
  RowMatrix out(instance.groups.size(),
                HashingDimension(instance.store, sig_dim, instance.spec,
                                 variant));
  for (std::size_t g = 0; g < instance.groups.size(); ++g) {
    const TaggingGroup& group = instance.groups[g];
    if (group.signature.dimension() != sig_dim) {
      throw InvalidArgument("hash: signatures differ in length");
    }
    std::span<double> row = out.row(g);
    std::size_t offset = 0;
    if (users) {
      PutUnitBlock(group.one_hot_user, row.subspan(offset, user_w));
      offset += user_w;
    }
    if (items) {
      PutUnitBlock(group.one_hot_item, row.subspan(offset, item_w));
      offset += item_w;
    }
    PutUnitBlock(group.signature.weights, row.subspan(offset, sig_dim));
  }
  return out;
}

std::optional<ResultSet> SmLsh(const Instance& instance,
                               const LshOptions& options, LshVariant variant) {
  const auto start = std::chrono::steady_clock::now();
  instance.spec.Validate();
  if (!instance.spec.ObjectivesAll(Mode::kSimilarity)) {
    throw InvalidArgument("sm-lsh needs similarity objectives only");
  }
  if (options.initial_bits < 1 || options.initial_bits > HashEnsemble::kMaxBits) {
    throw InvalidArgument("sm-lsh: initial bits must lie in [1, 64]");
  }
  if (instance.groups.empty()) return std::nullopt;

  const Evaluator eval(instance);
  const RowMatrix vectors = HashingVectors(instance, variant);
  BucketRanker ranker(eval, variant, options.bucket_max);

  int lo = 1;
  int hi = options.initial_bits;
  int bits = hi;
  std::optional<Candidate> best;
  int best_bits = 0;
  std::string trace;
  while (true) {
    const HashEnsemble ensemble =
        HashEnsemble::Build(vectors, options.tables, bits, options.seed);
    ranker.Reset();
    for (int z = 0; z < ensemble.tables(); ++z) {
      for (const auto& [signature, bucket] : ensemble.buckets(z)) {
        ranker.Offer(bucket);
      }
    }
    if (!trace.empty()) trace += ',';
    trace += std::to_string(bits);
    if (const auto& found = ranker.best()) {
      if (!best || BetterCandidate(found->score, found->selection, best->score,
                                   best->selection)) {
        best = found;
        best_bits = bits;
      }
      lo = bits + 1;
    } else {
      hi = bits - 1;
    }
    if (lo > hi) break;
    bits = (lo + hi) / 2;
  }
  if (!best) return std::nullopt;

  ResultSet result = eval.MakeResult(best->selection, VariantName(variant));
  result.seed = options.seed;
  result.parameters["bits_trace"] = trace;
  result.parameters["bits"] = std::to_string(best_bits);
  result.parameters["tables"] = std::to_string(options.tables);
  result.parameters["bucket_max"] = std::to_string(options.bucket_max);
  result.parameters["hash_dimension"] = std::to_string(vectors.cols());
  result.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return result;
}

}  // namespace tagdm
