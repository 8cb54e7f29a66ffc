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

#ifndef TAGDM_LSH_H_
#define TAGDM_LSH_H_

// Similarity maximization through random-hyperplane hashing: groups whose
// hashing vectors fall into one bucket form the candidate result sets.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "tagdm/problem.h"

namespace tagdm {

// Row-major dense matrix of hashing vectors, one row per group.
class RowMatrix {
 public:
  RowMatrix() = default;
  RowMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::span<double> row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// 1 when hyperplane . vector >= 0 (the boundary hashes to 1), else 0.
bool HashBit(std::span<const double> vector, std::span<const double> hyperplane);

// `tables` hash tables of `bits` random hyperplanes each, with N(0, 1)
// entries. Table z draws its hyperplanes from its own sub-seed, so the first
// b hyperplanes of a table are the same for every bits >= b.
class HashEnsemble {
 public:
  static constexpr int kMaxBits = 64;

  // Throws InvalidArgument for an empty matrix, tables < 1, bits outside
  // [1, kMaxBits] or non-finite entries.
  static HashEnsemble Build(const RowMatrix& vectors, int tables, int bits,
                            std::uint64_t seed);

  int tables() const { return tables_; }
  int bits() const { return bits_; }
  std::size_t dimension() const { return dimension_; }
  std::uint64_t seed() const { return seed_; }

  std::span<const double> hyperplane(int table, int bit) const;
  // Bit y of the signature is hyperplane y's hash bit.
  std::uint64_t Signature(int table, std::span<const double> vector) const;
  std::uint64_t signature_of(int table, std::size_t row) const {
    return signatures_[static_cast<std::size_t>(table)][row];
  }
  // Signature -> ascending row indices.
  const std::map<std::uint64_t, std::vector<int>>& buckets(int table) const {
    return buckets_[static_cast<std::size_t>(table)];
  }

 private:
  int tables_ = 0;
  int bits_ = 0;
  std::size_t dimension_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<double> planes_;  // [table][bit][dimension]
  std::vector<std::vector<std::uint64_t>> signatures_;
  std::vector<std::map<std::uint64_t, std::vector<int>>> buckets_;
};

enum class LshVariant {
  kBase,    // rank buckets by objective, size check only
  kFilter,  // admit a bucket's candidate only when it is feasible
  kFold,    // filter, and hash similarity-constrained attributes too
};

struct LshOptions {
  int initial_bits = 10;  // d'
  int tables = 1;         // l
  std::uint64_t seed = 0;
  // Buckets up to this size are searched exhaustively for their best subset;
  // larger ones grow greedily from their closest pair.
  int bucket_max = 12;
};

// Hashing dimension for the variant: the signature length plus, for kFold,
// the one-hot width of every similarity-constrained user / item schema.
std::size_t HashingDimension(const TupleStore& store, std::size_t signature_dim,
                             const ProblemSpec& spec, LshVariant variant);

// One row per group: [one-hot users][one-hot items][signature], each block
// scaled to unit length, with only the blocks the variant folds in.
RowMatrix HashingVectors(const Instance& instance, LshVariant variant);

// Runs the relaxation search over d' in [1, initial_bits] and returns the
// best candidate found, or std::nullopt. Requires similarity objectives.
// parameters["bits_trace"] lists the d' values tried.
std::optional<ResultSet> SmLsh(const Instance& instance,
                               const LshOptions& options,
                               LshVariant variant = LshVariant::kBase);

inline std::optional<ResultSet> SmLshFi(const Instance& instance,
                                        const LshOptions& options) {
  return SmLsh(instance, options, LshVariant::kFilter);
}

inline std::optional<ResultSet> SmLshFo(const Instance& instance,
                                        const LshOptions& options) {
  return SmLsh(instance, options, LshVariant::kFold);
}

}  // namespace tagdm

#endif  // TAGDM_LSH_H_
