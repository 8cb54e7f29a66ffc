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

#ifndef TAGDM_SIGNATURE_H_
#define TAGDM_SIGNATURE_H_

// Tag signatures and the pairwise comparison functions over the user, item
// and tag components of tagging groups.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tagdm/model.h"

namespace tagdm {

enum class Component { kUsers, kItems, kTags };
enum class Mode { kSimilarity, kDiversity };

struct MiningMeasure {
  Component component = Component::kTags;
  Mode mode = Mode::kSimilarity;

  friend bool operator==(const MiningMeasure&, const MiningMeasure&) = default;
};

std::string_view ComponentName(Component c);  // "users", "items", "tags"
std::string_view ModeName(Mode m);            // "similarity", "diversity"
Component ParseComponent(std::string_view name);
Mode ParseMode(std::string_view name);

// Base metric used for the user and item components.
enum class AttributeMetric {
  kStructural,  // normalized attribute/value match over the descriptors
  kSetOverlap,  // Jaccard overlap of the co-tagged items (users) or users
};

AttributeMetric ParseAttributeMetric(std::string_view name);
std::string_view AttributeMetricName(AttributeMetric metric);

// Per-value similarity plugged into the structural metric. Receives the
// dimension, attribute and the two domain positions.
using ValueSimilarity =
    std::function<double(Dimension, std::uint32_t, std::uint32_t,
                         std::uint32_t)>;

struct MetricConfig {
  AttributeMetric users = AttributeMetric::kStructural;
  AttributeMetric items = AttributeMetric::kStructural;
  ValueSimilarity value_similarity;  // empty: exact match
};

// Ordered tag list defining the signature coordinates.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<std::uint32_t> tags);

  std::size_t size() const { return tags_.size(); }
  std::span<const std::uint32_t> tags() const { return tags_; }
  // Coordinate of a dictionary tag, or -1 when outside the vocabulary.
  int Position(std::uint32_t tag) const;

 private:
  std::vector<std::uint32_t> tags_;
  std::unordered_map<std::uint32_t, int> positions_;
};

// The `max_size` tags used by the most tuples; ties go to the smaller tag
// name. `max_size` = 0 keeps every tag.
Vocabulary BuildVocabulary(const TupleStore& store, std::size_t max_size);

// weights[j] = number of member tuples using vocabulary tag j. Throws
// InvalidSignatureError when no member uses any vocabulary tag.
TagSignature BuildSignature(const TaggingGroup& group,
                            const Vocabulary& vocabulary,
                            const TupleStore& store);

// x.y / (|x||y|), clamped to [0, 1]. Throws InvalidSignatureError on a zero
// vector and InvalidArgument on a length mismatch.
double CosineSimilarity(std::span<const double> x, std::span<const double> y);
double CosineSimilarity(const TagSignature& x, const TagSignature& y);

// Matches over attributes constrained by both descriptors on `dim`, divided
// by the number of attributes constrained by either. Throws
// DimensionAbsentError when neither descriptor constrains `dim`.
double StructuralPairwise(const GroupDescriptor& a, const GroupDescriptor& b,
                          Dimension dim,
                          const ValueSimilarity& value_similarity = {});

// |items(a) & items(b)| / |items(a) | items(b)|.
double JaccardItemOverlap(const TaggingGroup& a, const TaggingGroup& b);
// Jaccard overlap of the users who tagged the groups' items.
double JaccardUserOverlap(const TaggingGroup& a, const TaggingGroup& b);

// Similarity of the base metric for `measure.component`; diversity is its
// complement 1 - similarity.
double PairwiseScore(const TaggingGroup& a, const TaggingGroup& b,
                     MiningMeasure measure, const MetricConfig& config = {});

// Mean of PairwiseScore over all unordered pairs, taken in ascending
// (i, j) order. Throws InvalidArgument for fewer than two groups.
double AggregateScore(std::span<const TaggingGroup> groups,
                      MiningMeasure measure, const MetricConfig& config = {});

// Score of a set with no pairs: 1 for similarity, 0 for diversity.
inline double VacuousScore(Mode mode) {
  return mode == Mode::kSimilarity ? 1.0 : 0.0;
}

}  // namespace tagdm

#endif  // TAGDM_SIGNATURE_H_
