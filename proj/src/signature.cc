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

#include "tagdm/signature.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tagdm/error.h"

namespace tagdm {

std::string_view ComponentName(Component c) {
  switch (c) {
    case Component::kUsers:
      return "users";
    case Component::kItems:
      return "items";
    case Component::kTags:
      return "tags";
  }
  return "?";
}

std::string_view ModeName(Mode m) {
  return m == Mode::kSimilarity ? "similarity" : "diversity";
}

Component ParseComponent(std::string_view name) {
  if (name == "users" || name == "user") return Component::kUsers;
  if (name == "items" || name == "item") return Component::kItems;
  if (name == "tags" || name == "tag") return Component::kTags;
  throw InvalidArgument("unknown dimension '" + std::string(name) + "'");
}

Mode ParseMode(std::string_view name) {
  if (name == "similarity") return Mode::kSimilarity;
  if (name == "diversity") return Mode::kDiversity;
  throw InvalidArgument("unknown mode '" + std::string(name) + "'");
}

AttributeMetric ParseAttributeMetric(std::string_view name) {
  if (name == "structural") return AttributeMetric::kStructural;
  if (name == "set" || name == "jaccard") return AttributeMetric::kSetOverlap;
  throw InvalidArgument("unknown attribute metric '" + std::string(name) +
                        "'");
}

std::string_view AttributeMetricName(AttributeMetric metric) {
  return metric == AttributeMetric::kStructural ? "structural" : "set";
}

Vocabulary::Vocabulary(std::vector<std::uint32_t> tags)
    : tags_(std::move(tags)) {
  for (std::size_t j = 0; j < tags_.size(); ++j) {
    if (!positions_.emplace(tags_[j], static_cast<int>(j)).second) {
      throw InvalidArgument("vocabulary lists a tag twice");
    }
  }
}

int Vocabulary::Position(std::uint32_t tag) const {
  const auto it = positions_.find(tag);
  return it == positions_.end() ? -1 : it->second;
}

Vocabulary BuildVocabulary(const TupleStore& store, std::size_t max_size) {
  std::vector<std::size_t> usage(store.num_tags(), 0);
  for (const TaggingTuple& t : store.tuples()) {
    for (std::uint32_t tag : t.tags) ++usage[tag];
  }
  std::vector<std::uint32_t> order;
  for (std::uint32_t tag = 0; tag < usage.size(); ++tag) {
    if (usage[tag] > 0) order.push_back(tag);
  }
  // Dictionary ids follow sorted tag names, so the id breaks ties by name.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) {
                     return usage[a] > usage[b];
                   });
  if (max_size > 0 && order.size() > max_size) order.resize(max_size);
  return Vocabulary(std::move(order));
}

TagSignature BuildSignature(const TaggingGroup& group,
                            const Vocabulary& vocabulary,
                            const TupleStore& store) {
  TagSignature sig;
  sig.weights.assign(vocabulary.size(), 0.0);
  for (TupleId id : group.members) {
    for (std::uint32_t tag : store.tuple(id).tags) {
      const int pos = vocabulary.Position(tag);
      if (pos >= 0) sig.weights[pos] += 1.0;
    }
  }
  if (!sig.valid()) {
    throw InvalidSignatureError("group " + group.descriptor.ToString(store) +
                                " uses no vocabulary tag");
  }
  return sig;
}

double CosineSimilarity(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw InvalidArgument("cosine: vectors differ in length");
  }
  double dot = 0.0, xx = 0.0, yy = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    dot += x[j] * y[j];
    xx += x[j] * x[j];
    yy += y[j] * y[j];
  }
  if (xx == 0.0 || yy == 0.0) {
    throw InvalidSignatureError("undefined angle: zero vector");
  }
  if (std::equal(x.begin(), x.end(), y.begin())) return 1.0;
  return std::clamp(dot / (std::sqrt(xx) * std::sqrt(yy)), 0.0, 1.0);
}

double CosineSimilarity(const TagSignature& x, const TagSignature& y) {
  return CosineSimilarity(std::span<const double>(x.weights),
                          std::span<const double>(y.weights));
}

double StructuralPairwise(const GroupDescriptor& a, const GroupDescriptor& b,
                          Dimension dim,
                          const ValueSimilarity& value_similarity) {
  std::size_t either = 0;
  double matched = 0.0;
  auto pa = a.predicates().begin(), ea = a.predicates().end();
  auto pb = b.predicates().begin(), eb = b.predicates().end();
  auto skip = [dim](auto& it, auto end) {
    while (it != end && it->dimension != dim) ++it;
  };
  skip(pa, ea);
  skip(pb, eb);
  // Both lists are sorted by (dimension, attribute): merge them.
  while (pa != ea || pb != eb) {
    if (pb == eb || (pa != ea && pa->attribute < pb->attribute)) {
      ++either;
      ++pa;
    } else if (pa == ea || pb->attribute < pa->attribute) {
      ++either;
      ++pb;
    } else {
      ++either;
      matched += value_similarity
                     ? value_similarity(dim, pa->attribute, pa->value, pb->value)
                     : (pa->value == pb->value ? 1.0 : 0.0);
      ++pa;
      ++pb;
    }
    skip(pa, ea);
    skip(pb, eb);
  }
  if (either == 0) {
    throw DimensionAbsentError(std::string("dimension absent: ") +
                               (dim == Dimension::kUser ? "users" : "items"));
  }
  return matched / static_cast<double>(either);
}

namespace {

double Jaccard(const std::vector<std::uint32_t>& a,
               const std::vector<std::uint32_t>& b) {
  std::size_t common = 0;
  auto ia = a.begin(), ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  const std::size_t total = a.size() + b.size() - common;
  if (total == 0) throw InvalidArgument("jaccard: both groups are empty");
  return static_cast<double>(common) / static_cast<double>(total);
}

double BaseSimilarity(const TaggingGroup& a, const TaggingGroup& b,
                      Component component, const MetricConfig& config) {
  switch (component) {
    case Component::kTags:
      return CosineSimilarity(a.signature, b.signature);
    case Component::kUsers:
      return config.users == AttributeMetric::kStructural
                 ? StructuralPairwise(a.descriptor, b.descriptor,
                                      Dimension::kUser, config.value_similarity)
                 : JaccardItemOverlap(a, b);
    case Component::kItems:
      return config.items == AttributeMetric::kStructural
                 ? StructuralPairwise(a.descriptor, b.descriptor,
                                      Dimension::kItem, config.value_similarity)
                 : JaccardUserOverlap(a, b);
  }
  return 0.0;
}

}  // namespace

double JaccardItemOverlap(const TaggingGroup& a, const TaggingGroup& b) {
  return Jaccard(a.item_keys, b.item_keys);
}

double JaccardUserOverlap(const TaggingGroup& a, const TaggingGroup& b) {
  return Jaccard(a.user_keys, b.user_keys);
}

double PairwiseScore(const TaggingGroup& a, const TaggingGroup& b,
                     MiningMeasure measure, const MetricConfig& config) {
  const double sim = BaseSimilarity(a, b, measure.component, config);
  return measure.mode == Mode::kSimilarity ? sim : 1.0 - sim;
}

double AggregateScore(std::span<const TaggingGroup> groups,
                      MiningMeasure measure, const MetricConfig& config) {
  if (groups.size() < 2) {
    throw InvalidArgument("aggregate score needs at least two groups");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::size_t j = i + 1; j < groups.size(); ++j) {
      sum += PairwiseScore(groups[i], groups[j], measure, config);
    }
  }
  const double pairs = static_cast<double>(groups.size()) *
                       static_cast<double>(groups.size() - 1) / 2.0;
  return sum / pairs;
}

}  // namespace tagdm
