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

#ifndef TAGDM_MODEL_H_
#define TAGDM_MODEL_H_

// Tagging data model: schemas, expanded tagging tuples, describable groups,
// group enumeration and group support.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tagdm {

using TupleId = std::uint32_t;
using GroupIndex = int;

enum class Dimension { kUser, kItem };

std::string_view DimensionPrefix(Dimension dim);  // "u" or "i"

// Reserved value for a missing attribute cell. It is an ordinary member of
// the attribute's domain so every tuple stays describable.
inline constexpr std::string_view kMissingValue = "\xE2\x88\x85";  // U+2205

// Ordered attributes of one dimension with their finite value domains.
// Values are referred to by their position in the domain.
class Schema {
 public:
  Schema() = default;
  Schema(Dimension dimension, std::vector<std::string> attributes,
         std::vector<std::vector<std::string>> domains);

  Dimension dimension() const { return dimension_; }
  std::size_t num_attributes() const { return attributes_.size(); }
  const std::string& attribute(std::size_t a) const { return attributes_[a]; }
  const std::vector<std::string>& attributes() const { return attributes_; }
  const std::vector<std::string>& domain(std::size_t a) const {
    return domains_[a];
  }
  std::optional<std::size_t> FindAttribute(std::string_view name) const;
  std::optional<std::uint32_t> FindValue(std::size_t a,
                                         std::string_view value) const;

  // Width of the concatenated one-hot encoding over all attributes, i.e. the
  // sum of the domain sizes, and the offset of attribute `a` inside it.
  std::size_t OneHotWidth() const { return offsets_.back(); }
  std::size_t OneHotOffset(std::size_t a) const { return offsets_[a]; }

 private:
  Dimension dimension_ = Dimension::kUser;
  std::vector<std::string> attributes_;
  std::vector<std::vector<std::string>> domains_;
  std::vector<std::size_t> offsets_{0};
};

// One expanded tagging action. Attribute values are domain positions aligned
// with the schema; tags are sorted, distinct positions in the store's tag
// dictionary.
struct TaggingTuple {
  TupleId id = 0;
  std::vector<std::uint32_t> user_values;
  std::vector<std::uint32_t> item_values;
  std::vector<std::uint32_t> tags;

  const std::vector<std::uint32_t>& values(Dimension dim) const {
    return dim == Dimension::kUser ? user_values : item_values;
  }
};

// Immutable collection of tuples sharing one user schema, one item schema and
// one tag dictionary. Tuple ids equal their position.
class TupleStore {
 public:
  TupleStore(Schema user_schema, Schema item_schema,
             std::vector<std::string> tag_names,
             std::vector<TaggingTuple> tuples);

  const Schema& schema(Dimension dim) const {
    return dim == Dimension::kUser ? user_schema_ : item_schema_;
  }
  const Schema& user_schema() const { return user_schema_; }
  const Schema& item_schema() const { return item_schema_; }

  std::span<const TaggingTuple> tuples() const { return tuples_; }
  const TaggingTuple& tuple(TupleId id) const { return tuples_[id]; }
  std::size_t size() const { return tuples_.size(); }
  bool empty() const { return tuples_.empty(); }

  std::size_t num_tags() const { return tag_names_.size(); }
  const std::string& tag_name(std::uint32_t tag) const {
    return tag_names_[tag];
  }
  const std::vector<std::string>& tag_names() const { return tag_names_; }

  // Dense key of the distinct user (item) described by a tuple: tuples with
  // identical user (item) attribute values share a key.
  std::uint32_t user_key(TupleId id) const { return user_keys_[id]; }
  std::uint32_t item_key(TupleId id) const { return item_keys_[id]; }

  // Copy of the selected tuples, renumbered from 0 in the given order. The
  // schemas and tag dictionary are kept as is.
  TupleStore Subset(std::span<const TupleId> ids) const;

 private:
  Schema user_schema_;
  Schema item_schema_;
  std::vector<std::string> tag_names_;
  std::vector<TaggingTuple> tuples_;
  std::vector<std::uint32_t> user_keys_;
  std::vector<std::uint32_t> item_keys_;
};

// Accumulates string rows and derives the domains (sorted values) and the tag
// dictionary (sorted tags) on Build().
class TupleStoreBuilder {
 public:
  TupleStoreBuilder(std::vector<std::string> user_attributes,
                    std::vector<std::string> item_attributes);

  // Empty attribute values are stored as kMissingValue. Duplicate tags within
  // a row collapse; a row without tags is rejected.
  void AddRow(std::vector<std::string> user_values,
              std::vector<std::string> item_values,
              std::vector<std::string> tags);

  // Forces values into a domain even when no row uses them.
  void DeclareValue(Dimension dim, std::size_t attribute, std::string value);

  TupleStore Build() const;

 private:
  struct Row {
    std::vector<std::string> user_values;
    std::vector<std::string> item_values;
    std::vector<std::string> tags;
  };
  std::vector<std::string> user_attributes_;
  std::vector<std::string> item_attributes_;
  std::vector<std::vector<std::string>> declared_user_;
  std::vector<std::vector<std::string>> declared_item_;
  std::vector<Row> rows_;
};

struct Predicate {
  Dimension dimension = Dimension::kUser;
  std::uint32_t attribute = 0;
  std::uint32_t value = 0;

  friend auto operator<=>(const Predicate&, const Predicate&) = default;
};

// Conjunction of attribute = value predicates, kept sorted by
// (dimension, attribute) with at most one predicate per attribute.
class GroupDescriptor {
 public:
  GroupDescriptor() = default;
  // Sorts the predicates; throws InvalidArgument on an empty list or on two
  // predicates over the same attribute.
  explicit GroupDescriptor(std::vector<Predicate> predicates);

  std::span<const Predicate> predicates() const { return predicates_; }
  std::size_t size() const { return predicates_.size(); }
  bool Constrains(Dimension dim) const;
  std::optional<std::uint32_t> ValueOf(Dimension dim,
                                       std::uint32_t attribute) const;
  bool Matches(const TaggingTuple& tuple) const;

  // "u:gender=m,i:genre=drama"
  std::string ToString(const TupleStore& store) const;

  friend auto operator<=>(const GroupDescriptor&,
                          const GroupDescriptor&) = default;

 private:
  std::vector<Predicate> predicates_;
};

// Parses "u:attr=value" / "user:attr=value" (and the item equivalents) into a
// predicate against the store's schemas. Throws InvalidArgument for unknown
// attributes; a value outside the domain yields std::nullopt.
std::optional<Predicate> ParsePredicate(std::string_view text,
                                        const TupleStore& store);

// Group tag signature: one non-negative weight per vocabulary entry.
struct TagSignature {
  std::vector<double> weights;

  std::size_t dimension() const { return weights.size(); }
  bool valid() const;  // non-empty with at least one positive weight
};

struct TaggingGroup {
  GroupDescriptor descriptor;
  std::vector<TupleId> members;           // sorted
  TagSignature signature;                 // filled by BuildSignature
  std::vector<bool> one_hot_user;         // width = user OneHotWidth()
  std::vector<bool> one_hot_item;         // width = item OneHotWidth()
  std::vector<std::uint32_t> user_keys;   // distinct users among members
  std::vector<std::uint32_t> item_keys;   // distinct items among members

  const std::vector<bool>& one_hot(Dimension dim) const {
    return dim == Dimension::kUser ? one_hot_user : one_hot_item;
  }
};

// Builds a group with its members, one-hot vectors and user/item key sets.
// The signature is left empty.
TaggingGroup MakeGroup(GroupDescriptor descriptor, const TupleStore& store);

// Every descriptor with at most `max_predicates` predicates whose member count
// is at least `min_size`, in ascending descriptor order. Throws NoDataError on
// an empty store and InvalidArgument for min_size or max_predicates below 1.
std::vector<TaggingGroup> EnumerateGroups(const TupleStore& store,
                                          std::size_t min_size,
                                          std::size_t max_predicates);

// Number of distinct tuples covered by the union of the groups' members.
std::size_t GroupSupport(std::span<const TaggingGroup> groups,
                         const TupleStore& store);
std::size_t GroupSupport(std::span<const TaggingGroup> groups,
                         std::span<const GroupIndex> selection,
                         const TupleStore& store);

// Ids of the tuples satisfying every predicate, ascending.
std::vector<TupleId> MatchingTuples(const TupleStore& store,
                                    std::span<const Predicate> predicates);

}  // namespace tagdm

#endif  // TAGDM_MODEL_H_
