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

#include "tagdm/model.h"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <utility>

#include "tagdm/error.h"

namespace tagdm {

std::string_view DimensionPrefix(Dimension dim) {
  return dim == Dimension::kUser ? "u" : "i";
}

Schema::Schema(Dimension dimension, std::vector<std::string> attributes,
               std::vector<std::vector<std::string>> domains)
    : dimension_(dimension),
      attributes_(std::move(attributes)),
      domains_(std::move(domains)) {
  if (attributes_.size() != domains_.size()) {
    throw InvalidArgument("schema: one domain per attribute required");
  }
  std::set<std::string_view> seen;
  for (const std::string& name : attributes_) {
    if (!seen.insert(name).second) {
      throw InvalidArgument("schema: duplicate attribute '" + name + "'");
    }
  }
  for (std::size_t a = 0; a < domains_.size(); ++a) {
    std::set<std::string_view> values(domains_[a].begin(), domains_[a].end());
    if (values.size() != domains_[a].size()) {
      throw InvalidArgument("schema: duplicate value in domain of '" +
                            attributes_[a] + "'");
    }
    offsets_.push_back(offsets_.back() + domains_[a].size());
  }
}

std::optional<std::size_t> Schema::FindAttribute(std::string_view name) const {
  for (std::size_t a = 0; a < attributes_.size(); ++a) {
    if (attributes_[a] == name) return a;
  }
  return std::nullopt;
}

std::optional<std::uint32_t> Schema::FindValue(std::size_t a,
                                               std::string_view value) const {
  const auto& dom = domains_[a];
  for (std::size_t v = 0; v < dom.size(); ++v) {
    if (dom[v] == value) return static_cast<std::uint32_t>(v);
  }
  return std::nullopt;
}

namespace {

void CheckValues(const Schema& schema, const std::vector<std::uint32_t>& values,
                 TupleId id) {
  if (values.size() != schema.num_attributes()) {
    throw InvalidArgument("tuple " + std::to_string(id) +
                          ": attribute count does not match schema");
  }
  for (std::size_t a = 0; a < values.size(); ++a) {
    if (values[a] >= schema.domain(a).size()) {
      throw InvalidArgument("tuple " + std::to_string(id) +
                            ": value outside domain of '" +
                            schema.attribute(a) + "'");
    }
  }
}

std::vector<std::uint32_t> AssignKeys(
    std::span<const TaggingTuple> tuples, Dimension dim) {
  std::map<std::vector<std::uint32_t>, std::uint32_t> keys;
  std::vector<std::uint32_t> out;
  out.reserve(tuples.size());
  for (const TaggingTuple& t : tuples) {
    auto [it, inserted] = keys.try_emplace(
        t.values(dim), static_cast<std::uint32_t>(keys.size()));
    out.push_back(it->second);
  }
  return out;
}

}  // namespace

TupleStore::TupleStore(Schema user_schema, Schema item_schema,
                       std::vector<std::string> tag_names,
                       std::vector<TaggingTuple> tuples)
    : user_schema_(std::move(user_schema)),
      item_schema_(std::move(item_schema)),
      tag_names_(std::move(tag_names)),
      tuples_(std::move(tuples)) {
  for (std::size_t i = 0; i < tuples_.size(); ++i) {
    const TaggingTuple& t = tuples_[i];
    if (t.id != i) throw InvalidArgument("tuple ids must equal positions");
    CheckValues(user_schema_, t.user_values, t.id);
    CheckValues(item_schema_, t.item_values, t.id);
    if (t.tags.empty()) {
      throw InvalidArgument("tuple " + std::to_string(t.id) + ": no tags");
    }
    if (!std::is_sorted(t.tags.begin(), t.tags.end()) ||
        std::adjacent_find(t.tags.begin(), t.tags.end()) != t.tags.end() ||
        t.tags.back() >= tag_names_.size()) {
      throw InvalidArgument("tuple " + std::to_string(t.id) +
                            ": tags must be sorted distinct dictionary ids");
    }
  }
  user_keys_ = AssignKeys(tuples_, Dimension::kUser);
  item_keys_ = AssignKeys(tuples_, Dimension::kItem);
}

TupleStore TupleStore::Subset(std::span<const TupleId> ids) const {
  std::vector<TaggingTuple> picked;
  picked.reserve(ids.size());
  for (TupleId id : ids) {
    TaggingTuple t = tuples_.at(id);
    t.id = static_cast<TupleId>(picked.size());
    picked.push_back(std::move(t));
  }
  return TupleStore(user_schema_, item_schema_, tag_names_, std::move(picked));
}

TupleStoreBuilder::TupleStoreBuilder(std::vector<std::string> user_attributes,
                                     std::vector<std::string> item_attributes)
    : user_attributes_(std::move(user_attributes)),
      item_attributes_(std::move(item_attributes)),
      declared_user_(user_attributes_.size()),
      declared_item_(item_attributes_.size()) {}

void TupleStoreBuilder::AddRow(std::vector<std::string> user_values,
                               std::vector<std::string> item_values,
                               std::vector<std::string> tags) {
  if (user_values.size() != user_attributes_.size() ||
      item_values.size() != item_attributes_.size()) {
    throw InvalidArgument("row " + std::to_string(rows_.size()) +
                          ": wrong number of attribute values");
  }
  for (auto* values : {&user_values, &item_values}) {
    for (std::string& v : *values) {
      if (v.empty()) v = std::string(kMissingValue);
    }
  }
  std::erase_if(tags, [](const std::string& t) { return t.empty(); });
  std::sort(tags.begin(), tags.end());
  tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
  if (tags.empty()) {
    throw InvalidArgument("row " + std::to_string(rows_.size()) + ": no tags");
  }
  rows_.push_back(
      Row{std::move(user_values), std::move(item_values), std::move(tags)});
}

void TupleStoreBuilder::DeclareValue(Dimension dim, std::size_t attribute,
                                     std::string value) {
  auto& declared = dim == Dimension::kUser ? declared_user_ : declared_item_;
  declared.at(attribute).push_back(std::move(value));
}

TupleStore TupleStoreBuilder::Build() const {
  auto domains_for = [&](const std::vector<std::string>& attributes,
                         const std::vector<std::vector<std::string>>& declared,
                         auto row_values) {
    std::vector<std::vector<std::string>> domains(attributes.size());
    for (std::size_t a = 0; a < attributes.size(); ++a) {
      std::set<std::string> values(declared[a].begin(), declared[a].end());
      for (const Row& row : rows_) values.insert(row_values(row)[a]);
      domains[a].assign(values.begin(), values.end());
    }
    return domains;
  };
  Schema user(Dimension::kUser, user_attributes_,
              domains_for(user_attributes_, declared_user_,
                          [](const Row& r) -> const auto& {
                            return r.user_values;
                          }));
  Schema item(Dimension::kItem, item_attributes_,
              domains_for(item_attributes_, declared_item_,
                          [](const Row& r) -> const auto& {
                            return r.item_values;
                          }));

  std::set<std::string> tag_set;
  for (const Row& row : rows_) tag_set.insert(row.tags.begin(), row.tags.end());
  std::vector<std::string> tag_names(tag_set.begin(), tag_set.end());
  auto tag_id = [&](const std::string& t) {
    return static_cast<std::uint32_t>(
        std::lower_bound(tag_names.begin(), tag_names.end(), t) -
        tag_names.begin());
  };
  auto encode = [](const Schema& schema, const std::vector<std::string>& vals) {
    std::vector<std::uint32_t> out(vals.size());
    for (std::size_t a = 0; a < vals.size(); ++a) {
      out[a] = *schema.FindValue(a, vals[a]);
    }
    return out;
  };

  std::vector<TaggingTuple> tuples;
  tuples.reserve(rows_.size());
  for (const Row& row : rows_) {
    TaggingTuple t;
    t.id = static_cast<TupleId>(tuples.size());
    t.user_values = encode(user, row.user_values);
    t.item_values = encode(item, row.item_values);
    for (const std::string& tag : row.tags) t.tags.push_back(tag_id(tag));
    tuples.push_back(std::move(t));
  }
  return TupleStore(std::move(user), std::move(item), std::move(tag_names),
                    std::move(tuples));
}

GroupDescriptor::GroupDescriptor(std::vector<Predicate> predicates)
    : predicates_(std::move(predicates)) {
  if (predicates_.empty()) {
    throw InvalidArgument("group descriptor needs at least one predicate");
  }
  std::sort(predicates_.begin(), predicates_.end());
  for (std::size_t i = 1; i < predicates_.size(); ++i) {
    if (predicates_[i].dimension == predicates_[i - 1].dimension &&
        predicates_[i].attribute == predicates_[i - 1].attribute) {
      throw InvalidArgument("group descriptor constrains an attribute twice");
    }
  }
}

bool GroupDescriptor::Constrains(Dimension dim) const {
  return std::any_of(predicates_.begin(), predicates_.end(),
                     [dim](const Predicate& p) { return p.dimension == dim; });
}

std::optional<std::uint32_t> GroupDescriptor::ValueOf(
    Dimension dim, std::uint32_t attribute) const {
  for (const Predicate& p : predicates_) {
    if (p.dimension == dim && p.attribute == attribute) return p.value;
  }
  return std::nullopt;
}

bool GroupDescriptor::Matches(const TaggingTuple& tuple) const {
  return std::all_of(predicates_.begin(), predicates_.end(),
                     [&](const Predicate& p) {
                       return tuple.values(p.dimension)[p.attribute] == p.value;
                     });
}

std::string GroupDescriptor::ToString(const TupleStore& store) const {
  std::string out;
  for (const Predicate& p : predicates_) {
    if (!out.empty()) out += ',';
    const Schema& schema = store.schema(p.dimension);
    out += DimensionPrefix(p.dimension);
    out += ':';
    out += schema.attribute(p.attribute);
    out += '=';
    out += schema.domain(p.attribute)[p.value];
  }
  return out;
}

std::optional<Predicate> ParsePredicate(std::string_view text,
                                        const TupleStore& store) {
  const auto colon = text.find(':');
  const auto eq = text.find('=', colon == std::string_view::npos ? 0 : colon);
  if (colon == std::string_view::npos || eq == std::string_view::npos) {
    throw InvalidArgument("predicate must look like dim:attr=value, got '" +
                          std::string(text) + "'");
  }
  const std::string_view prefix = text.substr(0, colon);
  Dimension dim;
  if (prefix == "u" || prefix == "user") {
    dim = Dimension::kUser;
  } else if (prefix == "i" || prefix == "item") {
    dim = Dimension::kItem;
  } else {
    throw InvalidArgument("unknown dimension '" + std::string(prefix) + "'");
  }
  const std::string_view attr = text.substr(colon + 1, eq - colon - 1);
  const std::string_view value = text.substr(eq + 1);
  const Schema& schema = store.schema(dim);
  const auto a = schema.FindAttribute(attr);
  if (!a) {
    throw InvalidArgument("unknown attribute '" + std::string(attr) + "'");
  }
  const auto v = schema.FindValue(*a, value.empty() ? kMissingValue : value);
  if (!v) return std::nullopt;
  return Predicate{dim, static_cast<std::uint32_t>(*a), *v};
}

bool TagSignature::valid() const {
  return std::any_of(weights.begin(), weights.end(),
                     [](double w) { return w > 0.0; });
}

namespace {

std::vector<std::uint32_t> DistinctKeys(const std::vector<TupleId>& members,
                                        const TupleStore& store,
                                        Dimension dim) {
  std::vector<std::uint32_t> keys;
  keys.reserve(members.size());
  for (TupleId id : members) {
    keys.push_back(dim == Dimension::kUser ? store.user_key(id)
                                           : store.item_key(id));
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

void FillDerived(TaggingGroup& group, const TupleStore& store) {
  group.one_hot_user.assign(store.user_schema().OneHotWidth(), false);
  group.one_hot_item.assign(store.item_schema().OneHotWidth(), false);
  for (const Predicate& p : group.descriptor.predicates()) {
    const Schema& schema = store.schema(p.dimension);
    auto& bits = p.dimension == Dimension::kUser ? group.one_hot_user
                                                 : group.one_hot_item;
    bits[schema.OneHotOffset(p.attribute) + p.value] = true;
  }
  group.user_keys = DistinctKeys(group.members, store, Dimension::kUser);
  group.item_keys = DistinctKeys(group.members, store, Dimension::kItem);
}

struct Slot {
  Dimension dimension;
  std::uint32_t attribute;
  // postings[v] = ascending ids of tuples whose attribute equals v
  std::vector<std::vector<TupleId>> postings;
};

std::vector<Slot> BuildSlots(const TupleStore& store) {
  std::vector<Slot> slots;
  for (Dimension dim : {Dimension::kUser, Dimension::kItem}) {
    const Schema& schema = store.schema(dim);
    for (std::size_t a = 0; a < schema.num_attributes(); ++a) {
      Slot slot{dim, static_cast<std::uint32_t>(a),
                std::vector<std::vector<TupleId>>(schema.domain(a).size())};
      for (const TaggingTuple& t : store.tuples()) {
        slot.postings[t.values(dim)[a]].push_back(t.id);
      }
      slots.push_back(std::move(slot));
    }
  }
  return slots;
}

}  // namespace

TaggingGroup MakeGroup(GroupDescriptor descriptor, const TupleStore& store) {
  TaggingGroup group;
  group.members = MatchingTuples(store, descriptor.predicates());
  group.descriptor = std::move(descriptor);
  FillDerived(group, store);
  return group;
}

std::vector<TaggingGroup> EnumerateGroups(const TupleStore& store,
                                          std::size_t min_size,
                                          std::size_t max_predicates) {
  if (store.empty()) throw NoDataError("no data");
  if (min_size < 1) throw InvalidArgument("min_size must be at least 1");
  if (max_predicates < 1) {
    throw InvalidArgument("max_predicates must be at least 1");
  }
  const std::vector<Slot> slots = BuildSlots(store);
  std::vector<TaggingGroup> groups;
  std::vector<Predicate> prefix;

  // Depth-first over slots in (dimension, attribute) order. Emitting in
  // pre-order yields ascending descriptor order, and a conjunction's members
  // are a subset of its prefix's members, so an undersized prefix prunes its
  // whole subtree.
  std::function<void(std::size_t, const std::vector<TupleId>&)> extend =
      [&](std::size_t first_slot, const std::vector<TupleId>& members) {
        for (std::size_t s = first_slot; s < slots.size(); ++s) {
          const Slot& slot = slots[s];
          for (std::uint32_t v = 0; v < slot.postings.size(); ++v) {
            std::vector<TupleId> narrowed;
            if (prefix.empty()) {
              narrowed = slot.postings[v];
            } else {
              std::set_intersection(members.begin(), members.end(),
                                    slot.postings[v].begin(),
                                    slot.postings[v].end(),
                                    std::back_inserter(narrowed));
            }
            if (narrowed.size() < min_size) continue;
            prefix.push_back(Predicate{slot.dimension, slot.attribute, v});
            TaggingGroup group;
            group.descriptor = GroupDescriptor(prefix);
            group.members = narrowed;
            FillDerived(group, store);
            groups.push_back(std::move(group));
            if (prefix.size() < max_predicates) extend(s + 1, narrowed);
            prefix.pop_back();
          }
        }
      };
  extend(0, {});
  return groups;
}

std::size_t GroupSupport(std::span<const TaggingGroup> groups,
                         const TupleStore& store) {
  std::vector<bool> covered(store.size(), false);
  std::size_t count = 0;
  for (const TaggingGroup& g : groups) {
    for (TupleId id : g.members) {
      if (!covered[id]) {
        covered[id] = true;
        ++count;
      }
    }
  }
  return count;
}

std::size_t GroupSupport(std::span<const TaggingGroup> groups,
                         std::span<const GroupIndex> selection,
                         const TupleStore& store) {
  std::vector<bool> covered(store.size(), false);
  std::size_t count = 0;
  for (GroupIndex g : selection) {
    for (TupleId id : groups[g].members) {
      if (!covered[id]) {
        covered[id] = true;
        ++count;
      }
    }
  }
  return count;
}

std::vector<TupleId> MatchingTuples(const TupleStore& store,
                                    std::span<const Predicate> predicates) {
  std::vector<TupleId> ids;
  for (const TaggingTuple& t : store.tuples()) {
    const bool ok = std::all_of(
        predicates.begin(), predicates.end(), [&](const Predicate& p) {
          return t.values(p.dimension)[p.attribute] == p.value;
        });
    if (ok) ids.push_back(t.id);
  }
  return ids;
}

}  // namespace tagdm
