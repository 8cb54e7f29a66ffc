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

#include "tagdm/synth.h"

#include <cstdio>

#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include "tagdm/error.h"
#include "tagdm/random.h"

namespace tagdm {

std::vector<SynthAttribute> DefaultSynthSchema() {
  return {
      {Dimension::kUser, "gender", 2, 0.0},
      {Dimension::kUser, "age", 7, 0.4},
      {Dimension::kUser, "occupation", 21, 0.0},
      {Dimension::kItem, "genre", 18, 0.85},
      {Dimension::kItem, "decade", 4, 0.0},
  };
}

namespace {

std::string ValueName(const SynthAttribute& attr, int v) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%02d", v);
  return attr.name + buf;
}

std::string TagName(const char* prefix, int a, int b) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%02d_%02d", prefix, a, b);
  return buf;
}

}  // namespace

TupleStore GenerateSynthetic(const SynthOptions& options) {
  if (options.clusters < 1) throw InvalidArgument("synth: clusters must be >= 1");
  if (options.tags_per_cluster < 1 || options.max_tags_per_tuple < 1) {
    throw InvalidArgument("synth: tag counts must be >= 1");
  }
  std::vector<std::string> user_names, item_names;
  for (const SynthAttribute& a : options.schema) {
    if (a.domain_size < 1) {
      throw InvalidArgument("synth: empty domain for '" + a.name + "'");
    }
    (a.dimension == Dimension::kUser ? user_names : item_names)
        .push_back(a.name);
  }
  TupleStoreBuilder builder(user_names, item_names);

  Rng rng(options.seed);
  boost::random::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](int n) {
    return boost::random::uniform_int_distribution<int>(0, n - 1)(rng);
  };
  const int clusters = options.clusters;

  for (std::size_t t = 0; t < options.tuples; ++t) {
    const int cluster = uniform(clusters);
    std::vector<std::string> user, item;
    for (const SynthAttribute& a : options.schema) {
      int v;
      if (unit(rng) < a.cluster_affinity) {
        // Preferred values of a cluster: those congruent to it.
        if (a.domain_size >= clusters) {
          const int count = (a.domain_size - cluster + clusters - 1) / clusters;
          v = cluster + clusters * uniform(count);
        } else {
          v = cluster % a.domain_size;
        }
      } else {
        v = uniform(a.domain_size);
      }
      (a.dimension == Dimension::kUser ? user : item)
          .push_back(ValueName(a, v));
    }
    std::vector<std::string> tags;
    const int n_tags = 1 + uniform(options.max_tags_per_tuple);
    for (int k = 0; k < n_tags; ++k) {
      if (options.shared_tags < 1 || unit(rng) < options.cluster_tag_rate) {
        tags.push_back(TagName("c", cluster, uniform(options.tags_per_cluster)));
      } else {
        tags.push_back(TagName("s", 0, uniform(options.shared_tags)));
      }
    }
    builder.AddRow(std::move(user), std::move(item), std::move(tags));
  }
  return builder.Build();
}

}  // namespace tagdm
