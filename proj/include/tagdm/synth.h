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

#ifndef TAGDM_SYNTH_H_
#define TAGDM_SYNTH_H_

// Synthetic tagging data with planted clusters: each tuple belongs to a
// latent cluster that drives its tags and, through per-attribute affinity,
// some of its attribute values.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tagdm/model.h"

namespace tagdm {

struct SynthAttribute {
  Dimension dimension = Dimension::kUser;
  std::string name;
  int domain_size = 2;
  // Probability that the value is one of the cluster's preferred values
  // rather than uniform over the domain.
  double cluster_affinity = 0.0;
};

// gender(2), age(7), occupation(21) for users; genre(18) and decade(4) for
// items. Genre follows the cluster closely, age loosely.
std::vector<SynthAttribute> DefaultSynthSchema();

struct SynthOptions {
  std::size_t tuples = 1000;
  int clusters = 3;
  std::uint64_t seed = 0;
  std::vector<SynthAttribute> schema = DefaultSynthSchema();
  int tags_per_cluster = 8;
  int shared_tags = 6;
  double cluster_tag_rate = 0.85;  // chance a tag comes from the cluster
  int max_tags_per_tuple = 3;
};

// Deterministic in the options. Throws InvalidArgument for clusters < 1 or
// an empty domain.
TupleStore GenerateSynthetic(const SynthOptions& options);

}  // namespace tagdm

#endif  // TAGDM_SYNTH_H_
