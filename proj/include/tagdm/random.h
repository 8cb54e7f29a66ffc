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

#ifndef TAGDM_RANDOM_H_
#define TAGDM_RANDOM_H_

#include <cstdint>

#include <boost/random/mersenne_twister.hpp>

namespace tagdm {

// 64-bit Mersenne Twister. Paired with the Boost distributions it produces
// the same streams on every platform, which std:: distributions do not.
using Rng = boost::random::mt19937_64;

// SplitMix64 finalizer; derives independent sub-seeds from (seed, stream).
inline std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace tagdm

#endif  // TAGDM_RANDOM_H_
