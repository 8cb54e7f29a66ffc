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

#ifndef TAGDM_EXACT_H_
#define TAGDM_EXACT_H_

#include <cstdint>
#include <optional>

#include "tagdm/problem.h"

namespace tagdm {

struct ExactOptions {
  // Hard cap on fully scored candidates. Exceeding it throws
  // BudgetExceededError, which is distinct from an infeasible instance.
  std::uint64_t max_candidates = 5'000'000'000ULL;
};

// Best feasible subset of size k_lo..k_hi by objective score, ties to the
// lexicographically smallest ascending index tuple. std::nullopt when no
// subset is feasible.
//
// Subsets are enumerated depth first in lexicographic order. A branch is cut
// when an upper bound on its objective (from per-row pair maxima) cannot beat
// the incumbent, or when a constraint's upper bound stays below its
// threshold; neither cut can discard the optimum.
std::optional<ResultSet> ExactSolve(const Instance& instance,
                                    const ExactOptions& options = {});

}  // namespace tagdm

#endif  // TAGDM_EXACT_H_
