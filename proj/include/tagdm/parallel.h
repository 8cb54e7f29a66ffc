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

#ifndef TAGDM_PARALLEL_H_
#define TAGDM_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace tagdm {

// Worker count: TAGDM_THREADS when set to a positive integer, otherwise the
// hardware concurrency (at least 1).
int WorkerCount();

// Splits [0, n) into contiguous chunks and runs body(begin, end) on up to
// WorkerCount() threads. Returns after every chunk finished; the first
// exception thrown by a chunk is rethrown.
void ParallelFor(std::size_t n,
                 const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace tagdm

#endif  // TAGDM_PARALLEL_H_
