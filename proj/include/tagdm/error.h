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

#ifndef TAGDM_ERROR_H_
#define TAGDM_ERROR_H_

#include <stdexcept>
#include <string>

namespace tagdm {

// Base of every error raised by the library. Solvers report "no feasible
// answer" through std::optional, never through an exception.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad file, bad config, precondition violated by a caller.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// The tuple store (or a scoped subset of it) is empty.
class NoDataError : public Error {
 public:
  using Error::Error;
};

// A group's tags are all outside the vocabulary, or a signature is zero.
class InvalidSignatureError : public Error {
 public:
  using Error::Error;
};

// Neither group of a pair constrains the compared dimension.
class DimensionAbsentError : public Error {
 public:
  using Error::Error;
};

// The exact solver would have to evaluate more candidates than allowed.
class BudgetExceededError : public Error {
 public:
  using Error::Error;
};

}  // namespace tagdm

#endif  // TAGDM_ERROR_H_
