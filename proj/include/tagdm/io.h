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

#ifndef TAGDM_IO_H_
#define TAGDM_IO_H_

// Tab-separated tuple files and signature files.
//
// Tuple file: a header naming the columns, "u:<attr>" for user attributes,
// "i:<attr>" for item attributes and one "tags" column whose cells join tags
// with '|'. Empty attribute cells read as the missing-value sentinel.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "tagdm/model.h"

namespace tagdm {

TupleStore ReadTuples(std::istream& in);
TupleStore ReadTuplesFile(const std::string& path);

// Columns in schema order: user attributes, item attributes, tags.
void WriteTuples(const TupleStore& store, std::ostream& out);

// Signature file: one line per group, "<group index>\t<w1>,<w2>,...". Every
// line must carry the same number of weights.
std::map<int, std::vector<double>> ReadSignatures(std::istream& in);
std::map<int, std::vector<double>> ReadSignaturesFile(const std::string& path);
void WriteSignatures(const std::vector<TaggingGroup>& groups, std::ostream& out);

}  // namespace tagdm

#endif  // TAGDM_IO_H_
