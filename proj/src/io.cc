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

#include "tagdm/io.h"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "tagdm/error.h"

namespace tagdm {
namespace {

std::vector<std::string> Split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

void StripCr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

TupleStore ReadTuples(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("tuple file: no header");
  StripCr(line);
  const std::vector<std::string> header = Split(line, '\t');
  std::vector<std::string> user_attrs, item_attrs;
  std::vector<std::size_t> user_cols, item_cols;
  std::size_t tags_col = header.size();
  for (std::size_t c = 0; c < header.size(); ++c) {
    const std::string& name = header[c];
    if (name.rfind("u:", 0) == 0 && name.size() > 2) {
      user_attrs.push_back(name.substr(2));
      user_cols.push_back(c);
    } else if (name.rfind("i:", 0) == 0 && name.size() > 2) {
      item_attrs.push_back(name.substr(2));
      item_cols.push_back(c);
    } else if (name == "tags") {
      if (tags_col != header.size()) {
        throw InvalidArgument("tuple file: more than one tags column");
      }
      tags_col = c;
    } else {
      throw InvalidArgument("tuple file: unexpected column '" + name + "'");
    }
  }
  if (tags_col == header.size()) {
    throw InvalidArgument("tuple file: missing tags column");
  }

  TupleStoreBuilder builder(user_attrs, item_attrs);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    StripCr(line);
    if (line.empty()) continue;
    const std::vector<std::string> cells = Split(line, '\t');
    if (cells.size() != header.size()) {
      throw InvalidArgument("tuple file line " + std::to_string(line_no) +
                            ": expected " + std::to_string(header.size()) +
                            " fields");
    }
    std::vector<std::string> user, item;
    for (std::size_t c : user_cols) user.push_back(cells[c]);
    for (std::size_t c : item_cols) item.push_back(cells[c]);
    try {
      builder.AddRow(std::move(user), std::move(item),
                     Split(cells[tags_col], '|'));
    } catch (const InvalidArgument& e) {
      throw InvalidArgument("tuple file line " + std::to_string(line_no) +
                            ": " + e.what());
    }
  }
  return builder.Build();
}

TupleStore ReadTuplesFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  return ReadTuples(in);
}

void WriteTuples(const TupleStore& store, std::ostream& out) {
  bool first = true;
  auto cell = [&](std::string_view text) {
    if (!first) out << '\t';
    out << text;
    first = false;
  };
  for (const std::string& a : store.user_schema().attributes()) cell("u:" + a);
  for (const std::string& a : store.item_schema().attributes()) cell("i:" + a);
  cell("tags");
  out << '\n';
  for (const TaggingTuple& t : store.tuples()) {
    first = true;
    for (std::size_t a = 0; a < t.user_values.size(); ++a) {
      const std::string& v = store.user_schema().domain(a)[t.user_values[a]];
      cell(v == kMissingValue ? std::string_view() : std::string_view(v));
    }
    for (std::size_t a = 0; a < t.item_values.size(); ++a) {
      const std::string& v = store.item_schema().domain(a)[t.item_values[a]];
      cell(v == kMissingValue ? std::string_view() : std::string_view(v));
    }
    std::string tags;
    for (std::uint32_t tag : t.tags) {
      if (!tags.empty()) tags += '|';
      tags += store.tag_name(tag);
    }
    cell(tags);
    out << '\n';
  }
}

std::map<int, std::vector<double>> ReadSignatures(std::istream& in) {
  std::map<int, std::vector<double>> out;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    StripCr(line);
    if (line.empty()) continue;
    const auto where = "signature file line " + std::to_string(line_no);
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) throw InvalidArgument(where + ": no tab");
    int index = -1;
    const auto [ptr, ec] =
        std::from_chars(line.data(), line.data() + tab, index);
    if (ec != std::errc() || ptr != line.data() + tab || index < 0) {
      throw InvalidArgument(where + ": bad group index");
    }
    std::vector<double> weights;
    for (const std::string& cell : Split(std::string_view(line).substr(tab + 1), ',')) {
      try {
        std::size_t used = 0;
        const double w = std::stod(cell, &used);
        if (used != cell.size() || w < 0.0) throw std::invalid_argument(cell);
        weights.push_back(w);
      } catch (const std::exception&) {
        throw InvalidArgument(where + ": bad weight '" + cell + "'");
      }
    }
    if (width == 0) width = weights.size();
    if (weights.size() != width) {
      throw InvalidArgument(where + ": weight count differs from line 1");
    }
    if (!out.emplace(index, std::move(weights)).second) {
      throw InvalidArgument(where + ": duplicate group index");
    }
  }
  return out;
}

std::map<int, std::vector<double>> ReadSignaturesFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  return ReadSignatures(in);
}

void WriteSignatures(const std::vector<TaggingGroup>& groups,
                     std::ostream& out) {
  std::ostringstream line;
  line << std::setprecision(17);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    line.str("");
    line << g << '\t';
    const auto& w = groups[g].signature.weights;
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (j > 0) line << ',';
      line << w[j];
    }
    out << line.str() << '\n';
  }
}

}  // namespace tagdm
