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

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tagdm/error.h"
#include "tagdm/fdp.h"
#include "tagdm/io.h"
#include "tagdm/model.h"
#include "tagdm/pipeline.h"
#include "tagdm/problem.h"
#include "tagdm/signature.h"
#include "tagdm/synth.h"

namespace py = pybind11;

namespace {

tagdm::ProblemSpec ResolveProblem(const std::string& problem) {
  for (const std::string& name : tagdm::PresetNames()) {
    if (name == problem) return tagdm::Preset(name);
  }
  return tagdm::ParseProblemSpec(problem);
}

void SetThreshold(tagdm::ProblemSpec& spec, tagdm::Component component,
                  double value) {
  for (tagdm::Constraint& c : spec.constraints) {
    if (c.measure.component == component) c.threshold = value;
  }
}

std::string Run(const tagdm::TupleStore& store, const std::string& problem,
                const std::string& solver, std::optional<int> k,
                std::optional<int> k_min, std::optional<std::size_t> support,
                std::optional<double> q, std::optional<double> r,
                std::uint64_t seed, const std::vector<std::string>& scope,
                std::size_t min_group_size, std::optional<std::string> fdp_mode) {
  tagdm::Query query;
  query.spec = ResolveProblem(problem);
  if (k) {
    query.spec.k_hi = *k;
    query.spec.k_lo = std::min(query.spec.k_lo, *k);
  }
  if (k_min) query.spec.k_lo = *k_min;
  if (support) query.spec.support_p = *support;
  if (q) SetThreshold(query.spec, tagdm::Component::kUsers, *q);
  if (r) SetThreshold(query.spec, tagdm::Component::kItems, *r);
  query.solver = tagdm::ParseSolver(solver);
  query.scope = scope;
  query.tunables.seed = seed;
  query.tunables.min_group_size = min_group_size;
  if (fdp_mode) query.tunables.fdp.mode = tagdm::ParseDispersionMode(*fdp_mode);
  const tagdm::Report report = tagdm::RunQuery(query, store);
  return tagdm::RenderReport(report, tagdm::ReportFormat::kJson, false);
}

}  // namespace

PYBIND11_MODULE(_tagdm, m) {
  m.doc() = "Tagging behavior group mining";

  // Translators run newest first, so the base class goes first.
  const auto& error =
      py::register_exception<tagdm::Error>(m, "Error", PyExc_Exception);
  py::register_exception<tagdm::NoDataError>(m, "NoDataError", error.ptr());
  py::register_exception<tagdm::InvalidSignatureError>(
      m, "InvalidSignatureError", error.ptr());
  py::register_exception<tagdm::BudgetExceededError>(
      m, "BudgetExceededError", error.ptr());

  py::class_<tagdm::TupleStore>(m, "TupleStore")
      .def_static("from_file", &tagdm::ReadTuplesFile, py::arg("path"))
      .def_static(
          "synthetic",
          [](std::size_t tuples, int clusters, std::uint64_t seed) {
            tagdm::SynthOptions options;
            options.tuples = tuples;
            options.clusters = clusters;
            options.seed = seed;
            return tagdm::GenerateSynthetic(options);
          },
          py::arg("tuples"), py::arg("clusters") = 3, py::arg("seed") = 0)
      .def("__len__", &tagdm::TupleStore::size)
      .def_property_readonly("tag_names", &tagdm::TupleStore::tag_names)
      .def_property_readonly(
          "user_attributes",
          [](const tagdm::TupleStore& s) { return s.user_schema().attributes(); })
      .def_property_readonly(
          "item_attributes",
          [](const tagdm::TupleStore& s) { return s.item_schema().attributes(); })
      .def("write", [](const tagdm::TupleStore& s, const std::string& path) {
        std::ofstream out(path);
        if (!out) throw tagdm::InvalidArgument("cannot write '" + path + "'");
        tagdm::WriteTuples(s, out);
      });

  m.def(
      "enumerate_groups",
      [](const tagdm::TupleStore& store, std::size_t min_size) {
        const std::size_t attrs = store.user_schema().num_attributes() +
                                  store.item_schema().num_attributes();
        std::vector<std::pair<std::string, std::size_t>> out;
        for (const auto& g : tagdm::EnumerateGroups(store, min_size, attrs)) {
          out.emplace_back(g.descriptor.ToString(store), g.members.size());
        }
        return out;
      },
      py::arg("store"), py::arg("min_size") = 5,
      "Descriptor string and member count of every group.");

  m.def("presets", &tagdm::PresetNames);
  m.def(
      "preset_json",
      [](const std::string& name) {
        return tagdm::ProblemSpecToJson(tagdm::Preset(name));
      },
      py::arg("name"));

  m.def(
      "cosine_similarity",
      [](const std::vector<double>& x, const std::vector<double>& y) {
        return tagdm::CosineSimilarity(x, y);
      },
      py::arg("x"), py::arg("y"));
  m.def(
      "angular_distance",
      [](const std::vector<double>& x, const std::vector<double>& y) {
        return tagdm::AngularDistance(x, y);
      },
      py::arg("x"), py::arg("y"));

  m.def("run_json", &Run, py::arg("store"), py::arg("problem"),
        py::arg("solver"), py::arg("k") = py::none(),
        py::arg("k_min") = py::none(), py::arg("support") = py::none(),
        py::arg("q") = py::none(), py::arg("r") = py::none(),
        py::arg("seed") = 0, py::arg("scope") = std::vector<std::string>{},
        py::arg("min_group_size") = 5, py::arg("fdp_mode") = py::none(),
        py::call_guard<py::gil_scoped_release>(),
        "Runs one query and returns the JSON report.");
}
