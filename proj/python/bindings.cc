// Copyright 2026 The ENTRE Authors.
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


// Python bindings for the ENTRE core library.

#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "entre/audit.h"
#include "entre/cli.h"
#include "entre/corpus.h"
#include "entre/error.h"
#include "entre/eval.h"
#include "entre/lexicon.h"
#include "entre/loop.h"
#include "entre/oracle.h"
#include "entre/replace.h"
#include "entre/wire.h"

namespace py = pybind11;

namespace entre {
namespace {

using nlohmann::json;

py::object ToPython(const json& value) {
  return py::module_::import("json").attr("loads")(value.dump());
}

Role ParseRole(const std::string& name) {
  if (name == "subject") return Role::kSubject;
  if (name == "object") return Role::kObject;
  throw py::value_error("role must be 'subject' or 'object', got '" + name +
                        "'");
}

std::pair<int, int> ToPair(const Span& span) { return {span.start, span.end}; }
Span FromPair(const std::pair<int, int>& p) { return {p.first, p.second}; }

// Relation oracle backed by a Python callable that maps a list of request
// dicts to a list of labels.
class CallbackOracle : public RelationOracle {
 public:
  using Callback = std::function<std::vector<std::string>(py::list)>;

  CallbackOracle(Callback callback, std::vector<std::string> labels,
                 std::size_t batch_size)
      : RelationOracle(batch_size),
        callback_(std::move(callback)),
        labels_(std::move(labels)) {}

  const std::vector<std::string>& labels() const override { return labels_; }
  std::string identity() const override { return "python-callback"; }

 protected:
  std::vector<OraclePrediction> PredictChunk(
      std::span<const OracleRequest> batch) override {
    py::list requests;
    for (const OracleRequest& request : batch) {
      requests.append(ToPython(ToJson(request)));
    }
    std::vector<std::string> answer = callback_(requests);
    if (answer.size() != batch.size()) {
      throw Error(ErrorCode::kOracle,
                  "callback returned " + std::to_string(answer.size()) +
                      " labels for " + std::to_string(batch.size()) +
                      " requests");
    }
    std::vector<OraclePrediction> out;
    out.reserve(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
      out.push_back({batch[i].id, std::move(answer[i]), {}});
    }
    return out;
  }

 private:
  Callback callback_;
  std::vector<std::string> labels_;
};

py::tuple Loaded(LoadResult result) {
  return py::make_tuple(std::move(result.instances),
                        ToPython(ToJson(result.skipped)));
}

LoadOptions Options(bool lenient) {
  LoadOptions options;
  options.mode = lenient ? LoadMode::kLenient : LoadMode::kStrict;
  return options;
}

}  // namespace
}  // namespace entre

PYBIND11_MODULE(_entre, m) {
  using namespace entre;
  m.doc() = "Type-constrained entity replacement for relation extraction";

  static py::handle entre_error =
      py::exception<Error>(m, "EntreError").release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object err =
          py::reinterpret_borrow<py::object>(entre_error)(e.what());
      err.attr("code") = std::string(ErrorCodeName(e.code()));
      PyErr_SetObject(entre_error.ptr(), err.ptr());
    }
  });

  py::class_<REInstance>(m, "Instance")
      .def(py::init([](std::string id, std::vector<std::string> tokens,
                       std::pair<int, int> subj, std::pair<int, int> obj,
                       const std::string& subj_type,
                       const std::string& obj_type, std::string relation) {
             REInstance in;
             in.id = std::move(id);
             in.tokens = std::move(tokens);
             in.subj = FromPair(subj);
             in.obj = FromPair(obj);
             in.subj_type = EntityType::FromString(subj_type);
             in.obj_type = EntityType::FromString(obj_type);
             in.relation = std::move(relation);
             ValidateInstance(in);
             return in;
           }),
           py::arg("id"), py::arg("tokens"), py::arg("subj"), py::arg("obj"),
           py::arg("subj_type"), py::arg("obj_type"), py::arg("relation"))
      .def_readonly("id", &REInstance::id)
      .def_readonly("tokens", &REInstance::tokens)
      .def_property_readonly("subj",
                             [](const REInstance& in) { return ToPair(in.subj); })
      .def_property_readonly("obj",
                             [](const REInstance& in) { return ToPair(in.obj); })
      .def_property_readonly(
          "subj_type", [](const REInstance& in) { return in.subj_type.name(); })
      .def_property_readonly(
          "obj_type", [](const REInstance& in) { return in.obj_type.name(); })
      .def_readonly("relation", &REInstance::relation)
      .def("name",
           [](const REInstance& in, const std::string& role) {
             return in.Name(ParseRole(role));
           })
      .def("to_record",
           [](const REInstance& in) { return ToPython(InstanceToRecord(in)); })
      .def(py::self == py::self)
      .def("__repr__", [](const REInstance& in) {
        return "<Instance " + in.id + " " + in.relation + ">";
      });

  m.def("load_corpus",
        [](const std::string& path, bool lenient) {
          return Loaded(LoadCorpus(path, Options(lenient)));
        },
        py::arg("path"), py::arg("lenient") = false,
        "Load a TACRED-style JSON file. Returns (instances, skipped).");
  m.def("parse_corpus",
        [](const std::string& text, bool lenient) {
          return Loaded(ParseCorpus(text, Options(lenient)));
        },
        py::arg("text"), py::arg("lenient") = false);
  m.def("serialize_corpus",
        [](const std::vector<REInstance>& instances) {
          return SerializeCorpus(instances);
        });
  m.def("corpus_stats", [](const std::vector<REInstance>& instances) {
    return ToPython(ToJson(ComputeCorpusStats(instances)));
  });

  m.def("replace_entity",
        [](const REInstance& in, const std::string& role,
           const std::vector<std::string>& name, bool rewrite_mentions) {
          return ReplaceEntity(in, ParseRole(role), name,
                               {.rewrite_mentions = rewrite_mentions});
        },
        py::arg("instance"), py::arg("role"), py::arg("name"),
        py::arg("rewrite_mentions") = false);
  m.def("apply_entity_mask",
        [](const REInstance& in, const std::string& mode) {
          return ApplyEntityMask(in, ParseMaskMode(mode));
        },
        py::arg("instance"), py::arg("mode") = "no-name-with-type");
  m.def("mask_context",
        [](const REInstance& in, const std::string& mask_token,
           const std::string& mode) {
          return MaskContext(in, mask_token, ParseContextMaskMode(mode));
        },
        py::arg("instance"), py::arg("mask_token") = kDefaultMaskToken,
        py::arg("mode") = "preserve-positions");

  m.def("micro_f1",
        [](const std::vector<std::string>& golds,
           const std::vector<std::string>& preds) {
          return ToPython(ToJson(MicroF1(golds, preds)));
        },
        py::arg("golds"), py::arg("preds"));

  py::class_<EntityLexicon>(m, "Lexicon")
      .def_static("from_lines", &EntityLexicon::FromLines, py::arg("persons"),
                  py::arg("organizations"))
      .def_static(
          "from_files",
          [](const std::string& persons, const std::string& organizations) {
            return EntityLexicon::FromFiles(persons, organizations);
          },
          py::arg("persons"), py::arg("organizations"))
      .def_property_readonly("person_count", &EntityLexicon::person_count)
      .def_property_readonly("organization_count",
                             &EntityLexicon::organization_count)
      .def(
          "sample",
          [](const EntityLexicon& lexicon, const std::string& type,
             std::uint64_t seed, std::size_t count) {
            Rng rng(seed);
            const EntityType t = EntityType::FromString(type);
            std::vector<EntityName> names;
            for (std::size_t i = 0; i < count; ++i) {
              names.push_back(SampleName(lexicon, t, nullptr, rng));
            }
            return names;
          },
          py::arg("type"), py::arg("seed"), py::arg("count") = 1);

  py::class_<RelationOracle>(m, "RelationOracle")
      .def_property_readonly("labels", &RelationOracle::labels)
      .def_property_readonly("identity", &RelationOracle::identity)
      .def_property_readonly(
          "requests",
          [](const RelationOracle& o) { return o.counters().requests; })
      .def_property_readonly(
          "batches", [](const RelationOracle& o) { return o.counters().batches; })
      .def("predict", [](RelationOracle& oracle,
                         const std::vector<REInstance>& instances) {
        std::vector<std::string> labels;
        for (const OraclePrediction& p : PredictInstances(oracle, instances)) {
          labels.push_back(p.label);
        }
        return labels;
      });
  py::class_<EntityMemorizerStub, RelationOracle>(m, "MemorizerOracle")
      .def(py::init([](const std::vector<REInstance>& corpus,
                       std::size_t batch_size) {
             return EntityMemorizerStub::FromCorpus(corpus, batch_size);
           }),
           py::arg("corpus"), py::arg("batch_size") = kDefaultBatchSize);
  py::class_<ContextReaderStub, RelationOracle>(m, "ContextReaderOracle")
      .def(py::init<std::map<std::string, std::string>,
                    std::vector<std::string>, std::size_t>(),
           py::arg("triggers"), py::arg("extra_labels") = std::vector<std::string>{},
           py::arg("batch_size") = kDefaultBatchSize);
  py::class_<CallbackOracle, RelationOracle>(m, "CallbackOracle")
      .def(py::init<CallbackOracle::Callback, std::vector<std::string>,
                    std::size_t>(),
           py::arg("callback"), py::arg("labels"),
           py::arg("batch_size") = kDefaultBatchSize);
  py::class_<RemoteRelationOracle, RelationOracle>(m, "RemoteOracle")
      .def(py::init([](const std::string& endpoint, std::size_t batch_size,
                       std::size_t workers) {
             ClientOptions options;
             options.batch_size = batch_size;
             options.workers = workers;
             return std::make_unique<RemoteRelationOracle>(
                 TransportFor(endpoint), options);
           }),
           py::arg("endpoint"), py::arg("batch_size") = kDefaultBatchSize,
           py::arg("workers") = 1);

  m.def("run_entre",
        [](const std::vector<REInstance>& instances,
           const EntityLexicon& lexicon, RelationOracle& oracle,
           const std::string& mode, int max_iterations, std::uint64_t seed,
           bool initial_pass, bool unique_names,
           bool exclude_no_relation_matches) {
          LoopConfig config;
          config.mode = ParseSelectionMode(mode);
          config.max_iterations = max_iterations;
          config.seed = seed;
          config.initial_pass = initial_pass;
          config.unique_names = unique_names;
          config.exclude_no_relation_matches = exclude_no_relation_matches;
          EntreResult result = RunEntre(instances, lexicon, oracle, config);
          return py::make_tuple(std::move(result.corpus),
                                ToPython(ToJson(result.trace)));
        },
        py::arg("instances"), py::arg("lexicon"), py::arg("oracle"),
        py::arg("mode") = "full", py::arg("max_iterations") = 200,
        py::arg("seed") = 0, py::arg("initial_pass") = false,
        py::arg("unique_names") = false,
        py::arg("exclude_no_relation_matches") = false,
        "Run the replacement loop. Returns (corpus, trace).");

  m.def("robustness_eval",
        [](const std::vector<REInstance>& before,
           const std::vector<REInstance>& after, RelationOracle& oracle) {
          return ToPython(ToJson(RobustnessEval(before, after, oracle)));
        });
  m.def("shortcut_analysis",
        [](const std::vector<REInstance>& instances, RelationOracle& oracle,
           const std::string& mode) {
          return ToPython(ToJson(
              ShortcutAnalysis(instances, oracle, ParseContextMaskMode(mode))));
        },
        py::arg("instances"), py::arg("oracle"),
        py::arg("mode") = "preserve-positions");
  m.def("diversity_stats",
        [](const std::vector<REInstance>& instances, std::size_t top_k) {
          return ToPython(ToJson(DiversityStats(instances, top_k)));
        },
        py::arg("instances"), py::arg("top_k") = 10);
  m.def("eligibility_filter", [](const std::vector<REInstance>& instances) {
    EligibilityResult result = EligibilityFilter(instances);
    std::vector<REInstance> ineligible;
    for (IneligibleInstance& item : result.ineligible) {
      ineligible.push_back(std::move(item.instance));
    }
    return py::make_tuple(std::move(result.eligible), std::move(ineligible));
  });

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out;
          std::ostringstream err;
          int code;
          {
            py::gil_scoped_release release;
            code = RunCli(args, out, err);
          }
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"),
        "Run an entre subcommand in-process. Returns (exit_code, stdout, "
        "stderr).");
}
