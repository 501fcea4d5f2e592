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

// Deterministic oracle servers for testing the wire protocol without a
// model. Speaks the stdio protocol by default, HTTP with --http-port.
//
//   entre_stub_server --kind memorizer --corpus train.json
//   entre_stub_server --kind context-reader --triggers triggers.json
//   entre_stub_server --kind reference-ner --corpus gold.json --http-port 0

#include <unistd.h>

#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "entre/corpus.h"
#include "entre/oracle.h"
#include "entre/wire.h"
#include "httplib.h"
#include "json.hpp"

namespace {

using nlohmann::json;

int ServeHttp(const std::string& host, int port,
              std::function<json(const json&)> answer, const json& handshake) {
  httplib::Server server;
  server.Get("/", [&](const httplib::Request&, httplib::Response& res) {
    res.set_content(handshake.dump(), "application/json");
  });
  server.Post("/", [&](const httplib::Request& req, httplib::Response& res) {
    try {
      res.set_content(answer(json::parse(req.body)).dump(),
                      "application/json");
    } catch (const std::exception& e) {
      res.status = 400;
      res.set_content(json{{"error", e.what()}}.dump(), "application/json");
    }
  });
  int bound = port;
  if (port == 0) {
    bound = server.bind_to_any_port(host);
  } else if (!server.bind_to_port(host, port)) {
    std::cerr << "cannot bind " << host << ":" << port << "\n";
    return 1;
  }
  std::cerr << "listening on http://" << host << ":" << bound << "/\n";
  return server.listen_after_bind() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app("Stub oracle server", "entre_stub_server");
  std::string kind;
  std::string corpus_path;
  std::string triggers_path;
  bool reverse = false;
  std::optional<int> http_port;
  std::string host = "127.0.0.1";
  app.add_option("--kind", kind, "oracle behaviour")
      ->required()
      ->check(CLI::IsMember({"memorizer", "context-reader", "reference-ner"}));
  app.add_option("--corpus", corpus_path,
                 "corpus to memorize (memorizer) or echo (reference-ner)");
  app.add_option("--triggers", triggers_path,
                 "JSON object mapping trigger token -> relation");
  app.add_flag("--reverse", reverse,
               "answer each buffered batch in reverse order");
  app.add_option("--http-port", http_port, "serve HTTP (0 picks a port)");
  app.add_option("--host", host, "HTTP bind address");
  CLI11_PARSE(app, argc, argv);

  try {
    std::unique_ptr<entre::RelationOracle> relation;
    std::unique_ptr<entre::NerOracle> ner;
    std::vector<std::string> ner_labels;
    if (kind == "memorizer" || kind == "reference-ner") {
      if (corpus_path.empty()) {
        std::cerr << "--corpus is required for --kind " << kind << "\n";
        return 64;
      }
      auto corpus = entre::LoadCorpus(corpus_path).instances;
      if (kind == "memorizer") {
        relation = entre::EntityMemorizerStub::FromCorpus(corpus);
      } else {
        std::set<std::string> types;
        for (const auto& instance : corpus) {
          types.insert(instance.subj_type.name());
          types.insert(instance.obj_type.name());
        }
        ner_labels.assign(types.begin(), types.end());
        ner = std::make_unique<entre::ReferenceNerStub>(corpus);
      }
    } else {
      if (triggers_path.empty()) {
        std::cerr << "--triggers is required for --kind context-reader\n";
        return 64;
      }
      auto triggers = json::parse(entre::ReadFile(triggers_path))
                          .get<std::map<std::string, std::string>>();
      relation = std::make_unique<entre::ContextReaderStub>(triggers);
    }

    if (http_port) {
      if (relation) {
        return ServeHttp(
            host, *http_port,
            [&](const json& r) {
              return entre::AnswerRelationBatch(*relation, r);
            },
            entre::MakeHandshake(relation->labels()));
      }
      return ServeHttp(
          host, *http_port,
          [&](const json& r) { return entre::AnswerNerBatch(*ner, r); },
          entre::MakeHandshake(ner_labels));
    }
    entre::ServeOptions options;
    options.reverse_within_batch = reverse;
    if (relation) {
      entre::ServeRelationStdio(*relation, STDIN_FILENO, STDOUT_FILENO,
                                options);
    } else {
      entre::ServeNerStdio(*ner, ner_labels, STDIN_FILENO, STDOUT_FILENO,
                           options);
    }
  } catch (const std::exception& e) {
    std::cerr << "entre_stub_server: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
