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

#include "conformance.h"

#include <gtest/gtest.h>

#include <map>
#include <set>

namespace entre::testing {
namespace {

using nlohmann::json;

std::vector<std::string> CheckHandshake(const json& handshake) {
  EXPECT_TRUE(handshake.is_object()) << handshake.dump();
  EXPECT_TRUE(handshake.contains("labels")) << handshake.dump();
  if (!handshake.is_object() || !handshake.contains("labels")) return {};
  const json& labels = handshake["labels"];
  EXPECT_TRUE(labels.is_array());
  std::vector<std::string> out;
  for (const json& label : labels) {
    EXPECT_TRUE(label.is_string()) << label.dump();
    if (label.is_string()) out.push_back(label.get<std::string>());
  }
  EXPECT_FALSE(out.empty());
  EXPECT_EQ(std::set<std::string>(out.begin(), out.end()).size(), out.size())
      << "duplicate labels in handshake";
  return out;
}

// id -> response, checking that ids are exactly the request ids.
std::map<std::string, json> ById(const std::vector<json>& requests,
                                 const std::vector<json>& responses) {
  EXPECT_EQ(responses.size(), requests.size());
  std::set<std::string> expected;
  for (const json& r : requests) expected.insert(r["id"].get<std::string>());
  std::map<std::string, json> out;
  for (const json& response : responses) {
    EXPECT_TRUE(response.is_object() && response.contains("id") &&
                response["id"].is_string())
        << response.dump();
    if (!response.contains("id") || !response["id"].is_string()) continue;
    std::string id = response["id"].get<std::string>();
    EXPECT_TRUE(expected.contains(id)) << "unrequested id " << id;
    EXPECT_TRUE(out.emplace(id, response).second) << "duplicate id " << id;
  }
  EXPECT_EQ(out.size(), expected.size());
  return out;
}

}  // namespace

void RunRelationConformance(const TransportFactory& factory,
                            std::span<const REInstance> probe) {
  std::unique_ptr<Transport> transport = factory();
  std::vector<std::string> labels = CheckHandshake(transport->Handshake());
  std::set<std::string> label_set(labels.begin(), labels.end());
  EXPECT_TRUE(label_set.contains(std::string(kNoRelation)));

  std::vector<json> requests;
  for (const REInstance& instance : probe) {
    requests.push_back(ToJson(MakeRequest(instance)));
  }
  std::map<std::string, json> first =
      ById(requests, transport->Exchange(requests));
  for (const auto& [id, response] : first) {
    ASSERT_TRUE(response.contains("label") && response["label"].is_string())
        << response.dump();
    std::string label = response["label"].get<std::string>();
    EXPECT_TRUE(label_set.contains(label)) << "label outside set: " << label;
    if (response.contains("scores")) {
      double best = -1e300;
      std::string best_label;
      for (const auto& [name, score] : response["scores"].items()) {
        EXPECT_TRUE(label_set.contains(name)) << name;
        if (score.get<double>() > best) {
          best = score.get<double>();
          best_label = name;
        }
      }
      EXPECT_EQ(response["scores"].value(label, -1e300), best)
          << "label is not the argmax for " << id;
    }
  }

  // Pure function of the request: same answers again, also one at a time.
  std::map<std::string, json> second =
      ById(requests, transport->Exchange(requests));
  for (const auto& [id, response] : first) {
    EXPECT_EQ(second[id]["label"], response["label"]) << id;
  }
  for (std::size_t i = 0; i < std::min<std::size_t>(requests.size(), 3); ++i) {
    std::vector<json> single = {requests[i]};
    std::map<std::string, json> one = ById(single, transport->Exchange(single));
    std::string id = requests[i]["id"].get<std::string>();
    EXPECT_EQ(one[id]["label"], first[id]["label"]);
  }

  // The client reaches the same answers through its own id matching.
  ClientOptions options;
  options.batch_size = 7;
  RemoteRelationOracle client(factory, options);
  EXPECT_EQ(client.labels(), labels);
  std::vector<OraclePrediction> predictions =
      PredictInstances(client, probe);
  ASSERT_EQ(predictions.size(), probe.size());
  for (std::size_t i = 0; i < probe.size(); ++i) {
    EXPECT_EQ(predictions[i].id, probe[i].id);
    EXPECT_EQ(json(predictions[i].label), first[probe[i].id]["label"]);
  }
}

void RunNerConformance(const TransportFactory& factory,
                       std::span<const REInstance> probe) {
  std::unique_ptr<Transport> transport = factory();
  std::vector<std::string> labels = CheckHandshake(transport->Handshake());
  std::set<std::string> label_set(labels.begin(), labels.end());

  std::vector<json> requests;
  std::map<std::string, std::size_t> n_tokens;
  for (const REInstance& instance : probe) {
    requests.push_back(ToJson(NerRequest{instance.id, instance.tokens}));
    n_tokens[instance.id] = instance.tokens.size();
  }
  for (const auto& [id, response] : ById(requests, transport->Exchange(requests))) {
    ASSERT_TRUE(response.contains("spans") && response["spans"].is_array())
        << response.dump();
    std::vector<std::pair<int, int>> spans;
    for (const json& span : response["spans"]) {
      int start = span.at("start").get<int>();
      int end = span.at("end").get<int>();
      EXPECT_LE(0, start);
      EXPECT_LT(start, end);
      EXPECT_LE(end, static_cast<int>(n_tokens[id]));
      EXPECT_TRUE(label_set.contains(span.at("type").get<std::string>()))
          << span.dump();
      spans.emplace_back(start, end);
    }
    std::sort(spans.begin(), spans.end());
    for (std::size_t i = 1; i < spans.size(); ++i) {
      EXPECT_LE(spans[i - 1].second, spans[i].first) << "overlap in " << id;
    }
  }

  ClientOptions options;
  options.batch_size = 5;
  RemoteNerOracle client(factory, options);
  EXPECT_EQ(client.labels(), labels);
  std::vector<NerRequest> typed;
  for (const REInstance& instance : probe) {
    typed.push_back({instance.id, instance.tokens});
  }
  std::vector<NerResponse> responses = client.TagBatch(typed);
  ASSERT_EQ(responses.size(), probe.size());
  for (std::size_t i = 0; i < probe.size(); ++i) {
    EXPECT_EQ(responses[i].id, probe[i].id);
  }
}

}  // namespace entre::testing
