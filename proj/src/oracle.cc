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

#include "entre/oracle.h"

#include <algorithm>
#include <limits>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "entre/error.h"

namespace entre {

namespace {

template <typename T>
std::vector<std::span<const T>> Chunk(std::span<const T> items,
                                      std::size_t batch_size) {
  std::vector<std::span<const T>> chunks;
  for (std::size_t i = 0; i < items.size(); i += batch_size) {
    chunks.push_back(items.subspan(i, std::min(batch_size, items.size() - i)));
  }
  return chunks;
}

template <typename T>
void RequireUniqueIds(std::span<const T> requests) {
  std::unordered_set<std::string_view> ids;
  for (const T& request : requests) {
    if (!ids.insert(request.id).second) {
      throw Error(ErrorCode::kPipeline,
                  "duplicate request id '" + request.id + "' in batch");
    }
  }
}

// Matches responses to requests by id. Every request id must be answered
// exactly once and nothing else may be answered.
template <typename Request, typename Response>
std::vector<Response> MatchById(std::span<const Request> batch,
                                std::vector<Response> responses) {
  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < batch.size(); ++i) position[batch[i].id] = i;
  std::vector<std::optional<Response>> slots(batch.size());
  for (Response& response : responses) {
    auto it = position.find(response.id);
    if (it == position.end()) {
      throw Error(ErrorCode::kOracle,
                  "protocol violation: response for unknown id '" +
                      response.id + "'");
    }
    if (slots[it->second]) {
      throw Error(ErrorCode::kOracle,
                  "protocol violation: duplicate response for id '" +
                      response.id + "'");
    }
    slots[it->second] = std::move(response);
  }
  std::vector<Response> ordered;
  ordered.reserve(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    if (!slots[i]) {
      throw Error(ErrorCode::kOracle,
                  "protocol violation: no response for id '" + batch[i].id +
                      "'");
    }
    ordered.push_back(std::move(*slots[i]));
  }
  return ordered;
}

void CheckPrediction(const OraclePrediction& prediction,
                     const std::set<std::string_view>& labels) {
  if (!labels.contains(prediction.label)) {
    throw Error(ErrorCode::kOracle, "protocol violation: id '" +
                                        prediction.id + "' has label '" +
                                        prediction.label +
                                        "' outside the announced label set");
  }
  if (!prediction.scores) return;
  if (prediction.scores->empty()) {
    throw Error(ErrorCode::kOracle,
                "protocol violation: id '" + prediction.id +
                    "' has an empty score map");
  }
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& [label, score] : *prediction.scores) {
    if (!labels.contains(label)) {
      throw Error(ErrorCode::kOracle, "protocol violation: id '" +
                                          prediction.id + "' scores label '" +
                                          label + "' outside the label set");
    }
    best = std::max(best, score);
  }
  auto it = prediction.scores->find(prediction.label);
  if (it == prediction.scores->end() || it->second < best) {
    throw Error(ErrorCode::kOracle,
                "protocol violation: id '" + prediction.id + "' label '" +
                    prediction.label + "' is not the argmax of its scores");
  }
}

void CheckNerResponse(const NerRequest& request, const NerResponse& response) {
  const int n = static_cast<int>(request.tokens.size());
  std::vector<Span> spans;
  for (const NerSpan& s : response.spans) {
    if (s.span.start < 0 || s.span.start >= s.span.end || s.span.end > n) {
      throw Error(ErrorCode::kOracle,
                  "protocol violation: id '" + response.id + "' span [" +
                      std::to_string(s.span.start) + "," +
                      std::to_string(s.span.end) + ") out of bounds");
    }
    spans.push_back(s.span);
  }
  std::sort(spans.begin(), spans.end(),
            [](const Span& a, const Span& b) { return a.start < b.start; });
  for (std::size_t i = 1; i < spans.size(); ++i) {
    if (spans[i - 1].Overlaps(spans[i])) {
      throw Error(ErrorCode::kOracle, "protocol violation: id '" +
                                          response.id +
                                          "' has overlapping spans");
    }
  }
}

std::vector<std::string> MakeLabelList(std::set<std::string> labels) {
  labels.emplace(kNoRelation);
  return {labels.begin(), labels.end()};
}

bool InAnySpan(const OracleRequest& request, int i) {
  return request.subj.Contains(i) || request.obj.Contains(i);
}

}  // namespace

OracleRequest MakeRequest(const REInstance& instance) {
  return {instance.id,
          instance.tokens,
          instance.subj,
          instance.obj,
          instance.subj_type.name(),
          instance.obj_type.name()};
}

RelationOracle::RelationOracle(std::size_t batch_size)
    : batch_size_(std::max<std::size_t>(batch_size, 1)) {}

std::vector<OraclePrediction> RelationOracle::PredictBatch(
    std::span<const OracleRequest> requests) {
  if (requests.empty()) return {};
  RequireUniqueIds(requests);
  auto chunks = Chunk(requests, batch_size_);
  std::vector<std::vector<OraclePrediction>> answers = RunBatches(chunks);
  counters_.requests += requests.size();
  counters_.batches += chunks.size();
  if (answers.size() != chunks.size()) {
    throw Error(ErrorCode::kOracle, "oracle answered " +
                                        std::to_string(answers.size()) +
                                        " of " + std::to_string(chunks.size()) +
                                        " batches");
  }

  const std::vector<std::string>& label_list = labels();
  std::set<std::string_view> label_set(label_list.begin(), label_list.end());
  std::vector<OraclePrediction> out;
  out.reserve(requests.size());
  for (std::size_t c = 0; c < chunks.size(); ++c) {
    for (OraclePrediction& p : MatchById(chunks[c], std::move(answers[c]))) {
      CheckPrediction(p, label_set);
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::vector<std::vector<OraclePrediction>> RelationOracle::RunBatches(
    const std::vector<std::span<const OracleRequest>>& batches) {
  std::vector<std::vector<OraclePrediction>> out;
  out.reserve(batches.size());
  for (const auto& batch : batches) out.push_back(PredictChunk(batch));
  return out;
}

NerOracle::NerOracle(std::size_t batch_size)
    : batch_size_(std::max<std::size_t>(batch_size, 1)) {}

std::vector<NerResponse> NerOracle::TagBatch(
    std::span<const NerRequest> requests) {
  if (requests.empty()) return {};
  RequireUniqueIds(requests);
  auto chunks = Chunk(requests, batch_size_);
  std::vector<std::vector<NerResponse>> answers = RunBatches(chunks);
  counters_.requests += requests.size();
  counters_.batches += chunks.size();
  if (answers.size() != chunks.size()) {
    throw Error(ErrorCode::kOracle, "NER oracle dropped batches");
  }
  std::vector<NerResponse> out;
  out.reserve(requests.size());
  for (std::size_t c = 0; c < chunks.size(); ++c) {
    std::vector<NerResponse> matched =
        MatchById(chunks[c], std::move(answers[c]));
    for (std::size_t i = 0; i < matched.size(); ++i) {
      CheckNerResponse(chunks[c][i], matched[i]);
      out.push_back(std::move(matched[i]));
    }
  }
  return out;
}

std::vector<std::vector<NerResponse>> NerOracle::RunBatches(
    const std::vector<std::span<const NerRequest>>& batches) {
  std::vector<std::vector<NerResponse>> out;
  out.reserve(batches.size());
  for (const auto& batch : batches) out.push_back(TagChunk(batch));
  return out;
}

std::vector<OraclePrediction> PredictInstances(
    RelationOracle& oracle, std::span<const REInstance> instances) {
  std::vector<OracleRequest> requests;
  requests.reserve(instances.size());
  for (const REInstance& instance : instances) {
    requests.push_back(MakeRequest(instance));
  }
  return oracle.PredictBatch(requests);
}

// EntityMemorizerStub

EntityMemorizerStub::EntityMemorizerStub(PairMap pairs,
                                         std::vector<std::string> extra_labels,
                                         std::size_t batch_size)
    : RelationOracle(batch_size), pairs_(std::move(pairs)) {
  std::set<std::string> labels(extra_labels.begin(), extra_labels.end());
  for (const auto& [pair, relation] : pairs_) labels.insert(relation);
  labels_ = MakeLabelList(std::move(labels));
}

std::unique_ptr<EntityMemorizerStub> EntityMemorizerStub::FromCorpus(
    std::span<const REInstance> instances, std::size_t batch_size) {
  PairMap pairs;
  std::vector<std::string> labels;
  for (const REInstance& instance : instances) {
    pairs.emplace(std::make_pair(JoinName(instance.Name(Role::kSubject)),
                                 JoinName(instance.Name(Role::kObject))),
                  instance.relation);
    labels.push_back(instance.relation);
  }
  return std::make_unique<EntityMemorizerStub>(std::move(pairs),
                                               std::move(labels), batch_size);
}

std::string EntityMemorizerStub::identity() const {
  return "stub:entity-memorizer(pairs=" + std::to_string(pairs_.size()) + ")";
}

std::vector<OraclePrediction> EntityMemorizerStub::PredictChunk(
    std::span<const OracleRequest> batch) {
  std::vector<OraclePrediction> out;
  out.reserve(batch.size());
  for (const OracleRequest& request : batch) {
    std::span<const std::string> tokens(request.tokens);
    auto key = std::make_pair(
        JoinName(tokens.subspan(request.subj.start, request.subj.length())),
        JoinName(tokens.subspan(request.obj.start, request.obj.length())));
    auto it = pairs_.find(key);
    out.push_back({request.id,
                   it == pairs_.end() ? std::string(kNoRelation) : it->second,
                   std::nullopt});
  }
  return out;
}

// ContextReaderStub

ContextReaderStub::ContextReaderStub(std::map<std::string, std::string> triggers,
                                     std::vector<std::string> extra_labels,
                                     std::size_t batch_size)
    : RelationOracle(batch_size), triggers_(std::move(triggers)) {
  std::set<std::string> labels(extra_labels.begin(), extra_labels.end());
  for (const auto& [token, relation] : triggers_) labels.insert(relation);
  labels_ = MakeLabelList(std::move(labels));
}

std::string ContextReaderStub::identity() const {
  return "stub:context-reader(triggers=" + std::to_string(triggers_.size()) +
         ")";
}

std::vector<OraclePrediction> ContextReaderStub::PredictChunk(
    std::span<const OracleRequest> batch) {
  std::vector<OraclePrediction> out;
  out.reserve(batch.size());
  for (const OracleRequest& request : batch) {
    std::string label(kNoRelation);
    for (int i = 0; i < static_cast<int>(request.tokens.size()); ++i) {
      if (InAnySpan(request, i)) continue;
      auto it = triggers_.find(request.tokens[i]);
      if (it != triggers_.end()) {
        label = it->second;
        break;
      }
    }
    out.push_back({request.id, std::move(label), std::nullopt});
  }
  return out;
}

// ReferenceNerStub

ReferenceNerStub::ReferenceNerStub(std::span<const REInstance> reference,
                                   std::size_t batch_size)
    : NerOracle(batch_size) {
  for (const REInstance& instance : reference) {
    std::vector<NerSpan> spans = {{instance.subj, instance.subj_type.name()},
                                  {instance.obj, instance.obj_type.name()}};
    std::sort(spans.begin(), spans.end(),
              [](const NerSpan& a, const NerSpan& b) {
                return a.span.start < b.span.start;
              });
    spans_[instance.id] = std::move(spans);
  }
}

std::string ReferenceNerStub::identity() const {
  return "stub:reference-ner(instances=" + std::to_string(spans_.size()) + ")";
}

std::vector<NerResponse> ReferenceNerStub::TagChunk(
    std::span<const NerRequest> batch) {
  std::vector<NerResponse> out;
  out.reserve(batch.size());
  for (const NerRequest& request : batch) {
    NerResponse response{request.id, {}};
    auto it = spans_.find(request.id);
    if (it != spans_.end()) {
      const int n = static_cast<int>(request.tokens.size());
      for (const NerSpan& span : it->second) {
        if (span.span.end <= n) response.spans.push_back(span);
      }
    }
    out.push_back(std::move(response));
  }
  return out;
}

}  // namespace entre
