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

// Prediction oracles: anything that maps relation instances to labels (a
// relation classifier) or sentences to entity spans (an NER tagger).
//
// The base classes own the protocol contract shared by in-process stubs and
// remote models: batching, id matching, label-set closure and argmax
// consistency. Implementations only answer one batch at a time and may
// return results in any order.

#ifndef ENTRE_ORACLE_H_
#define ENTRE_ORACLE_H_

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "entre/instance.h"

namespace entre {

inline constexpr std::size_t kDefaultBatchSize = 64;

struct OracleRequest {
  std::string id;
  std::vector<std::string> tokens;
  Span subj;
  Span obj;
  std::string subj_type;
  std::string obj_type;

  friend bool operator==(const OracleRequest&, const OracleRequest&) = default;
};

OracleRequest MakeRequest(const REInstance& instance);

struct OraclePrediction {
  std::string id;
  std::string label;
  std::optional<std::map<std::string, double>> scores;
};

struct NerRequest {
  std::string id;
  std::vector<std::string> tokens;
};

struct NerSpan {
  Span span;
  std::string type;

  friend bool operator==(const NerSpan&, const NerSpan&) = default;
};

struct NerResponse {
  std::string id;
  std::vector<NerSpan> spans;
};

// Call accounting. `requests` counts instances sent, `batches` counts
// round trips.
struct OracleCounters {
  std::size_t requests = 0;
  std::size_t batches = 0;
};

class RelationOracle {
 public:
  explicit RelationOracle(std::size_t batch_size = kDefaultBatchSize);
  virtual ~RelationOracle() = default;

  RelationOracle(const RelationOracle&) = delete;
  RelationOracle& operator=(const RelationOracle&) = delete;

  // One prediction per request, in request order. Ids must be unique.
  // An empty input makes no call. Protocol violations throw Error(kOracle).
  std::vector<OraclePrediction> PredictBatch(
      std::span<const OracleRequest> requests);

  // Label set announced by the model. Always contains "no_relation".
  virtual const std::vector<std::string>& labels() const = 0;
  virtual std::string identity() const = 0;

  std::size_t batch_size() const { return batch_size_; }
  const OracleCounters& counters() const { return counters_; }

 protected:
  // Answers every batch; results within a batch may come in any order.
  // The default runs PredictChunk sequentially.
  virtual std::vector<std::vector<OraclePrediction>> RunBatches(
      const std::vector<std::span<const OracleRequest>>& batches);
  virtual std::vector<OraclePrediction> PredictChunk(
      std::span<const OracleRequest> batch) = 0;

 private:
  std::size_t batch_size_;
  OracleCounters counters_;
};

class NerOracle {
 public:
  explicit NerOracle(std::size_t batch_size = kDefaultBatchSize);
  virtual ~NerOracle() = default;

  NerOracle(const NerOracle&) = delete;
  NerOracle& operator=(const NerOracle&) = delete;

  // One response per request in request order. Spans are checked for bounds
  // and overlap against the request tokens.
  std::vector<NerResponse> TagBatch(std::span<const NerRequest> requests);

  virtual std::string identity() const = 0;
  std::size_t batch_size() const { return batch_size_; }
  const OracleCounters& counters() const { return counters_; }

 protected:
  virtual std::vector<std::vector<NerResponse>> RunBatches(
      const std::vector<std::span<const NerRequest>>& batches);
  virtual std::vector<NerResponse> TagChunk(
      std::span<const NerRequest> batch) = 0;

 private:
  std::size_t batch_size_;
  OracleCounters counters_;
};

// Convenience: predictions for a corpus, in corpus order.
std::vector<OraclePrediction> PredictInstances(
    RelationOracle& oracle, std::span<const REInstance> instances);

// Predicts purely from the (subject name, object name) pair, ignoring every
// context token: the memorized relation for a known pair, else no_relation.
class EntityMemorizerStub : public RelationOracle {
 public:
  using PairMap = std::map<std::pair<std::string, std::string>, std::string>;

  explicit EntityMemorizerStub(PairMap pairs,
                               std::vector<std::string> extra_labels = {},
                               std::size_t batch_size = kDefaultBatchSize);
  // Memorizes every (subject, object) -> relation pair of a corpus. Pairs
  // seen with different relations keep the first one.
  static std::unique_ptr<EntityMemorizerStub> FromCorpus(
      std::span<const REInstance> instances,
      std::size_t batch_size = kDefaultBatchSize);

  const std::vector<std::string>& labels() const override { return labels_; }
  std::string identity() const override;
  const PairMap& pairs() const { return pairs_; }

 protected:
  std::vector<OraclePrediction> PredictChunk(
      std::span<const OracleRequest> batch) override;

 private:
  PairMap pairs_;
  std::vector<std::string> labels_;
};

// Reads the context: the relation of the first trigger token found outside
// both entity spans, else no_relation. Invariant under entity replacement as
// long as triggers never occur in entity names.
class ContextReaderStub : public RelationOracle {
 public:
  explicit ContextReaderStub(std::map<std::string, std::string> triggers,
                             std::vector<std::string> extra_labels = {},
                             std::size_t batch_size = kDefaultBatchSize);

  const std::vector<std::string>& labels() const override { return labels_; }
  std::string identity() const override;
  const std::map<std::string, std::string>& triggers() const {
    return triggers_;
  }

 protected:
  std::vector<OraclePrediction> PredictChunk(
      std::span<const OracleRequest> batch) override;

 private:
  std::map<std::string, std::string> triggers_;
  std::vector<std::string> labels_;
};

// NER stub that echoes the subject/object annotations of a reference corpus,
// i.e. a perfect tagger for that corpus. Unknown ids get no spans.
class ReferenceNerStub : public NerOracle {
 public:
  explicit ReferenceNerStub(std::span<const REInstance> reference,
                            std::size_t batch_size = kDefaultBatchSize);

  std::string identity() const override;

 protected:
  std::vector<NerResponse> TagChunk(std::span<const NerRequest> batch) override;

 private:
  std::map<std::string, std::vector<NerSpan>> spans_;
};

}  // namespace entre

#endif  // ENTRE_ORACLE_H_
