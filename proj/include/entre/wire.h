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

// Wire protocol for external prediction models.
//
// Relation request (one JSON object, spans half-open):
//   {"id": str, "tokens": [str], "subj_start": int, "subj_end": int,
//    "obj_start": int, "obj_end": int, "subj_type": str, "obj_type": str}
// Relation response:
//   {"id": str, "label": str, "scores": {str: float}}   ("scores" optional)
// NER request / response:
//   {"id": str, "tokens": [str]}
//   {"id": str, "spans": [{"start": int, "end": int, "type": str}]}
// Handshake, sent once by the server before anything else:
//   {"labels": [str]}
//
// Two transports carry these messages:
//  * stdio: the model runs as a child process. Its first stdout line is the
//    handshake; afterwards the client writes one request per line and reads
//    one response per line. Responses may arrive in any order.
//  * HTTP: GET <url> returns the handshake object; POST <url> with a JSON
//    array of requests returns a JSON array of responses.

#ifndef ENTRE_WIRE_H_
#define ENTRE_WIRE_H_

#include <chrono>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "entre/oracle.h"
#include "json.hpp"

namespace entre {

// Message codec. The *FromJson functions throw Error(kOracle) on protocol
// violations, quoting the offending payload.
nlohmann::json ToJson(const OracleRequest& request);
nlohmann::json ToJson(const OraclePrediction& prediction);
nlohmann::json ToJson(const NerRequest& request);
nlohmann::json ToJson(const NerResponse& response);
OracleRequest RequestFromJson(const nlohmann::json& message);
OraclePrediction PredictionFromJson(const nlohmann::json& message);
NerRequest NerRequestFromJson(const nlohmann::json& message);
NerResponse NerResponseFromJson(const nlohmann::json& message);
std::vector<std::string> LabelsFromHandshake(const nlohmann::json& message);
nlohmann::json MakeHandshake(const std::vector<std::string>& labels);

// Moves raw protocol messages. Implementations throw TransientOracleError
// for failures worth retrying and Error(kOracle) otherwise.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual nlohmann::json Handshake() = 0;
  virtual std::vector<nlohmann::json> Exchange(
      const std::vector<nlohmann::json>& batch) = 0;
  virtual std::string identity() const = 0;
};

// Runs `command` through /bin/sh -c with pipes on stdin/stdout; the child's
// stderr is inherited. The child is asked to exit (stdin closed) on
// destruction.
class ProcessTransport : public Transport {
 public:
  explicit ProcessTransport(std::string command);
  ~ProcessTransport() override;

  ProcessTransport(const ProcessTransport&) = delete;
  ProcessTransport& operator=(const ProcessTransport&) = delete;

  nlohmann::json Handshake() override;
  std::vector<nlohmann::json> Exchange(
      const std::vector<nlohmann::json>& batch) override;
  std::string identity() const override { return "process:" + command_; }

 private:
  std::string ReadLine();
  void Shutdown();

  std::string command_;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
  std::optional<nlohmann::json> handshake_;
};

class HttpTransport : public Transport {
 public:
  explicit HttpTransport(std::string url,
                         std::chrono::seconds timeout = std::chrono::seconds(300));
  ~HttpTransport() override;

  nlohmann::json Handshake() override;
  std::vector<nlohmann::json> Exchange(
      const std::vector<nlohmann::json>& batch) override;
  std::string identity() const override { return "http:" + url_; }

 private:
  struct Impl;
  std::string url_;
  std::unique_ptr<Impl> impl_;
};

using TransportFactory = std::function<std::unique_ptr<Transport>()>;

// "http://..." selects HttpTransport, anything else is a shell command.
TransportFactory TransportFor(const std::string& endpoint);

struct RetryPolicy {
  int max_attempts = 4;
  std::chrono::milliseconds initial_backoff{100};
  double multiplier = 2.0;
};

struct ClientOptions {
  std::size_t batch_size = kDefaultBatchSize;
  // Number of transports (child processes / HTTP connections) used to run
  // batches concurrently.
  std::size_t workers = 1;
  RetryPolicy retry;
};

// Runs `exchange` with exponential backoff on TransientOracleError.
std::vector<nlohmann::json> ExchangeWithRetry(
    Transport& transport, const std::vector<nlohmann::json>& batch,
    const RetryPolicy& policy);

class RemoteRelationOracle : public RelationOracle {
 public:
  // Opens `options.workers` transports and performs the handshake on each.
  RemoteRelationOracle(TransportFactory factory, ClientOptions options = {});
  ~RemoteRelationOracle() override;

  const std::vector<std::string>& labels() const override { return labels_; }
  std::string identity() const override { return identity_; }

 protected:
  std::vector<std::vector<OraclePrediction>> RunBatches(
      const std::vector<std::span<const OracleRequest>>& batches) override;
  std::vector<OraclePrediction> PredictChunk(
      std::span<const OracleRequest> batch) override;

 private:
  std::vector<OraclePrediction> PredictOn(Transport& transport,
                                          std::span<const OracleRequest> batch);

  ClientOptions options_;
  std::vector<std::unique_ptr<Transport>> transports_;
  std::vector<std::string> labels_;
  std::string identity_;
};

class RemoteNerOracle : public NerOracle {
 public:
  RemoteNerOracle(TransportFactory factory, ClientOptions options = {});
  ~RemoteNerOracle() override;

  std::string identity() const override { return identity_; }
  const std::vector<std::string>& labels() const { return labels_; }

 protected:
  std::vector<std::vector<NerResponse>> RunBatches(
      const std::vector<std::span<const NerRequest>>& batches) override;
  std::vector<NerResponse> TagChunk(std::span<const NerRequest> batch) override;

 private:
  std::vector<NerResponse> TagOn(Transport& transport,
                                 std::span<const NerRequest> batch);

  ClientOptions options_;
  std::vector<std::unique_ptr<Transport>> transports_;
  std::vector<std::string> labels_;
  std::string identity_;
};

// Server side of the stdio transport: writes the handshake, then answers
// request lines until EOF. With `reverse_within_batch`, responses to all
// lines already buffered are written in reverse order (used to exercise
// clients' reordering).
struct ServeOptions {
  bool reverse_within_batch = false;
};
void ServeRelationStdio(RelationOracle& oracle, int in_fd, int out_fd,
                        const ServeOptions& options = {});
void ServeNerStdio(NerOracle& oracle, const std::vector<std::string>& labels,
                   int in_fd, int out_fd, const ServeOptions& options = {});

// Answers a JSON array of request objects with a JSON array of responses.
// Shared by HTTP servers in tests and tools.
nlohmann::json AnswerRelationBatch(RelationOracle& oracle,
                                   const nlohmann::json& requests);
nlohmann::json AnswerNerBatch(NerOracle& oracle,
                              const nlohmann::json& requests);

}  // namespace entre

#endif  // ENTRE_WIRE_H_
