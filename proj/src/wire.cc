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

#include "entre/wire.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <exception>
#include <mutex>
#include <thread>

#include "entre/error.h"
#include "httplib.h"

extern char** environ;

namespace entre {

using nlohmann::json;

namespace {

[[noreturn]] void Violation(const std::string& what, const json& payload) {
  throw Error(ErrorCode::kOracle,
              "protocol violation: " + what + "; payload: " + payload.dump());
}

const json& Field(const json& message, const char* name) {
  if (!message.is_object()) Violation("message is not an object", message);
  auto it = message.find(name);
  if (it == message.end()) {
    Violation(std::string("missing field '") + name + "'", message);
  }
  return *it;
}

std::string StringField(const json& message, const char* name) {
  const json& value = Field(message, name);
  if (!value.is_string()) {
    Violation(std::string("field '") + name + "' is not a string", message);
  }
  return value.get<std::string>();
}

int IntField(const json& message, const char* name) {
  const json& value = Field(message, name);
  if (!value.is_number_integer()) {
    Violation(std::string("field '") + name + "' is not an integer", message);
  }
  return value.get<int>();
}

std::vector<std::string> TokensField(const json& message) {
  const json& value = Field(message, "tokens");
  if (!value.is_array()) Violation("field 'tokens' is not an array", message);
  std::vector<std::string> tokens;
  tokens.reserve(value.size());
  for (const json& token : value) {
    if (!token.is_string()) Violation("non-string token", message);
    tokens.push_back(token.get<std::string>());
  }
  return tokens;
}

void CheckServerError(const json& message) {
  if (message.is_object() && message.contains("error")) {
    Violation("oracle reported an error", message);
  }
}

void IgnoreSigpipe() {
  static std::once_flag once;
  std::call_once(once, [] { ::signal(SIGPIPE, SIG_IGN); });
}

void WriteAll(int fd, std::string_view data) {
  while (!data.empty()) {
    ssize_t n = ::write(fd, data.data(), data.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error(ErrorCode::kOracle,
                  std::string("write failed: ") + std::strerror(errno));
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
}

// Pops one complete line from `buffer` into `line`.
bool PopLine(std::string& buffer, std::string& line) {
  auto newline = buffer.find('\n');
  if (newline == std::string::npos) return false;
  line = buffer.substr(0, newline);
  buffer.erase(0, newline + 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

json ParseLine(const std::string& line) {
  try {
    return json::parse(line);
  } catch (const json::parse_error&) {
    throw Error(ErrorCode::kOracle,
                "protocol violation: response line is not JSON: " + line);
  }
}

template <typename Fn>
auto RunOnWorkers(std::vector<std::unique_ptr<Transport>>& transports,
                  std::size_t n_batches, Fn&& run_one) {
  using Result = decltype(run_one(*transports[0], std::size_t{0}));
  std::vector<Result> results(n_batches);
  const std::size_t workers = std::min(transports.size(), n_batches);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n_batches; ++i) {
      results[i] = run_one(*transports[0], i);
    }
    return results;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n_batches; i += workers) {
          results[i] = run_one(*transports[w], i);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread& t : threads) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

std::vector<std::unique_ptr<Transport>> OpenTransports(
    const TransportFactory& factory, std::size_t workers,
    std::vector<std::string>& labels, std::string& identity) {
  std::vector<std::unique_ptr<Transport>> transports;
  for (std::size_t w = 0; w < std::max<std::size_t>(workers, 1); ++w) {
    transports.push_back(factory());
    std::vector<std::string> announced =
        LabelsFromHandshake(transports.back()->Handshake());
    if (w == 0) {
      labels = std::move(announced);
      identity = transports.back()->identity();
    } else if (announced != labels) {
      throw Error(ErrorCode::kOracle,
                  "oracle workers announced different label sets");
    }
  }
  return transports;
}

}  // namespace

// Codec

json ToJson(const OracleRequest& request) {
  return {{"id", request.id},
          {"tokens", request.tokens},
          {"subj_start", request.subj.start},
          {"subj_end", request.subj.end},
          {"obj_start", request.obj.start},
          {"obj_end", request.obj.end},
          {"subj_type", request.subj_type},
          {"obj_type", request.obj_type}};
}

json ToJson(const OraclePrediction& prediction) {
  json message = {{"id", prediction.id}, {"label", prediction.label}};
  if (prediction.scores) message["scores"] = *prediction.scores;
  return message;
}

json ToJson(const NerRequest& request) {
  return {{"id", request.id}, {"tokens", request.tokens}};
}

json ToJson(const NerResponse& response) {
  json spans = json::array();
  for (const NerSpan& span : response.spans) {
    spans.push_back({{"start", span.span.start},
                     {"end", span.span.end},
                     {"type", span.type}});
  }
  return {{"id", response.id}, {"spans", std::move(spans)}};
}

OracleRequest RequestFromJson(const json& message) {
  OracleRequest request;
  request.id = StringField(message, "id");
  request.tokens = TokensField(message);
  request.subj = {IntField(message, "subj_start"),
                  IntField(message, "subj_end")};
  request.obj = {IntField(message, "obj_start"), IntField(message, "obj_end")};
  request.subj_type = StringField(message, "subj_type");
  request.obj_type = StringField(message, "obj_type");
  const int n = static_cast<int>(request.tokens.size());
  for (const Span& s : {request.subj, request.obj}) {
    if (s.start < 0 || s.start >= s.end || s.end > n) {
      Violation("span out of bounds", message);
    }
  }
  return request;
}

OraclePrediction PredictionFromJson(const json& message) {
  CheckServerError(message);
  OraclePrediction prediction;
  prediction.id = StringField(message, "id");
  prediction.label = StringField(message, "label");
  auto scores = message.find("scores");
  if (scores != message.end() && !scores->is_null()) {
    if (!scores->is_object()) Violation("'scores' is not an object", message);
    std::map<std::string, double> values;
    for (const auto& [label, score] : scores->items()) {
      if (!score.is_number()) Violation("non-numeric score", message);
      values[label] = score.get<double>();
    }
    prediction.scores = std::move(values);
  }
  return prediction;
}

NerRequest NerRequestFromJson(const json& message) {
  return {StringField(message, "id"), TokensField(message)};
}

NerResponse NerResponseFromJson(const json& message) {
  CheckServerError(message);
  NerResponse response;
  response.id = StringField(message, "id");
  const json& spans = Field(message, "spans");
  if (!spans.is_array()) Violation("field 'spans' is not an array", message);
  for (const json& span : spans) {
    response.spans.push_back(
        {{IntField(span, "start"), IntField(span, "end")},
         StringField(span, "type")});
  }
  return response;
}

std::vector<std::string> LabelsFromHandshake(const json& message) {
  const json& labels = Field(message, "labels");
  if (!labels.is_array()) Violation("handshake 'labels' is not an array",
                                    message);
  std::vector<std::string> out;
  for (const json& label : labels) {
    if (!label.is_string()) Violation("non-string label", message);
    out.push_back(label.get<std::string>());
  }
  return out;
}

json MakeHandshake(const std::vector<std::string>& labels) {
  return {{"labels", labels}};
}

// ProcessTransport

ProcessTransport::ProcessTransport(std::string command)
    : command_(std::move(command)) {
  IgnoreSigpipe();
  int in_pipe[2];
  int out_pipe[2];
  if (::pipe2(in_pipe, O_CLOEXEC) != 0) {
    throw Error(ErrorCode::kOracle, "pipe() failed");
  }
  if (::pipe2(out_pipe, O_CLOEXEC) != 0) {
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    throw Error(ErrorCode::kOracle, "pipe() failed");
  }
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, in_pipe[0], STDIN_FILENO);
  posix_spawn_file_actions_adddup2(&actions, out_pipe[1], STDOUT_FILENO);

  std::string shell = "/bin/sh";
  std::string flag = "-c";
  char* argv[] = {shell.data(), flag.data(), command_.data(), nullptr};
  pid_t pid = -1;
  int rc = ::posix_spawn(&pid, "/bin/sh", &actions, nullptr, argv, environ);
  posix_spawn_file_actions_destroy(&actions);
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  if (rc != 0) {
    ::close(in_pipe[1]);
    ::close(out_pipe[0]);
    throw Error(ErrorCode::kOracle, "cannot start oracle process '" +
                                        command_ + "': " + std::strerror(rc));
  }
  pid_ = pid;
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
}

ProcessTransport::~ProcessTransport() { Shutdown(); }

void ProcessTransport::Shutdown() {
  if (to_child_ >= 0) ::close(to_child_);
  if (from_child_ >= 0) ::close(from_child_);
  to_child_ = from_child_ = -1;
  if (pid_ <= 0) return;
  int status = 0;
  for (int i = 0; i < 500; ++i) {
    if (::waitpid(pid_, &status, WNOHANG) != 0) {
      pid_ = -1;
      return;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  ::kill(pid_, SIGTERM);
  ::waitpid(pid_, &status, 0);
  pid_ = -1;
}

std::string ProcessTransport::ReadLine() {
  std::string line;
  char chunk[4096];
  while (!PopLine(buffer_, line)) {
    ssize_t n = ::read(from_child_, chunk, sizeof(chunk));
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) {
      throw Error(ErrorCode::kOracle,
                  "oracle process '" + command_ + "' closed its output");
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
  return line;
}

json ProcessTransport::Handshake() {
  if (!handshake_) {
    std::string line = ReadLine();
    while (line.empty()) line = ReadLine();
    handshake_ = ParseLine(line);
  }
  return *handshake_;
}

std::vector<json> ProcessTransport::Exchange(const std::vector<json>& batch) {
  Handshake();
  std::string pending;
  for (const json& message : batch) {
    pending += message.dump();
    pending += '\n';
  }
  // Interleave writing and reading so neither pipe can fill up and stall
  // both sides.
  std::vector<json> responses;
  std::string_view to_write = pending;
  std::string line;
  char chunk[65536];
  auto drain_lines = [&] {
    while (responses.size() < batch.size() && PopLine(buffer_, line)) {
      if (!line.empty()) responses.push_back(ParseLine(line));
    }
  };
  drain_lines();
  while (responses.size() < batch.size()) {
    pollfd fds[2] = {{from_child_, POLLIN, 0}, {to_child_, POLLOUT, 0}};
    const nfds_t count = to_write.empty() ? 1 : 2;
    if (::poll(fds, count, -1) < 0) {
      if (errno == EINTR) continue;
      throw Error(ErrorCode::kOracle, "poll() failed");
    }
    if (count == 2 && (fds[1].revents & (POLLOUT | POLLERR | POLLHUP))) {
      ssize_t n = ::write(to_child_, to_write.data(), to_write.size());
      if (n < 0 && errno != EINTR && errno != EAGAIN) {
        throw Error(ErrorCode::kOracle, "oracle process '" + command_ +
                                            "' stopped reading requests");
      }
      if (n > 0) to_write.remove_prefix(static_cast<std::size_t>(n));
    }
    if (fds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
      ssize_t n = ::read(from_child_, chunk, sizeof(chunk));
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) {
        throw Error(ErrorCode::kOracle, "oracle process '" + command_ +
                                            "' exited mid-batch");
      }
      buffer_.append(chunk, static_cast<std::size_t>(n));
      drain_lines();
    }
  }
  return responses;
}

// HttpTransport

struct HttpTransport::Impl {
  std::unique_ptr<httplib::Client> client;
  std::string path;
};

HttpTransport::HttpTransport(std::string url, std::chrono::seconds timeout)
    : url_(std::move(url)), impl_(std::make_unique<Impl>()) {
  constexpr std::string_view kScheme = "http://";
  if (url_.rfind(kScheme, 0) != 0) {
    throw Error(ErrorCode::kConfiguration,
                "only http:// oracle URLs are supported: " + url_);
  }
  auto slash = url_.find('/', kScheme.size());
  std::string host = url_.substr(0, slash);
  impl_->path = slash == std::string::npos ? "/" : url_.substr(slash);
  impl_->client = std::make_unique<httplib::Client>(host);
  impl_->client->set_connection_timeout(std::chrono::seconds(10));
  impl_->client->set_read_timeout(timeout);
  impl_->client->set_write_timeout(timeout);
}

HttpTransport::~HttpTransport() = default;

namespace {

json CheckedHttpBody(const httplib::Result& result, const std::string& url) {
  if (!result) {
    throw TransientOracleError("HTTP request to " + url + " failed: " +
                               httplib::to_string(result.error()));
  }
  if (result->status >= 500) {
    throw TransientOracleError("HTTP " + std::to_string(result->status) +
                               " from " + url);
  }
  if (result->status != 200) {
    throw Error(ErrorCode::kOracle, "HTTP " + std::to_string(result->status) +
                                        " from " + url + ": " + result->body);
  }
  try {
    return json::parse(result->body);
  } catch (const json::parse_error&) {
    throw Error(ErrorCode::kOracle,
                "protocol violation: HTTP body is not JSON: " + result->body);
  }
}

}  // namespace

json HttpTransport::Handshake() {
  return CheckedHttpBody(impl_->client->Get(impl_->path), url_);
}

std::vector<json> HttpTransport::Exchange(const std::vector<json>& batch) {
  json body(batch);
  json reply = CheckedHttpBody(
      impl_->client->Post(impl_->path, body.dump(), "application/json"), url_);
  if (!reply.is_array()) Violation("HTTP reply is not an array", reply);
  return {reply.begin(), reply.end()};
}

TransportFactory TransportFor(const std::string& endpoint) {
  if (endpoint.rfind("http://", 0) == 0 || endpoint.rfind("https://", 0) == 0) {
    return [endpoint] { return std::make_unique<HttpTransport>(endpoint); };
  }
  return [endpoint] { return std::make_unique<ProcessTransport>(endpoint); };
}

std::vector<json> ExchangeWithRetry(Transport& transport,
                                    const std::vector<json>& batch,
                                    const RetryPolicy& policy) {
  auto backoff = policy.initial_backoff;
  for (int attempt = 1;; ++attempt) {
    try {
      return transport.Exchange(batch);
    } catch (const TransientOracleError&) {
      if (attempt >= policy.max_attempts) throw;
    }
    std::this_thread::sleep_for(backoff);
    backoff = std::chrono::milliseconds(
        static_cast<long long>(backoff.count() * policy.multiplier));
  }
}

// RemoteRelationOracle

RemoteRelationOracle::RemoteRelationOracle(TransportFactory factory,
                                           ClientOptions options)
    : RelationOracle(options.batch_size), options_(options) {
  transports_ = OpenTransports(factory, options_.workers, labels_, identity_);
  if (std::find(labels_.begin(), labels_.end(), kNoRelation) ==
      labels_.end()) {
    throw Error(ErrorCode::kOracle,
                "protocol violation: handshake label set lacks no_relation");
  }
}

RemoteRelationOracle::~RemoteRelationOracle() = default;

std::vector<OraclePrediction> RemoteRelationOracle::PredictOn(
    Transport& transport, std::span<const OracleRequest> batch) {
  std::vector<json> messages;
  messages.reserve(batch.size());
  for (const OracleRequest& request : batch) messages.push_back(ToJson(request));
  std::vector<OraclePrediction> out;
  for (const json& reply :
       ExchangeWithRetry(transport, messages, options_.retry)) {
    out.push_back(PredictionFromJson(reply));
  }
  return out;
}

std::vector<OraclePrediction> RemoteRelationOracle::PredictChunk(
    std::span<const OracleRequest> batch) {
  return PredictOn(*transports_[0], batch);
}

std::vector<std::vector<OraclePrediction>> RemoteRelationOracle::RunBatches(
    const std::vector<std::span<const OracleRequest>>& batches) {
  return RunOnWorkers(transports_, batches.size(),
                      [&](Transport& transport, std::size_t i) {
                        return PredictOn(transport, batches[i]);
                      });
}

// RemoteNerOracle

RemoteNerOracle::RemoteNerOracle(TransportFactory factory,
                                 ClientOptions options)
    : NerOracle(options.batch_size), options_(options) {
  transports_ = OpenTransports(factory, options_.workers, labels_, identity_);
}

RemoteNerOracle::~RemoteNerOracle() = default;

std::vector<NerResponse> RemoteNerOracle::TagOn(
    Transport& transport, std::span<const NerRequest> batch) {
  std::vector<json> messages;
  messages.reserve(batch.size());
  for (const NerRequest& request : batch) messages.push_back(ToJson(request));
  std::vector<NerResponse> out;
  for (const json& reply :
       ExchangeWithRetry(transport, messages, options_.retry)) {
    out.push_back(NerResponseFromJson(reply));
  }
  return out;
}

std::vector<NerResponse> RemoteNerOracle::TagChunk(
    std::span<const NerRequest> batch) {
  return TagOn(*transports_[0], batch);
}

std::vector<std::vector<NerResponse>> RemoteNerOracle::RunBatches(
    const std::vector<std::span<const NerRequest>>& batches) {
  return RunOnWorkers(transports_, batches.size(),
                      [&](Transport& transport, std::size_t i) {
                        return TagOn(transport, batches[i]);
                      });
}

// Servers

json AnswerRelationBatch(RelationOracle& oracle, const json& requests) {
  std::vector<OracleRequest> parsed;
  for (const json& message : requests) {
    parsed.push_back(RequestFromJson(message));
  }
  json out = json::array();
  for (const OraclePrediction& p : oracle.PredictBatch(parsed)) {
    out.push_back(ToJson(p));
  }
  return out;
}

json AnswerNerBatch(NerOracle& oracle, const json& requests) {
  std::vector<NerRequest> parsed;
  for (const json& message : requests) {
    parsed.push_back(NerRequestFromJson(message));
  }
  json out = json::array();
  for (const NerResponse& r : oracle.TagBatch(parsed)) out.push_back(ToJson(r));
  return out;
}

namespace {

// Shared stdio loop: gathers every complete request line currently
// available, answers them as one batch and writes one line per response.
void ServeStdio(const json& handshake, int in_fd, int out_fd,
                const ServeOptions& options,
                const std::function<json(const json&)>& answer) {
  IgnoreSigpipe();
  WriteAll(out_fd, handshake.dump() + "\n");
  std::string buffer;
  char chunk[65536];
  bool eof = false;
  while (!eof) {
    ssize_t n = ::read(in_fd, chunk, sizeof(chunk));
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) {
      eof = true;
    } else {
      buffer.append(chunk, static_cast<std::size_t>(n));
    }
    if (options.reverse_within_batch && !eof) {
      // Give the client a moment to finish writing the batch.
      pollfd fd{in_fd, POLLIN, 0};
      while (::poll(&fd, 1, 50) > 0) {
        n = ::read(in_fd, chunk, sizeof(chunk));
        if (n <= 0) {
          eof = true;
          break;
        }
        buffer.append(chunk, static_cast<std::size_t>(n));
      }
    }
    json batch = json::array();
    std::string line;
    while (PopLine(buffer, line)) {
      if (line.empty()) continue;
      json message;
      try {
        message = json::parse(line);
      } catch (const json::parse_error& e) {
        WriteAll(out_fd, json{{"error", e.what()}}.dump() + "\n");
        continue;
      }
      batch.push_back(std::move(message));
    }
    if (batch.empty()) continue;
    json replies;
    try {
      replies = answer(batch);
    } catch (const Error& e) {
      replies = json::array();
      for (const json& message : batch) {
        json reply = {{"error", e.what()}};
        if (message.is_object() && message.contains("id")) {
          reply["id"] = message["id"];
        }
        replies.push_back(std::move(reply));
      }
    }
    if (options.reverse_within_batch) {
      std::reverse(replies.begin(), replies.end());
    }
    std::string out;
    for (const json& reply : replies) out += reply.dump() + "\n";
    WriteAll(out_fd, out);
  }
}

}  // namespace

void ServeRelationStdio(RelationOracle& oracle, int in_fd, int out_fd,
                        const ServeOptions& options) {
  ServeStdio(MakeHandshake(oracle.labels()), in_fd, out_fd, options,
             [&](const json& batch) {
               return AnswerRelationBatch(oracle, batch);
             });
}

void ServeNerStdio(NerOracle& oracle, const std::vector<std::string>& labels,
                   int in_fd, int out_fd, const ServeOptions& options) {
  ServeStdio(MakeHandshake(labels), in_fd, out_fd, options,
             [&](const json& batch) { return AnswerNerBatch(oracle, batch); });
}

}  // namespace entre
