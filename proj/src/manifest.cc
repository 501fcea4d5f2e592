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

#include "entre/manifest.h"

#include <openssl/evp.h>

#include <chrono>
#include <ctime>
#include <memory>

#include "entre/corpus.h"
#include "entre/error.h"

namespace entre {

std::string Sha256Hex(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1) {
    throw Error(ErrorCode::kIo, "SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xf];
  }
  return hex;
}

std::string Sha256File(const std::filesystem::path& path) {
  return Sha256Hex(ReadFile(path));
}

void RunManifest::AddInput(const std::filesystem::path& path) {
  input_digests[path.string()] = Sha256File(path);
}

void RunManifest::AddOutput(const std::filesystem::path& path) {
  output_digests[path.string()] = Sha256File(path);
}

std::string UtcTimestamp() {
  std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

nlohmann::json ToJson(const RunManifest& manifest) {
  return {{"schema_version", 1},
          {"tool", "entre"},
          {"tool_version", kToolVersion},
          {"command", manifest.command},
          {"config", manifest.config},
          {"seed", manifest.seed ? nlohmann::json(*manifest.seed)
                                 : nlohmann::json(nullptr)},
          {"inputs", manifest.input_digests},
          {"outputs", manifest.output_digests},
          {"oracle", manifest.oracle ? nlohmann::json(*manifest.oracle)
                                     : nlohmann::json(nullptr)},
          {"started_at", manifest.started_at},
          {"finished_at", manifest.finished_at}};
}

}  // namespace entre
