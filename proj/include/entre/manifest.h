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

#ifndef ENTRE_MANIFEST_H_
#define ENTRE_MANIFEST_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

namespace entre {

inline constexpr std::string_view kToolVersion = "0.1.0";

// Hex SHA-256 of a file's bytes.
std::string Sha256File(const std::filesystem::path& path);
std::string Sha256Hex(std::string_view data);

// Reproducibility record written next to every pipeline output.
struct RunManifest {
  std::string command;        // e.g. "entre run"
  nlohmann::json config;      // every option of the subcommand, resolved
  std::optional<std::uint64_t> seed;
  std::map<std::string, std::string> input_digests;   // path -> sha256
  std::map<std::string, std::string> output_digests;  // path -> sha256
  std::optional<std::string> oracle;
  std::string started_at;
  std::string finished_at;

  void AddInput(const std::filesystem::path& path);
  void AddOutput(const std::filesystem::path& path);
};

std::string UtcTimestamp();

nlohmann::json ToJson(const RunManifest& manifest);

}  // namespace entre

#endif  // ENTRE_MANIFEST_H_
