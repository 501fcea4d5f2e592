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

// Reading and writing corpora in the TACRED JSON interchange format.
//
// The file is a JSON array of records carrying the fields
//   id, token, subj_start, subj_end, obj_start, obj_end,
//   subj_type, obj_type, relation
// with *inclusive* end indices. In memory every span is half-open; the
// conversion happens only in this module. Unknown record fields (stanford_pos,
// stanford_ner, ...) are ignored on load and not written back.

#ifndef ENTRE_CORPUS_H_
#define ENTRE_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entre/instance.h"
#include "json.hpp"

namespace entre {

enum class LoadMode {
  kStrict,   // any invalid record aborts the load
  kLenient,  // invalid records are skipped and reported
};

struct LoadOptions {
  LoadMode mode = LoadMode::kStrict;
  // When set, every relation must be "no_relation" or a member.
  std::optional<std::set<std::string>> label_set;
};

struct SkippedRecord {
  std::size_t index = 0;
  std::string id;
  std::string reason;
};

struct LoadResult {
  std::vector<REInstance> instances;
  std::vector<SkippedRecord> skipped;
};

struct CorpusStats {
  std::size_t n_sentences = 0;
  std::size_t n_tokens = 0;
  std::map<std::string, std::size_t> label_histogram;

  CorpusStats& operator+=(const CorpusStats& other);
  friend CorpusStats operator+(CorpusStats a, const CorpusStats& b) {
    a += b;
    return a;
  }
  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

LoadResult ParseCorpus(std::string_view json_text,
                       const LoadOptions& options = {});
LoadResult LoadCorpus(const std::filesystem::path& path,
                      const LoadOptions& options = {});

// Deterministic serialization: one record per line, keys sorted.
std::string SerializeCorpus(std::span<const REInstance> instances);
void WriteCorpus(std::span<const REInstance> instances,
                 const std::filesystem::path& path);

CorpusStats ComputeCorpusStats(std::span<const REInstance> instances);

nlohmann::json ToJson(const CorpusStats& stats);
nlohmann::json ToJson(std::span<const SkippedRecord> skipped);

// Single-record conversion to and from the interchange format.
nlohmann::json InstanceToRecord(const REInstance& instance);
REInstance InstanceFromRecord(const nlohmann::json& record,
                              std::size_t index);

// Small file helpers shared by the CLI and report writers.
std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

}  // namespace entre

#endif  // ENTRE_CORPUS_H_
