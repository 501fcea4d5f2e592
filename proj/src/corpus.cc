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

#include "entre/corpus.h"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "entre/error.h"

namespace entre {

using nlohmann::json;

namespace {

std::string RecordContext(std::size_t index) {
  return "record " + std::to_string(index);
}

const json& RequireField(const json& record, const char* field,
                         std::size_t index) {
  auto it = record.find(field);
  if (it == record.end()) {
    throw Error(ErrorCode::kFormat, RecordContext(index) +
                                        ": missing field '" + field + "'");
  }
  return *it;
}

int RequireInt(const json& record, const char* field, std::size_t index) {
  const json& value = RequireField(record, field, index);
  if (!value.is_number_integer()) {
    throw Error(ErrorCode::kFormat, RecordContext(index) + ": field '" +
                                        field + "' is not an integer");
  }
  return value.get<int>();
}

std::string RequireString(const json& record, const char* field,
                          std::size_t index) {
  const json& value = RequireField(record, field, index);
  if (!value.is_string()) {
    throw Error(ErrorCode::kFormat, RecordContext(index) + ": field '" +
                                        field + "' is not a string");
  }
  return value.get<std::string>();
}

}  // namespace

REInstance InstanceFromRecord(const json& record, std::size_t index) {
  if (!record.is_object()) {
    throw Error(ErrorCode::kFormat, RecordContext(index) + ": not an object");
  }
  REInstance instance;
  instance.id = RequireString(record, "id", index);
  const json& tokens = RequireField(record, "token", index);
  if (!tokens.is_array()) {
    throw Error(ErrorCode::kFormat,
                RecordContext(index) + ": field 'token' is not an array");
  }
  instance.tokens.reserve(tokens.size());
  for (const json& token : tokens) {
    if (!token.is_string()) {
      throw Error(ErrorCode::kFormat,
                  RecordContext(index) + ": non-string token");
    }
    instance.tokens.push_back(token.get<std::string>());
  }
  // Inclusive end indices on disk, half-open in memory.
  instance.subj = {RequireInt(record, "subj_start", index),
                   RequireInt(record, "subj_end", index) + 1};
  instance.obj = {RequireInt(record, "obj_start", index),
                  RequireInt(record, "obj_end", index) + 1};
  instance.subj_type =
      EntityType::FromString(RequireString(record, "subj_type", index));
  instance.obj_type =
      EntityType::FromString(RequireString(record, "obj_type", index));
  instance.relation = RequireString(record, "relation", index);
  return instance;
}

json InstanceToRecord(const REInstance& instance) {
  json record = json::object();
  record["id"] = instance.id;
  record["token"] = instance.tokens;
  record["subj_start"] = instance.subj.start;
  record["subj_end"] = instance.subj.end - 1;
  record["obj_start"] = instance.obj.start;
  record["obj_end"] = instance.obj.end - 1;
  record["subj_type"] = instance.subj_type.name();
  record["obj_type"] = instance.obj_type.name();
  record["relation"] = instance.relation;
  return record;
}

LoadResult ParseCorpus(std::string_view json_text,
                       const LoadOptions& options) {
  json document;
  try {
    document = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kFormat,
                std::string("corpus is not valid JSON: ") + e.what());
  }
  if (!document.is_array()) {
    throw Error(ErrorCode::kFormat, "corpus must be a JSON array of records");
  }

  LoadResult result;
  result.instances.reserve(document.size());
  std::unordered_set<std::string> seen_ids;
  for (std::size_t i = 0; i < document.size(); ++i) {
    REInstance instance = InstanceFromRecord(document[i], i);
    std::optional<std::string> problem = CheckInstance(instance);
    if (!problem && options.label_set &&
        instance.relation != kNoRelation &&
        !options.label_set->contains(instance.relation)) {
      problem = "relation '" + instance.relation + "' not in label set";
    }
    if (!problem && !seen_ids.insert(instance.id).second) {
      problem = "duplicate id";
    }
    if (problem) {
      result.skipped.push_back({i, instance.id, *problem});
      continue;
    }
    result.instances.push_back(std::move(instance));
  }

  if (options.mode == LoadMode::kStrict && !result.skipped.empty()) {
    std::ostringstream message;
    message << result.skipped.size() << " invalid record(s):";
    for (const SkippedRecord& skipped : result.skipped) {
      message << "\n  " << RecordContext(skipped.index) << " id='"
              << skipped.id << "': " << skipped.reason;
    }
    throw Error(ErrorCode::kValidation, message.str());
  }
  return result;
}

LoadResult LoadCorpus(const std::filesystem::path& path,
                      const LoadOptions& options) {
  std::string text = ReadFile(path);
  try {
    return ParseCorpus(text, options);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string SerializeCorpus(std::span<const REInstance> instances) {
  if (instances.empty()) return "[]\n";
  std::string out = "[\n";
  for (std::size_t i = 0; i < instances.size(); ++i) {
    // nlohmann::json objects are std::map backed, so keys come out sorted.
    out += InstanceToRecord(instances[i]).dump();
    out += i + 1 < instances.size() ? ",\n" : "\n";
  }
  out += "]\n";
  return out;
}

void WriteCorpus(std::span<const REInstance> instances,
                 const std::filesystem::path& path) {
  for (const REInstance& instance : instances) ValidateInstance(instance);
  WriteFile(path, SerializeCorpus(instances));
}

CorpusStats& CorpusStats::operator+=(const CorpusStats& other) {
  n_sentences += other.n_sentences;
  n_tokens += other.n_tokens;
  for (const auto& [label, count] : other.label_histogram) {
    label_histogram[label] += count;
  }
  return *this;
}

CorpusStats ComputeCorpusStats(std::span<const REInstance> instances) {
  CorpusStats stats;
  for (const REInstance& instance : instances) {
    ++stats.n_sentences;
    stats.n_tokens += instance.tokens.size();
    ++stats.label_histogram[instance.relation];
  }
  return stats;
}

json ToJson(const CorpusStats& stats) {
  return {{"n_sentences", stats.n_sentences},
          {"n_tokens", stats.n_tokens},
          {"label_histogram", stats.label_histogram}};
}

json ToJson(std::span<const SkippedRecord> skipped) {
  json out = json::array();
  for (const SkippedRecord& record : skipped) {
    out.push_back({{"index", record.index},
                   {"id", record.id},
                   {"reason", record.reason}});
  }
  return out;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) {
    throw Error(ErrorCode::kIo, "write failed for '" + path.string() + "'");
  }
}

}  // namespace entre
