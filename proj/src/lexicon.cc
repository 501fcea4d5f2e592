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

#include "entre/lexicon.h"

#include <sstream>

#include "entre/corpus.h"
#include "entre/error.h"

namespace entre {

namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

std::vector<std::string> SplitLines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

// Bounded number of rejection rounds before SampleUnusedName falls back to a
// scan; keeps the draw cheap while the pool is mostly unused.
constexpr int kRejectionRounds = 64;

}  // namespace

std::vector<std::string> SplitWhitespace(std::string_view text) {
  std::vector<std::string> pieces;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsSpace(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !IsSpace(text[j])) ++j;
    if (j > i) pieces.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return pieces;
}

EntityLexicon::Pool EntityLexicon::BuildPool(
    const std::vector<std::string>& lines, std::string_view label) {
  Pool pool;
  for (const std::string& line : lines) {
    EntityName name = SplitWhitespace(line);
    if (name.empty()) continue;
    std::string key = JoinName(name);
    if (pool.index.emplace(std::move(key), pool.names.size()).second) {
      pool.names.push_back(std::move(name));
    }
  }
  if (pool.names.empty()) {
    throw Error(ErrorCode::kConfiguration,
                std::string(label) + " lexicon is empty");
  }
  return pool;
}

EntityLexicon EntityLexicon::FromLines(
    const std::vector<std::string>& person_lines,
    const std::vector<std::string>& org_lines) {
  EntityLexicon lexicon;
  lexicon.persons_ = BuildPool(person_lines, "PERSON");
  lexicon.organizations_ = BuildPool(org_lines, "ORGANIZATION");
  return lexicon;
}

EntityLexicon EntityLexicon::FromFiles(const std::filesystem::path& person_file,
                                       const std::filesystem::path& org_file) {
  return FromLines(SplitLines(ReadFile(person_file)),
                   SplitLines(ReadFile(org_file)));
}

const EntityLexicon::Pool& EntityLexicon::PoolFor(
    const EntityType& type) const {
  switch (type.kind()) {
    case EntityType::Kind::kPerson: return persons_;
    case EntityType::Kind::kOrganization: return organizations_;
    case EntityType::Kind::kOther: break;
  }
  throw Error(ErrorCode::kEligibility,
              "no replacement pool for entity type " + type.name());
}

const std::vector<EntityName>& EntityLexicon::pool(
    const EntityType& type) const {
  return PoolFor(type).names;
}

std::optional<std::size_t> EntityLexicon::IndexOf(
    const EntityType& type, const EntityName& name) const {
  const Pool& p = PoolFor(type);
  auto it = p.index.find(JoinName(name));
  if (it == p.index.end()) return std::nullopt;
  return it->second;
}

EntityName SampleName(const EntityLexicon& lexicon, const EntityType& type,
                      const EntityName* exclude, Rng& rng) {
  const std::vector<EntityName>& names = lexicon.pool(type);
  std::optional<std::size_t> skip;
  if (exclude != nullptr) skip = lexicon.IndexOf(type, *exclude);
  const std::size_t available = names.size() - (skip ? 1 : 0);
  if (available == 0) {
    throw Error(ErrorCode::kSampling,
                type.name() + " pool exhausted: only the excluded name left");
  }
  // Draw over the pool with the excluded slot removed.
  std::size_t k = static_cast<std::size_t>(rng.UniformBelow(available));
  if (skip && k >= *skip) ++k;
  return names[k];
}

EntityName SampleUnusedName(const EntityLexicon& lexicon,
                            const EntityType& type, const EntityName* exclude,
                            const std::unordered_set<std::string>& used,
                            Rng& rng) {
  const std::vector<EntityName>& names = lexicon.pool(type);
  const std::string excluded = exclude ? JoinName(*exclude) : std::string();
  auto acceptable = [&](const EntityName& name) {
    std::string key = JoinName(name);
    return !used.contains(key) && !(exclude && key == excluded);
  };
  for (int round = 0; round < kRejectionRounds; ++round) {
    const EntityName& name = names[rng.UniformBelow(names.size())];
    if (acceptable(name)) return name;
  }
  // Dense usage: scan from a random offset.
  const std::size_t offset = rng.UniformBelow(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    const EntityName& name = names[(offset + i) % names.size()];
    if (acceptable(name)) return name;
  }
  throw Error(ErrorCode::kSampling,
              type.name() + " pool exhausted: every name already used");
}

}  // namespace entre
