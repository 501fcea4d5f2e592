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

// Synthetic corpora and fixtures shared by unit and acceptance tests.
//
// Every positive instance carries exactly one trigger word from
// TriggerTable() in its context; no_relation instances carry none. Entity
// names are capitalized and never collide with context words or triggers.

#ifndef ENTRE_TESTS_SUPPORT_SYNTHETIC_H_
#define ENTRE_TESTS_SUPPORT_SYNTHETIC_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "entre/instance.h"
#include "entre/lexicon.h"

namespace entre::testing {

struct TriggerSpec {
  std::string trigger;
  std::string relation;
  std::string subj_type;
  std::string obj_type;
};

const std::vector<TriggerSpec>& TriggerTable();
std::map<std::string, std::string> Triggers();  // trigger -> relation

struct SyntheticOptions {
  std::size_t n = 50;
  double no_relation_fraction = 0.2;
  // Give every instance its own (subject, object) name pair.
  bool distinct_pairs = true;
};

std::vector<REInstance> SyntheticCorpus(const SyntheticOptions& options,
                                        std::uint64_t seed);

// "Given_i Family_i" person names and "Firm_i Holdings" organizations,
// disjoint from every name SyntheticCorpus produces.
EntityLexicon SyntheticLexicon(std::size_t persons, std::size_t organizations);

// Arbitrary valid instance: 1..30 tokens, spans of 1..4 tokens, any of
// PERSON / ORGANIZATION / other types on either role.
REInstance RandomInstance(std::mt19937_64& rng, const std::string& id);
EntityName RandomName(std::mt19937_64& rng);

// Fresh empty directory under the system temp dir.
std::filesystem::path FreshTempDir(const std::string& name);

}  // namespace entre::testing

#endif  // ENTRE_TESTS_SUPPORT_SYNTHETIC_H_
