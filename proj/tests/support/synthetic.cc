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

#include "synthetic.h"

#include <unistd.h>

#include <algorithm>

namespace entre::testing {
namespace {

const std::vector<std::string> kContextWords = {
    "the",  "a",         "in",        "on",   "said",   "that",
    "was",  "of",        "and",       "to",   "report", "yesterday",
    "late", "officials", "statement", "city", "new",    "year",
    ",",    "."};

const std::vector<std::string> kGiven = {
    "John",  "Mary",   "Wei",    "Amara", "Luis",  "Olga",  "Kenji",
    "Fatma", "Pierre", "Ingrid", "Tomas", "Aisha", "Dmitri", "Nora",
    "Rahul", "Sofia",  "Kwame",  "Elena", "Hiro",  "Grace"};
const std::vector<std::string> kFamily = {
    "Smith",  "Chen",   "Okafor", "Garcia", "Ivanova", "Tanaka", "Yilmaz",
    "Dubois", "Berg",   "Novak",  "Khan",   "Petrov",  "Walsh",  "Patel",
    "Rossi",  "Mensah", "Silva",  "Sato",   "Adeyemi", "Moreau"};
const std::vector<std::string> kOrgHead = {
    "Acme",   "Globex",  "Initech", "Umbrella", "Stark",   "Wayne",
    "Tyrell", "Cyberdyne", "Soylent", "Hooli", "Vandelay", "Wonka"};
const std::vector<std::string> kOrgTail = {"Corp", "Group", "Labs",
                                           "Industries", "Partners"};
const std::vector<std::string> kCities = {"Paris", "Lagos", "Osaka", "Lima",
                                          "Oslo",  "Quito", "Pune"};
const std::vector<std::string> kCountries = {"France", "Nigeria", "Japan",
                                             "Peru",   "Norway",  "India"};

std::size_t Pick(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

EntityName PersonName(std::size_t i) {
  std::size_t g = i % kGiven.size();
  std::size_t f = (i / kGiven.size()) % kFamily.size();
  EntityName name = {kGiven[g], kFamily[f]};
  if (std::size_t round = i / (kGiven.size() * kFamily.size()); round > 0) {
    name.push_back("Jr" + std::to_string(round));
  }
  return name;
}

EntityName OrgName(std::size_t i) {
  std::size_t h = i % kOrgHead.size();
  std::size_t t = (i / kOrgHead.size()) % kOrgTail.size();
  EntityName name = {kOrgHead[h], kOrgTail[t]};
  if (std::size_t round = i / (kOrgHead.size() * kOrgTail.size()); round > 0) {
    name.push_back("No" + std::to_string(round));
  }
  return name;
}

EntityName NameOfType(const std::string& type, std::size_t i,
                      std::mt19937_64& rng) {
  if (type == "PERSON") return PersonName(i);
  if (type == "ORGANIZATION") return OrgName(i);
  if (type == "CITY") return {kCities[Pick(rng, kCities.size())]};
  if (type == "COUNTRY") return {kCountries[Pick(rng, kCountries.size())]};
  return {std::to_string(1900 + Pick(rng, 120))};  // DATE
}

}  // namespace

const std::vector<TriggerSpec>& TriggerTable() {
  static const std::vector<TriggerSpec> table = {
      {"died", "per:city_of_death", "PERSON", "CITY"},
      {"works", "per:employee_of", "PERSON", "ORGANIZATION"},
      {"married", "per:spouse", "PERSON", "PERSON"},
      {"founded", "org:founded_by", "ORGANIZATION", "PERSON"},
      {"headquartered", "org:country_of_headquarters", "ORGANIZATION",
       "COUNTRY"},
      {"born", "per:date_of_birth", "PERSON", "DATE"},
  };
  return table;
}

std::map<std::string, std::string> Triggers() {
  std::map<std::string, std::string> triggers;
  for (const TriggerSpec& spec : TriggerTable()) {
    triggers[spec.trigger] = spec.relation;
  }
  return triggers;
}

std::vector<REInstance> SyntheticCorpus(const SyntheticOptions& options,
                                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution negative(options.no_relation_fraction);
  static const std::vector<std::string> kObjTypes = {
      "PERSON", "ORGANIZATION", "CITY", "DATE"};
  std::vector<REInstance> corpus;
  corpus.reserve(options.n);
  for (std::size_t i = 0; i < options.n; ++i) {
    std::string relation = std::string(kNoRelation);
    std::string trigger;
    std::string subj_type = Pick(rng, 2) == 0 ? "PERSON" : "ORGANIZATION";
    std::string obj_type = kObjTypes[Pick(rng, kObjTypes.size())];
    if (!negative(rng)) {
      const TriggerSpec& spec = TriggerTable()[Pick(rng, TriggerTable().size())];
      relation = spec.relation;
      trigger = spec.trigger;
      subj_type = spec.subj_type;
      obj_type = spec.obj_type;
    }
    // Subjects and objects draw from disjoint index ranges so a subject
    // never equals its object.
    std::size_t subj_index = options.distinct_pairs ? 2 * i : 2 * Pick(rng, 8);
    std::size_t obj_index =
        options.distinct_pairs ? 2 * i + 1 : 2 * Pick(rng, 8) + 1;
    EntityName subj = NameOfType(subj_type, subj_index, rng);
    EntityName obj = NameOfType(obj_type, obj_index, rng);

    // Units: single context words, optional trigger, the two entities.
    std::vector<std::vector<std::string>> units;
    std::size_t n_context = 2 + Pick(rng, 9);
    for (std::size_t k = 0; k < n_context; ++k) {
      units.push_back({kContextWords[Pick(rng, kContextWords.size())]});
    }
    if (!trigger.empty()) units.push_back({trigger});
    units.push_back(subj);
    units.push_back(obj);
    std::vector<std::size_t> order(units.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::shuffle(order.begin(), order.end(), rng);

    REInstance instance;
    char id[32];
    std::snprintf(id, sizeof(id), "syn-%06zu", i);
    instance.id = id;
    const std::size_t subj_unit = units.size() - 2;
    const std::size_t obj_unit = units.size() - 1;
    for (std::size_t k : order) {
      int start = static_cast<int>(instance.tokens.size());
      instance.tokens.insert(instance.tokens.end(), units[k].begin(),
                             units[k].end());
      int end = static_cast<int>(instance.tokens.size());
      if (k == subj_unit) instance.subj = {start, end};
      if (k == obj_unit) instance.obj = {start, end};
    }
    instance.subj_type = EntityType::FromString(subj_type);
    instance.obj_type = EntityType::FromString(obj_type);
    instance.relation = relation;
    corpus.push_back(std::move(instance));
  }
  return corpus;
}

EntityLexicon SyntheticLexicon(std::size_t persons,
                               std::size_t organizations) {
  std::vector<std::string> person_lines;
  person_lines.reserve(persons);
  for (std::size_t i = 0; i < persons; ++i) {
    person_lines.push_back("Given" + std::to_string(i) + " Family" +
                           std::to_string(i % 97));
  }
  std::vector<std::string> org_lines;
  org_lines.reserve(organizations);
  for (std::size_t i = 0; i < organizations; ++i) {
    org_lines.push_back("Firm" + std::to_string(i) + " Holdings");
  }
  return EntityLexicon::FromLines(person_lines, org_lines);
}

EntityName RandomName(std::mt19937_64& rng) {
  static const std::vector<std::string> kPieces = {
      "Ana", "Bo", "Cy", "Dee", "Eli", "Fay", "Gus", "Hal", "Ivy", "Jo",
      "de",  "van", "&",  "Co",  "Ltd", "St.", "O'Neil", "Zoë"};
  EntityName name(1 + Pick(rng, 4));
  for (std::string& token : name) token = kPieces[Pick(rng, kPieces.size())];
  return name;
}

REInstance RandomInstance(std::mt19937_64& rng, const std::string& id) {
  static const std::vector<std::string> kTypes = {
      "PERSON", "ORGANIZATION", "PERSON", "ORGANIZATION",
      "DATE",   "CITY",         "NUMBER", "MISC"};
  static const std::vector<std::string> kRelations = {
      std::string(kNoRelation), "per:title", "org:members", "per:origin"};
  const int subj_len = 1 + static_cast<int>(Pick(rng, 4));
  const int obj_len = 1 + static_cast<int>(Pick(rng, 4));
  const int gaps = static_cast<int>(Pick(rng, 23));
  const int n = subj_len + obj_len + gaps;
  // Split the free tokens into before / between / after.
  int before = static_cast<int>(Pick(rng, gaps + 1));
  int between = static_cast<int>(Pick(rng, gaps - before + 1));
  REInstance instance;
  instance.id = id;
  instance.tokens.resize(n);
  for (int k = 0; k < n; ++k) {
    instance.tokens[k] = "w" + std::to_string(Pick(rng, 40));
  }
  Span first{before, before + subj_len};
  Span second{first.end + between, first.end + between + obj_len};
  if (Pick(rng, 2) == 0) {
    instance.subj = first;
    instance.obj = second;
  } else {
    // Object first, keeping the lengths attached to their roles.
    instance.obj = {before, before + obj_len};
    instance.subj = {instance.obj.end + between,
                     instance.obj.end + between + subj_len};
  }
  instance.subj_type = EntityType::FromString(kTypes[Pick(rng, kTypes.size())]);
  instance.obj_type = EntityType::FromString(kTypes[Pick(rng, kTypes.size())]);
  instance.relation = kRelations[Pick(rng, kRelations.size())];
  return instance;
}

std::filesystem::path FreshTempDir(const std::string& name) {
  std::filesystem::path dir = std::filesystem::temp_directory_path() /
                              ("entre_" + name + "_" +
                               std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace entre::testing
