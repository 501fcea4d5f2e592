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

// Typed pools of replacement names.
//
// A lexicon is built from two newline-delimited UTF-8 files, one name per
// line. Names are whitespace-tokenized so they can be spliced into
// pre-tokenized sentences. Duplicates (exact, case-sensitive token-sequence
// equality) are dropped keeping the first occurrence; blank lines are ignored.

#ifndef ENTRE_LEXICON_H_
#define ENTRE_LEXICON_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "entre/instance.h"
#include "entre/random.h"

namespace entre {

class EntityLexicon {
 public:
  // Throws Error(kConfiguration) when either pool ends up empty.
  static EntityLexicon FromLines(const std::vector<std::string>& person_lines,
                                 const std::vector<std::string>& org_lines);
  static EntityLexicon FromFiles(const std::filesystem::path& person_file,
                                 const std::filesystem::path& org_file);

  // Pool for PERSON or ORGANIZATION. Throws Error(kEligibility) for OTHER.
  const std::vector<EntityName>& pool(const EntityType& type) const;
  std::optional<std::size_t> IndexOf(const EntityType& type,
                                     const EntityName& name) const;

  std::size_t person_count() const { return persons_.names.size(); }
  std::size_t organization_count() const {
    return organizations_.names.size();
  }

 private:
  struct Pool {
    std::vector<EntityName> names;
    std::unordered_map<std::string, std::size_t> index;  // joined name -> pos
  };

  static Pool BuildPool(const std::vector<std::string>& lines,
                        std::string_view label);
  const Pool& PoolFor(const EntityType& type) const;

  Pool persons_;
  Pool organizations_;
};

// Splits on ASCII whitespace, dropping empty pieces.
std::vector<std::string> SplitWhitespace(std::string_view text);

// Uniform draw from the pool of `type` minus `exclude` (when the excluded
// name is in the pool). Throws Error(kSampling) when nothing is left.
EntityName SampleName(const EntityLexicon& lexicon, const EntityType& type,
                      const EntityName* exclude, Rng& rng);

// As SampleName, additionally avoiding every joined name in `used`. Used for
// the optional globally-unique replacement mode.
EntityName SampleUnusedName(const EntityLexicon& lexicon,
                            const EntityType& type, const EntityName* exclude,
                            const std::unordered_set<std::string>& used,
                            Rng& rng);

}  // namespace entre

#endif  // ENTRE_LEXICON_H_
