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

// Span-exact instance transforms: type-constrained entity replacement, the
// entity-mask baselines, and context masking for counterfactual queries.
//
// Every transform returns a new instance with the relation label, id and
// entity types untouched and both spans re-pointed at their entities.

#ifndef ENTRE_REPLACE_H_
#define ENTRE_REPLACE_H_

#include <string>
#include <string_view>

#include "entre/instance.h"

namespace entre {

inline constexpr std::string_view kDefaultMaskToken = "[MASK]";
inline constexpr std::string_view kSeparatorToken = "[SEP]";

struct ReplacementRecord {
  std::string instance_id;
  Role role = Role::kSubject;
  EntityName old_name;
  EntityName new_name;
  int iteration = 1;

  friend bool operator==(const ReplacementRecord&,
                         const ReplacementRecord&) = default;
};

enum class MaskMode {
  kNoNameNoType,      // [SUBJ] / [OBJ]
  kNoNameWithType,    // [SUBJ-PERSON] / [OBJ-ORGANIZATION]
  kWithNameWithType,  // [SUBJ-PERSON] John ... [OBJ-ORGANIZATION] ACME
};

enum class ContextMaskMode {
  kPreservePositions,  // context tokens overwritten by the mask token
  kEntitiesOnly,       // subject ++ [SEP] ++ object
};

std::string_view MaskModeName(MaskMode mode);
MaskMode ParseMaskMode(std::string_view name);
std::string_view ContextMaskModeName(ContextMaskMode mode);
ContextMaskMode ParseContextMaskMode(std::string_view name);

struct ReplaceOptions {
  // Also rewrite verbatim occurrences of the old name outside both annotated
  // spans. Off by default: only the annotated span changes.
  bool rewrite_mentions = false;
};

// Splices `new_name` over the role's span. The other span shifts by
// len(new_name) - len(old span) when it lies after the replaced span.
// Throws Error(kEligibility) unless the role is PERSON or ORGANIZATION and
// Error(kValidation) for a broken input instance or an empty name.
REInstance ReplaceEntity(const REInstance& instance, Role role,
                         const EntityName& new_name,
                         const ReplaceOptions& options = {});

REInstance ApplyEntityMask(const REInstance& instance, MaskMode mode);

// Builds the counterfactual input that keeps the entity mentions and removes
// the textual context.
REInstance MaskContext(const REInstance& instance,
                       std::string_view mask_token = kDefaultMaskToken,
                       ContextMaskMode mode =
                           ContextMaskMode::kPreservePositions);

}  // namespace entre

#endif  // ENTRE_REPLACE_H_
