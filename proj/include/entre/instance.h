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

// Core data model for sentence-level relation extraction instances.

#ifndef ENTRE_INSTANCE_H_
#define ENTRE_INSTANCE_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace entre {

inline constexpr std::string_view kNoRelation = "no_relation";

// Entity type tag. Only PERSON and ORGANIZATION are replacement-eligible;
// every other tag (DATE, CITY, MISC, ...) is carried through as OTHER(name).
class EntityType {
 public:
  enum class Kind { kPerson, kOrganization, kOther };

  EntityType() : EntityType(Kind::kOther, "OTHER") {}

  static EntityType Person() { return {Kind::kPerson, "PERSON"}; }
  static EntityType Organization() {
    return {Kind::kOrganization, "ORGANIZATION"};
  }
  // Parses a corpus type string. "PERSON" and "ORGANIZATION" map to their
  // kinds, anything else becomes OTHER with the string preserved.
  static EntityType FromString(std::string_view name);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  bool replaceable() const { return kind_ != Kind::kOther; }

  friend bool operator==(const EntityType& a, const EntityType& b) {
    return a.name_ == b.name_;
  }

 private:
  EntityType(Kind kind, std::string name)
      : kind_(kind), name_(std::move(name)) {}

  Kind kind_;
  std::string name_;
};

// Half-open token range [start, end).
struct Span {
  int start = 0;
  int end = 0;

  int length() const { return end - start; }
  bool Overlaps(const Span& other) const {
    return start < other.end && other.start < end;
  }
  bool Contains(int index) const { return start <= index && index < end; }

  friend bool operator==(const Span&, const Span&) = default;
};

enum class Role { kSubject, kObject };

std::string_view RoleName(Role role);

// An entity name as an ordered list of whitespace tokens.
using EntityName = std::vector<std::string>;

std::string JoinName(std::span<const std::string> tokens);

struct REInstance {
  std::string id;
  std::vector<std::string> tokens;
  Span subj;
  Span obj;
  EntityType subj_type;
  EntityType obj_type;
  std::string relation;

  const Span& span(Role role) const {
    return role == Role::kSubject ? subj : obj;
  }
  const EntityType& type(Role role) const {
    return role == Role::kSubject ? subj_type : obj_type;
  }
  // Tokens covered by the role's span.
  EntityName Name(Role role) const;

  friend bool operator==(const REInstance&, const REInstance&) = default;
};

// Returns a description of the first broken invariant, or nullopt when the
// instance is well formed. Label-set membership is checked by the loader.
std::optional<std::string> CheckInstance(const REInstance& instance);

// Throws Error(kValidation) naming the instance id when CheckInstance fails.
void ValidateInstance(const REInstance& instance);

}  // namespace entre

#endif  // ENTRE_INSTANCE_H_
