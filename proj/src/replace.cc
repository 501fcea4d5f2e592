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

#include "entre/replace.h"

#include <algorithm>
#include <optional>
#include <vector>

#include "entre/error.h"

namespace entre {

namespace {

// How one entity span is rewritten: optional marker tokens emitted before it,
// then either the replacement or the original tokens. The new span covers
// the entity tokens only.
struct EntityRewrite {
  std::vector<std::string> prefix;
  std::optional<EntityName> replacement;
};

// Rebuilds the token list left to right so every offset is recomputed rather
// than patched. `mention` (when set) is an old name whose verbatim
// occurrences outside both spans become `mention_replacement`.
REInstance Rebuild(const REInstance& in, const EntityRewrite& subj,
                   const EntityRewrite& obj, const EntityName* mention,
                   const EntityName* mention_replacement) {
  REInstance out;
  out.id = in.id;
  out.subj_type = in.subj_type;
  out.obj_type = in.obj_type;
  out.relation = in.relation;
  out.tokens.reserve(in.tokens.size() + 4);

  auto emit_entity = [&](const Span& span, const EntityRewrite& rewrite,
                         Span& new_span) {
    out.tokens.insert(out.tokens.end(), rewrite.prefix.begin(),
                      rewrite.prefix.end());
    new_span.start = static_cast<int>(out.tokens.size());
    if (rewrite.replacement) {
      out.tokens.insert(out.tokens.end(), rewrite.replacement->begin(),
                        rewrite.replacement->end());
    } else {
      out.tokens.insert(out.tokens.end(), in.tokens.begin() + span.start,
                        in.tokens.begin() + span.end);
    }
    new_span.end = static_cast<int>(out.tokens.size());
  };

  auto mention_at = [&](int i) {
    if (mention == nullptr) return false;
    const int len = static_cast<int>(mention->size());
    if (i + len > static_cast<int>(in.tokens.size())) return false;
    Span candidate{i, i + len};
    if (candidate.Overlaps(in.subj) || candidate.Overlaps(in.obj)) {
      return false;
    }
    return std::equal(mention->begin(), mention->end(),
                      in.tokens.begin() + i);
  };

  const int n = static_cast<int>(in.tokens.size());
  int i = 0;
  while (i < n) {
    if (i == in.subj.start) {
      emit_entity(in.subj, subj, out.subj);
      i = in.subj.end;
    } else if (i == in.obj.start) {
      emit_entity(in.obj, obj, out.obj);
      i = in.obj.end;
    } else if (mention_at(i)) {
      out.tokens.insert(out.tokens.end(), mention_replacement->begin(),
                        mention_replacement->end());
      i += static_cast<int>(mention->size());
    } else {
      out.tokens.push_back(in.tokens[i]);
      ++i;
    }
  }
  return out;
}

std::string Marker(Role role, const EntityType* type) {
  std::string marker = role == Role::kSubject ? "[SUBJ" : "[OBJ";
  if (type != nullptr) marker += "-" + type->name();
  return marker + "]";
}

}  // namespace

std::string_view MaskModeName(MaskMode mode) {
  switch (mode) {
    case MaskMode::kNoNameNoType: return "no-name-no-type";
    case MaskMode::kNoNameWithType: return "no-name-with-type";
    case MaskMode::kWithNameWithType: return "with-name-with-type";
  }
  return "";
}

MaskMode ParseMaskMode(std::string_view name) {
  for (MaskMode mode : {MaskMode::kNoNameNoType, MaskMode::kNoNameWithType,
                        MaskMode::kWithNameWithType}) {
    if (name == MaskModeName(mode)) return mode;
  }
  throw Error(ErrorCode::kConfiguration,
              "unknown entity mask mode '" + std::string(name) + "'");
}

std::string_view ContextMaskModeName(ContextMaskMode mode) {
  return mode == ContextMaskMode::kPreservePositions ? "preserve-positions"
                                                     : "entities-only";
}

ContextMaskMode ParseContextMaskMode(std::string_view name) {
  if (name == "preserve-positions") return ContextMaskMode::kPreservePositions;
  if (name == "entities-only") return ContextMaskMode::kEntitiesOnly;
  throw Error(ErrorCode::kConfiguration,
              "unknown context mask mode '" + std::string(name) + "'");
}

REInstance ReplaceEntity(const REInstance& instance, Role role,
                         const EntityName& new_name,
                         const ReplaceOptions& options) {
  ValidateInstance(instance);
  const EntityType& type = instance.type(role);
  if (!type.replaceable()) {
    throw Error(ErrorCode::kEligibility,
                "instance '" + instance.id + "': " +
                    std::string(RoleName(role)) + " has type " + type.name() +
                    ", only PERSON and ORGANIZATION are replaceable");
  }
  if (new_name.empty() ||
      std::any_of(new_name.begin(), new_name.end(),
                  [](const std::string& t) { return t.empty(); })) {
    throw Error(ErrorCode::kValidation,
                "instance '" + instance.id + "': replacement name is empty");
  }

  EntityRewrite replaced{{}, new_name};
  EntityName old_name = instance.Name(role);
  const EntityName* mention = options.rewrite_mentions ? &old_name : nullptr;
  return role == Role::kSubject
             ? Rebuild(instance, replaced, {}, mention, &new_name)
             : Rebuild(instance, {}, replaced, mention, &new_name);
}

REInstance ApplyEntityMask(const REInstance& instance, MaskMode mode) {
  ValidateInstance(instance);
  EntityRewrite subj;
  EntityRewrite obj;
  switch (mode) {
    case MaskMode::kNoNameNoType:
      subj.replacement = EntityName{Marker(Role::kSubject, nullptr)};
      obj.replacement = EntityName{Marker(Role::kObject, nullptr)};
      break;
    case MaskMode::kNoNameWithType:
      subj.replacement =
          EntityName{Marker(Role::kSubject, &instance.subj_type)};
      obj.replacement = EntityName{Marker(Role::kObject, &instance.obj_type)};
      break;
    case MaskMode::kWithNameWithType:
      subj.prefix = {Marker(Role::kSubject, &instance.subj_type)};
      obj.prefix = {Marker(Role::kObject, &instance.obj_type)};
      break;
  }
  return Rebuild(instance, subj, obj, nullptr, nullptr);
}

REInstance MaskContext(const REInstance& instance, std::string_view mask_token,
                       ContextMaskMode mode) {
  ValidateInstance(instance);
  REInstance out = instance;
  if (mode == ContextMaskMode::kPreservePositions) {
    for (int i = 0; i < static_cast<int>(out.tokens.size()); ++i) {
      if (!instance.subj.Contains(i) && !instance.obj.Contains(i)) {
        out.tokens[i] = std::string(mask_token);
      }
    }
    return out;
  }
  EntityName subj = instance.Name(Role::kSubject);
  EntityName obj = instance.Name(Role::kObject);
  out.tokens = subj;
  out.tokens.emplace_back(kSeparatorToken);
  out.tokens.insert(out.tokens.end(), obj.begin(), obj.end());
  const int subj_len = static_cast<int>(subj.size());
  out.subj = {0, subj_len};
  out.obj = {subj_len + 1, subj_len + 1 + static_cast<int>(obj.size())};
  return out;
}

}  // namespace entre
