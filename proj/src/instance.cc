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

#include "entre/instance.h"

#include "entre/error.h"

namespace entre {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kFormat: return "format error";
    case ErrorCode::kValidation: return "validation error";
    case ErrorCode::kConfiguration: return "configuration error";
    case ErrorCode::kEligibility: return "eligibility error";
    case ErrorCode::kSampling: return "sampling error";
    case ErrorCode::kOracle: return "oracle error";
    case ErrorCode::kPipeline: return "pipeline error";
    case ErrorCode::kReport: return "report error";
    case ErrorCode::kIo: return "i/o error";
  }
  return "error";
}

EntityType EntityType::FromString(std::string_view name) {
  if (name == "PERSON") return Person();
  if (name == "ORGANIZATION") return Organization();
  return EntityType(Kind::kOther, std::string(name));
}

std::string_view RoleName(Role role) {
  return role == Role::kSubject ? "subject" : "object";
}

std::string JoinName(std::span<const std::string> tokens) {
  std::string out;
  for (const auto& token : tokens) {
    if (!out.empty()) out += ' ';
    out += token;
  }
  return out;
}

EntityName REInstance::Name(Role role) const {
  const Span& s = span(role);
  return EntityName(tokens.begin() + s.start, tokens.begin() + s.end);
}

std::optional<std::string> CheckInstance(const REInstance& instance) {
  const int n = static_cast<int>(instance.tokens.size());
  if (n == 0) return "token list is empty";
  for (int i = 0; i < n; ++i) {
    if (instance.tokens[i].empty()) {
      return "token " + std::to_string(i) + " is empty";
    }
  }
  for (Role role : {Role::kSubject, Role::kObject}) {
    const Span& s = instance.span(role);
    if (s.start < 0 || s.start >= s.end || s.end > n) {
      return std::string(RoleName(role)) + " span [" +
             std::to_string(s.start) + "," + std::to_string(s.end) +
             ") out of bounds for " + std::to_string(n) + " tokens";
    }
  }
  if (instance.subj.Overlaps(instance.obj)) {
    return "subject and object spans overlap";
  }
  if (instance.relation.empty()) return "relation label is empty";
  return std::nullopt;
}

void ValidateInstance(const REInstance& instance) {
  if (auto problem = CheckInstance(instance)) {
    throw Error(ErrorCode::kValidation,
                "instance '" + instance.id + "': " + *problem);
  }
}

}  // namespace entre
