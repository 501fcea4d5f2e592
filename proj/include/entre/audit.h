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

// Corpus audits run before and after replacement:
//  * annotation disagreement between the corpus and an NER tagger,
//  * replacement eligibility,
//  * entity-name shortcuts: instances whose gold relation is still
//    predicted when every context token is masked,
//  * entity-name diversity.

#ifndef ENTRE_AUDIT_H_
#define ENTRE_AUDIT_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "entre/instance.h"
#include "entre/oracle.h"
#include "entre/replace.h"
#include "json.hpp"

namespace entre {

// Annotation disagreement

enum class Verdict { kMatch, kSpanMismatch, kTypeMismatch, kMissing };

std::string_view VerdictName(Verdict verdict);

struct MatchPolicy {
  // 1.0 demands exact span equality. Lower values accept any NER span whose
  // token-set Jaccard overlap with the annotation reaches the threshold.
  double min_jaccard = 1.0;
};

struct DisagreementEntry {
  std::string instance_id;
  Role role = Role::kSubject;
  Span annotated_span;
  std::string annotated_type;
  std::optional<NerSpan> best_match;
  Verdict verdict = Verdict::kMatch;
};

struct DisagreementReport {
  std::size_t n_instances = 0;
  std::vector<DisagreementEntry> entries;  // two per instance, corpus order
  std::vector<std::string> flagged_ids;
  MatchPolicy policy;

  double flagged_ratio() const;
  std::size_t count(Verdict verdict) const;
};

struct AnnotationAudit {
  std::vector<REInstance> clean;
  DisagreementReport report;
};

double SpanJaccard(const Span& a, const Span& b);

// Compares one annotated entity against the tagger's spans.
DisagreementEntry JudgeEntity(const REInstance& instance, Role role,
                              std::span<const NerSpan> ner_spans,
                              const MatchPolicy& policy);

// An instance is flagged when either role's verdict is not kMatch. The clean
// list keeps corpus order.
AnnotationAudit FlagAnnotations(std::span<const REInstance> instances,
                                NerOracle& ner, const MatchPolicy& policy = {});

// Eligibility

struct IneligibleInstance {
  REInstance instance;
  std::string reason;
};

struct EligibilityResult {
  std::vector<REInstance> eligible;
  std::vector<IneligibleInstance> ineligible;
};

// Eligible iff at least one role is PERSON or ORGANIZATION.
EligibilityResult EligibilityFilter(std::span<const REInstance> instances);

// Shortcuts

struct RelationShortcuts {
  std::size_t n_instances = 0;
  std::size_t n_shortcut = 0;

  double ratio() const {
    return n_instances == 0 ? 0.0
                            : static_cast<double>(n_shortcut) / n_instances;
  }
  friend bool operator==(const RelationShortcuts&,
                         const RelationShortcuts&) = default;
};

struct ShortcutReport {
  ContextMaskMode mask_mode = ContextMaskMode::kPreservePositions;
  std::string mask_token{kDefaultMaskToken};
  std::map<std::string, RelationShortcuts> per_relation;  // by gold relation
  RelationShortcuts overall;
};

// Queries the oracle on MaskContext(instance) for every instance and counts
// a shortcut when the counterfactual label equals the gold relation.
ShortcutReport ShortcutAnalysis(
    std::span<const REInstance> instances, RelationOracle& oracle,
    ContextMaskMode mask_mode = ContextMaskMode::kPreservePositions,
    std::string_view mask_token = kDefaultMaskToken);

// Diversity

struct DiversityReport {
  std::size_t n_instances = 0;
  std::size_t distinct_subject_names = 0;
  std::size_t n_person_mentions = 0;
  std::size_t distinct_person_names = 0;
  std::size_t n_organization_mentions = 0;
  std::size_t distinct_organization_names = 0;
  // Most reused subject names, count descending then name ascending.
  std::vector<std::pair<std::string, std::size_t>> top_subjects;
};

DiversityReport DiversityStats(std::span<const REInstance> instances,
                               std::size_t top_k = 10);

// Comparison

struct RatioDelta {
  double before = 0.0;
  double after = 0.0;
  double absolute = 0.0;                 // before - after
  std::optional<double> relative;        // (before - after) / before
};

struct ShortcutComparison {
  std::map<std::string, RatioDelta> per_relation;
  RatioDelta overall;
};

struct DiversityComparison {
  // after / before; nullopt when before is zero.
  std::optional<double> subject_multiplier;
  std::optional<double> person_multiplier;
  std::optional<double> organization_multiplier;
};

RatioDelta MakeRatioDelta(double before, double after);

// Throws Error(kReport) when the reports cover different relation sets.
ShortcutComparison CompareShortcuts(const ShortcutReport& before,
                                    const ShortcutReport& after);
DiversityComparison CompareDiversity(const DiversityReport& before,
                                     const DiversityReport& after);

// JSON (all reports carry "kind" and "schema_version") and text tables.
nlohmann::json ToJson(const DisagreementReport& report);
nlohmann::json ToJson(const ShortcutReport& report);
nlohmann::json ToJson(const DiversityReport& report);
nlohmann::json ToJson(const ShortcutComparison& comparison);
nlohmann::json ToJson(const DiversityComparison& comparison);
nlohmann::json ToJson(const EligibilityResult& result);
ShortcutReport ShortcutReportFromJson(const nlohmann::json& json);
DiversityReport DiversityReportFromJson(const nlohmann::json& json);

std::string FormatTable(const ShortcutReport& report);
std::string FormatTable(const DiversityReport& report);
std::string FormatTable(const ShortcutComparison& comparison);
// Tab-separated review list of the flagged entities for human inspection.
std::string FormatReviewList(const DisagreementReport& report,
                             std::span<const REInstance> instances);

}  // namespace entre

#endif  // ENTRE_AUDIT_H_
