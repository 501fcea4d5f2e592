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

#include "entre/audit.h"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>
#include <unordered_map>

#include "entre/error.h"
#include "entre/eval.h"

namespace entre {

using nlohmann::json;

namespace {

json OptionalNumber(const std::optional<double>& value) {
  return value ? json(*value) : json(nullptr);
}

json SpanJson(const Span& span) {
  return {{"start", span.start}, {"end", span.end}};
}

void RequireKind(const json& report, std::string_view kind) {
  if (!report.is_object() || report.value("kind", "") != kind) {
    throw Error(ErrorCode::kReport,
                "expected a '" + std::string(kind) + "' report");
  }
}

std::string Percent(double ratio) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(1) << 100.0 * ratio << "%";
  return out.str();
}

}  // namespace

std::string_view VerdictName(Verdict verdict) {
  switch (verdict) {
    case Verdict::kMatch: return "match";
    case Verdict::kSpanMismatch: return "span_mismatch";
    case Verdict::kTypeMismatch: return "type_mismatch";
    case Verdict::kMissing: return "missing";
  }
  return "";
}

double DisagreementReport::flagged_ratio() const {
  return n_instances == 0
             ? 0.0
             : static_cast<double>(flagged_ids.size()) / n_instances;
}

std::size_t DisagreementReport::count(Verdict verdict) const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(),
                    [&](const DisagreementEntry& e) {
                      return e.verdict == verdict;
                    }));
}

double SpanJaccard(const Span& a, const Span& b) {
  const int intersection =
      std::max(0, std::min(a.end, b.end) - std::max(a.start, b.start));
  const int union_size = a.length() + b.length() - intersection;
  return union_size == 0 ? 0.0
                         : static_cast<double>(intersection) / union_size;
}

DisagreementEntry JudgeEntity(const REInstance& instance, Role role,
                              std::span<const NerSpan> ner_spans,
                              const MatchPolicy& policy) {
  DisagreementEntry entry;
  entry.instance_id = instance.id;
  entry.role = role;
  entry.annotated_span = instance.span(role);
  entry.annotated_type = instance.type(role).name();

  double best = 0.0;
  for (const NerSpan& candidate : ner_spans) {
    const double overlap = SpanJaccard(entry.annotated_span, candidate.span);
    if (overlap > best ||
        (overlap == best && overlap > 0.0 &&
         candidate.span.start < entry.best_match->span.start)) {
      best = overlap;
      entry.best_match = candidate;
    }
  }
  if (!entry.best_match) {
    entry.verdict = Verdict::kMissing;
    return entry;
  }
  const bool span_ok = entry.best_match->span == entry.annotated_span ||
                       (policy.min_jaccard < 1.0 && best >= policy.min_jaccard);
  const bool type_ok = entry.best_match->type == entry.annotated_type;
  if (!span_ok) {
    entry.verdict = Verdict::kSpanMismatch;
  } else if (!type_ok) {
    entry.verdict = Verdict::kTypeMismatch;
  } else {
    entry.verdict = Verdict::kMatch;
  }
  return entry;
}

AnnotationAudit FlagAnnotations(std::span<const REInstance> instances,
                                NerOracle& ner, const MatchPolicy& policy) {
  std::vector<NerRequest> requests;
  requests.reserve(instances.size());
  for (const REInstance& instance : instances) {
    requests.push_back({instance.id, instance.tokens});
  }
  std::vector<NerResponse> responses = ner.TagBatch(requests);

  AnnotationAudit audit;
  audit.report.n_instances = instances.size();
  audit.report.policy = policy;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    bool flagged = false;
    for (Role role : {Role::kSubject, Role::kObject}) {
      DisagreementEntry entry =
          JudgeEntity(instances[i], role, responses[i].spans, policy);
      flagged |= entry.verdict != Verdict::kMatch;
      audit.report.entries.push_back(std::move(entry));
    }
    if (flagged) {
      audit.report.flagged_ids.push_back(instances[i].id);
    } else {
      audit.clean.push_back(instances[i]);
    }
  }
  return audit;
}

EligibilityResult EligibilityFilter(std::span<const REInstance> instances) {
  EligibilityResult result;
  for (const REInstance& instance : instances) {
    if (instance.subj_type.replaceable() || instance.obj_type.replaceable()) {
      result.eligible.push_back(instance);
    } else {
      result.ineligible.push_back(
          {instance, "neither entity is PERSON or ORGANIZATION (subject " +
                         instance.subj_type.name() + ", object " +
                         instance.obj_type.name() + ")"});
    }
  }
  return result;
}

ShortcutReport ShortcutAnalysis(std::span<const REInstance> instances,
                                RelationOracle& oracle,
                                ContextMaskMode mask_mode,
                                std::string_view mask_token) {
  std::vector<OracleRequest> requests;
  requests.reserve(instances.size());
  for (const REInstance& instance : instances) {
    requests.push_back(
        MakeRequest(MaskContext(instance, mask_token, mask_mode)));
  }
  std::vector<OraclePrediction> counterfactual = oracle.PredictBatch(requests);

  ShortcutReport report;
  report.mask_mode = mask_mode;
  report.mask_token = std::string(mask_token);
  for (std::size_t i = 0; i < instances.size(); ++i) {
    RelationShortcuts& bucket = report.per_relation[instances[i].relation];
    const bool shortcut = counterfactual[i].label == instances[i].relation;
    ++bucket.n_instances;
    ++report.overall.n_instances;
    bucket.n_shortcut += shortcut;
    report.overall.n_shortcut += shortcut;
  }
  return report;
}

DiversityReport DiversityStats(std::span<const REInstance> instances,
                               std::size_t top_k) {
  std::unordered_map<std::string, std::size_t> subject_counts;
  std::set<std::string> persons;
  std::set<std::string> organizations;
  DiversityReport report;
  report.n_instances = instances.size();
  for (const REInstance& instance : instances) {
    ++subject_counts[JoinName(instance.Name(Role::kSubject))];
    for (Role role : {Role::kSubject, Role::kObject}) {
      switch (instance.type(role).kind()) {
        case EntityType::Kind::kPerson:
          ++report.n_person_mentions;
          persons.insert(JoinName(instance.Name(role)));
          break;
        case EntityType::Kind::kOrganization:
          ++report.n_organization_mentions;
          organizations.insert(JoinName(instance.Name(role)));
          break;
        case EntityType::Kind::kOther:
          break;
      }
    }
  }
  report.distinct_subject_names = subject_counts.size();
  report.distinct_person_names = persons.size();
  report.distinct_organization_names = organizations.size();

  std::vector<std::pair<std::string, std::size_t>> ranked(
      subject_counts.begin(), subject_counts.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (ranked.size() > top_k) ranked.resize(top_k);
  report.top_subjects = std::move(ranked);
  return report;
}

RatioDelta MakeRatioDelta(double before, double after) {
  RatioDelta delta{before, after, before - after, std::nullopt};
  if (before != 0.0) delta.relative = (before - after) / before;
  return delta;
}

ShortcutComparison CompareShortcuts(const ShortcutReport& before,
                                    const ShortcutReport& after) {
  std::set<std::string> before_relations;
  std::set<std::string> after_relations;
  for (const auto& [relation, counts] : before.per_relation) {
    before_relations.insert(relation);
  }
  for (const auto& [relation, counts] : after.per_relation) {
    after_relations.insert(relation);
  }
  if (before_relations != after_relations) {
    throw Error(ErrorCode::kReport,
                "shortcut reports cover different relation sets");
  }
  ShortcutComparison comparison;
  for (const auto& [relation, counts] : before.per_relation) {
    comparison.per_relation[relation] =
        MakeRatioDelta(counts.ratio(), after.per_relation.at(relation).ratio());
  }
  comparison.overall =
      MakeRatioDelta(before.overall.ratio(), after.overall.ratio());
  return comparison;
}

DiversityComparison CompareDiversity(const DiversityReport& before,
                                     const DiversityReport& after) {
  auto multiplier = [](std::size_t b, std::size_t a) -> std::optional<double> {
    if (b == 0) return std::nullopt;
    return static_cast<double>(a) / static_cast<double>(b);
  };
  return {multiplier(before.distinct_subject_names,
                     after.distinct_subject_names),
          multiplier(before.distinct_person_names,
                     after.distinct_person_names),
          multiplier(before.distinct_organization_names,
                     after.distinct_organization_names)};
}

// JSON

json ToJson(const DisagreementReport& report) {
  json entries = json::array();
  for (const DisagreementEntry& e : report.entries) {
    json entry = {{"instance_id", e.instance_id},
                  {"role", RoleName(e.role)},
                  {"annotated_span", SpanJson(e.annotated_span)},
                  {"annotated_type", e.annotated_type},
                  {"verdict", VerdictName(e.verdict)}};
    entry["ner_span"] =
        e.best_match ? json{{"start", e.best_match->span.start},
                            {"end", e.best_match->span.end},
                            {"type", e.best_match->type}}
                     : json(nullptr);
    entries.push_back(std::move(entry));
  }
  json counts = json::object();
  for (Verdict v : {Verdict::kMatch, Verdict::kSpanMismatch,
                    Verdict::kTypeMismatch, Verdict::kMissing}) {
    counts[std::string(VerdictName(v))] = report.count(v);
  }
  return {{"kind", "annotations"},
          {"schema_version", kReportSchemaVersion},
          {"min_jaccard", report.policy.min_jaccard},
          {"n_instances", report.n_instances},
          {"n_flagged", report.flagged_ids.size()},
          {"flagged_ratio", report.flagged_ratio()},
          {"verdict_counts", std::move(counts)},
          {"flagged_ids", report.flagged_ids},
          {"entries", std::move(entries)}};
}

json ToJson(const ShortcutReport& report) {
  json per_relation = json::object();
  for (const auto& [relation, counts] : report.per_relation) {
    per_relation[relation] = {{"n_instances", counts.n_instances},
                              {"n_shortcut", counts.n_shortcut},
                              {"ratio", counts.ratio()}};
  }
  return {{"kind", "shortcuts"},
          {"schema_version", kReportSchemaVersion},
          {"mask_mode", ContextMaskModeName(report.mask_mode)},
          {"mask_token", report.mask_token},
          {"n_instances", report.overall.n_instances},
          {"n_shortcut", report.overall.n_shortcut},
          {"ratio", report.overall.ratio()},
          {"per_relation", std::move(per_relation)}};
}

json ToJson(const DiversityReport& report) {
  json top = json::array();
  for (const auto& [name, count] : report.top_subjects) {
    top.push_back({{"name", name}, {"count", count}});
  }
  return {{"kind", "diversity"},
          {"schema_version", kReportSchemaVersion},
          {"n_instances", report.n_instances},
          {"distinct_subject_names", report.distinct_subject_names},
          {"n_person_mentions", report.n_person_mentions},
          {"distinct_person_names", report.distinct_person_names},
          {"n_organization_mentions", report.n_organization_mentions},
          {"distinct_organization_names", report.distinct_organization_names},
          {"top_subjects", std::move(top)}};
}

namespace {

json ToJson(const RatioDelta& delta) {
  return {{"before", delta.before},
          {"after", delta.after},
          {"absolute", delta.absolute},
          {"relative_reduction", OptionalNumber(delta.relative)}};
}

}  // namespace

json ToJson(const ShortcutComparison& comparison) {
  json per_relation = json::object();
  for (const auto& [relation, delta] : comparison.per_relation) {
    per_relation[relation] = ToJson(delta);
  }
  return {{"kind", "shortcut_comparison"},
          {"schema_version", kReportSchemaVersion},
          {"overall", ToJson(comparison.overall)},
          {"per_relation", std::move(per_relation)}};
}

json ToJson(const DiversityComparison& comparison) {
  return {{"kind", "diversity_comparison"},
          {"schema_version", kReportSchemaVersion},
          {"subject_multiplier", OptionalNumber(comparison.subject_multiplier)},
          {"person_multiplier", OptionalNumber(comparison.person_multiplier)},
          {"organization_multiplier",
           OptionalNumber(comparison.organization_multiplier)}};
}

json ToJson(const EligibilityResult& result) {
  json ineligible = json::array();
  for (const IneligibleInstance& item : result.ineligible) {
    ineligible.push_back({{"id", item.instance.id}, {"reason", item.reason}});
  }
  return {{"kind", "eligibility"},
          {"schema_version", kReportSchemaVersion},
          {"n_eligible", result.eligible.size()},
          {"n_ineligible", result.ineligible.size()},
          {"ineligible", std::move(ineligible)}};
}

ShortcutReport ShortcutReportFromJson(const json& report) {
  RequireKind(report, "shortcuts");
  try {
    ShortcutReport out;
    out.mask_mode = ParseContextMaskMode(report.at("mask_mode").get<std::string>());
    out.mask_token = report.at("mask_token").get<std::string>();
    for (const auto& [relation, counts] : report.at("per_relation").items()) {
      RelationShortcuts& bucket = out.per_relation[relation];
      bucket.n_instances = counts.at("n_instances").get<std::size_t>();
      bucket.n_shortcut = counts.at("n_shortcut").get<std::size_t>();
      out.overall.n_instances += bucket.n_instances;
      out.overall.n_shortcut += bucket.n_shortcut;
    }
    return out;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kReport,
                std::string("malformed shortcut report: ") + e.what());
  }
}

DiversityReport DiversityReportFromJson(const json& report) {
  RequireKind(report, "diversity");
  try {
    DiversityReport out;
    out.n_instances = report.at("n_instances").get<std::size_t>();
    out.distinct_subject_names =
        report.at("distinct_subject_names").get<std::size_t>();
    out.n_person_mentions = report.at("n_person_mentions").get<std::size_t>();
    out.distinct_person_names =
        report.at("distinct_person_names").get<std::size_t>();
    out.n_organization_mentions =
        report.at("n_organization_mentions").get<std::size_t>();
    out.distinct_organization_names =
        report.at("distinct_organization_names").get<std::size_t>();
    for (const json& item : report.at("top_subjects")) {
      out.top_subjects.emplace_back(item.at("name").get<std::string>(),
                                    item.at("count").get<std::size_t>());
    }
    return out;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kReport,
                std::string("malformed diversity report: ") + e.what());
  }
}

// Tables

std::string FormatTable(const ShortcutReport& report) {
  std::ostringstream out;
  out << "shortcut analysis (mask mode " << ContextMaskModeName(report.mask_mode)
      << ", mask token " << report.mask_token << ")\n";
  out << std::left << std::setw(40) << "relation" << std::right
      << std::setw(10) << "instances" << std::setw(10) << "shortcut"
      << std::setw(9) << "ratio" << "\n";
  auto row = [&](const std::string& name, const RelationShortcuts& c) {
    out << std::left << std::setw(40) << name << std::right << std::setw(10)
        << c.n_instances << std::setw(10) << c.n_shortcut << std::setw(9)
        << Percent(c.ratio()) << "\n";
  };
  for (const auto& [relation, counts] : report.per_relation) {
    row(relation, counts);
  }
  row("(overall)", report.overall);
  return out.str();
}

std::string FormatTable(const DiversityReport& report) {
  std::ostringstream out;
  out << "instances                " << report.n_instances << "\n"
      << "distinct subject names   " << report.distinct_subject_names << "\n"
      << "distinct person names    " << report.distinct_person_names << " of "
      << report.n_person_mentions << " mentions\n"
      << "distinct org names       " << report.distinct_organization_names
      << " of " << report.n_organization_mentions << " mentions\n";
  if (!report.top_subjects.empty()) out << "most reused subjects:\n";
  for (const auto& [name, count] : report.top_subjects) {
    out << "  " << std::setw(6) << count << "  " << name << "\n";
  }
  return out.str();
}

std::string FormatTable(const ShortcutComparison& comparison) {
  std::ostringstream out;
  out << std::left << std::setw(40) << "relation" << std::right
      << std::setw(9) << "before" << std::setw(9) << "after" << std::setw(11)
      << "reduction" << "\n";
  auto row = [&](const std::string& name, const RatioDelta& d) {
    out << std::left << std::setw(40) << name << std::right << std::setw(9)
        << Percent(d.before) << std::setw(9) << Percent(d.after)
        << std::setw(11) << (d.relative ? Percent(*d.relative) : "n/a")
        << "\n";
  };
  for (const auto& [relation, delta] : comparison.per_relation) {
    row(relation, delta);
  }
  row("(overall)", comparison.overall);
  return out.str();
}

std::string FormatReviewList(const DisagreementReport& report,
                             std::span<const REInstance> instances) {
  std::unordered_map<std::string_view, const REInstance*> by_id;
  for (const REInstance& instance : instances) by_id[instance.id] = &instance;
  std::ostringstream out;
  out << "id\trole\tverdict\tannotated\tannotated_type\tner\tner_type\n";
  for (const DisagreementEntry& e : report.entries) {
    if (e.verdict == Verdict::kMatch) continue;
    auto it = by_id.find(e.instance_id);
    std::string annotated;
    std::string tagged;
    if (it != by_id.end()) {
      std::span<const std::string> tokens(it->second->tokens);
      annotated = JoinName(tokens.subspan(e.annotated_span.start,
                                          e.annotated_span.length()));
      if (e.best_match) {
        tagged = JoinName(tokens.subspan(e.best_match->span.start,
                                         e.best_match->span.length()));
      }
    }
    out << e.instance_id << '\t' << RoleName(e.role) << '\t'
        << VerdictName(e.verdict) << '\t' << annotated << '\t'
        << e.annotated_type << '\t' << tagged << '\t'
        << (e.best_match ? e.best_match->type : "") << '\n';
  }
  return out.str();
}

}  // namespace entre
