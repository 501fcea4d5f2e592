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

#include "entre/eval.h"

#include <unordered_map>

#include "entre/error.h"

namespace entre {

using nlohmann::json;

Score ScoreFromCounts(std::size_t correct, std::size_t guessed,
                      std::size_t gold) {
  Score s;
  s.n_correct = correct;
  s.n_guessed = guessed;
  s.n_gold = gold;
  s.precision = guessed == 0 ? 1.0 : static_cast<double>(correct) / guessed;
  s.recall = gold == 0 ? 1.0 : static_cast<double>(correct) / gold;
  const double sum = s.precision + s.recall;
  s.f1 = sum > 0.0 ? 2.0 * s.precision * s.recall / sum : 0.0;
  return s;
}

EvalReport MicroF1(std::span<const std::string> golds,
                   std::span<const std::string> preds) {
  if (golds.size() != preds.size()) {
    throw Error(ErrorCode::kValidation,
                "scoring " + std::to_string(golds.size()) + " golds against " +
                    std::to_string(preds.size()) + " predictions");
  }
  struct Counts {
    std::size_t correct = 0, guessed = 0, gold = 0;
  };
  Counts total;
  std::map<std::string, Counts> by_relation;
  for (std::size_t i = 0; i < golds.size(); ++i) {
    const std::string& gold = golds[i];
    const std::string& pred = preds[i];
    if (pred != kNoRelation) {
      ++total.guessed;
      ++by_relation[pred].guessed;
    }
    if (gold != kNoRelation) {
      ++total.gold;
      ++by_relation[gold].gold;
    }
    if (gold != kNoRelation && pred == gold) {
      ++total.correct;
      ++by_relation[gold].correct;
    }
  }
  EvalReport report;
  report.micro = ScoreFromCounts(total.correct, total.guessed, total.gold);
  for (const auto& [relation, c] : by_relation) {
    report.per_relation[relation] =
        ScoreFromCounts(c.correct, c.guessed, c.gold);
  }
  return report;
}

EvalReport ScorePredictions(std::span<const REInstance> instances,
                            std::span<const OraclePrediction> predictions) {
  std::unordered_map<std::string_view, const OraclePrediction*> by_id;
  for (const OraclePrediction& p : predictions) by_id[p.id] = &p;
  std::vector<std::string> golds;
  std::vector<std::string> preds;
  golds.reserve(instances.size());
  preds.reserve(instances.size());
  for (const REInstance& instance : instances) {
    auto it = by_id.find(instance.id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::kPipeline,
                  "no prediction for instance '" + instance.id + "'");
    }
    golds.push_back(instance.relation);
    preds.push_back(it->second->label);
  }
  return MicroF1(golds, preds);
}

DeltaReport MakeDelta(EvalReport before, EvalReport after) {
  DeltaReport delta;
  delta.f1_before = before.micro.f1;
  delta.f1_after = after.micro.f1;
  if (delta.f1_before != 0.0) {
    delta.relative_drop = (delta.f1_before - delta.f1_after) / delta.f1_before;
  }
  delta.before = std::move(before);
  delta.after = std::move(after);
  return delta;
}

DeltaReport RobustnessEval(std::span<const REInstance> before,
                           std::span<const REInstance> after,
                           RelationOracle& oracle) {
  std::unordered_map<std::string_view, const REInstance*> after_by_id;
  for (const REInstance& instance : after) after_by_id[instance.id] = &instance;
  if (after_by_id.size() != before.size() || after.size() != before.size()) {
    throw Error(ErrorCode::kPipeline,
                "corpora are not id-aligned: " + std::to_string(before.size()) +
                    " vs " + std::to_string(after.size()) + " instances");
  }
  std::vector<REInstance> aligned;
  aligned.reserve(before.size());
  for (const REInstance& instance : before) {
    auto it = after_by_id.find(instance.id);
    if (it == after_by_id.end()) {
      throw Error(ErrorCode::kPipeline, "corpora are not id-aligned: '" +
                                            instance.id +
                                            "' missing after replacement");
    }
    aligned.push_back(*it->second);
  }
  EvalReport report_before =
      ScorePredictions(before, PredictInstances(oracle, before));
  EvalReport report_after =
      ScorePredictions(aligned, PredictInstances(oracle, aligned));
  return MakeDelta(std::move(report_before), std::move(report_after));
}

json ToJson(const Score& score) {
  return {{"n_correct", score.n_correct}, {"n_guessed", score.n_guessed},
          {"n_gold", score.n_gold},       {"precision", score.precision},
          {"recall", score.recall},       {"f1", score.f1}};
}

json ToJson(const EvalReport& report) {
  json per_relation = json::object();
  for (const auto& [relation, score] : report.per_relation) {
    per_relation[relation] = ToJson(score);
  }
  json out = ToJson(report.micro);
  out["kind"] = "eval";
  out["schema_version"] = kReportSchemaVersion;
  out["per_relation"] = std::move(per_relation);
  return out;
}

json ToJson(const DeltaReport& report) {
  return {{"kind", "robustness"},
          {"schema_version", kReportSchemaVersion},
          {"f1_before", report.f1_before},
          {"f1_after", report.f1_after},
          {"relative_drop", report.relative_drop ? json(*report.relative_drop)
                                                 : json(nullptr)},
          {"before", ToJson(report.before)},
          {"after", ToJson(report.after)}};
}

}  // namespace entre
