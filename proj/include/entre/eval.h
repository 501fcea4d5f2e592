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

// Micro-averaged relation extraction scoring with no_relation as the
// background class, following the official TACRED scorer:
//   guessed = #{pred != no_relation}, gold = #{gold != no_relation},
//   correct = #{pred == gold != no_relation},
//   precision = correct / guessed (1.0 when guessed == 0),
//   recall    = correct / gold    (1.0 when gold == 0),
//   f1 = 2pr / (p + r), or 0 when p + r == 0.

#ifndef ENTRE_EVAL_H_
#define ENTRE_EVAL_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "entre/instance.h"
#include "entre/oracle.h"
#include "json.hpp"

namespace entre {

inline constexpr int kReportSchemaVersion = 1;

struct Score {
  std::size_t n_correct = 0;
  std::size_t n_guessed = 0;
  std::size_t n_gold = 0;
  double precision = 1.0;
  double recall = 1.0;
  double f1 = 1.0;

  friend bool operator==(const Score&, const Score&) = default;
};

// Fills precision/recall/f1 from the three counts.
Score ScoreFromCounts(std::size_t correct, std::size_t guessed,
                      std::size_t gold);

struct EvalReport {
  Score micro;
  // Keyed by relation (never no_relation). A false positive counts against
  // the predicted relation, a false negative against the gold relation.
  std::map<std::string, Score> per_relation;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

struct DeltaReport {
  EvalReport before;
  EvalReport after;
  double f1_before = 0.0;
  double f1_after = 0.0;
  // (f1_before - f1_after) / f1_before; nullopt when f1_before == 0.
  std::optional<double> relative_drop;
};

// Throws Error(kValidation) on a length mismatch.
EvalReport MicroF1(std::span<const std::string> golds,
                   std::span<const std::string> preds);

// Aligns predictions to instances by id. Throws Error(kPipeline) when an
// instance has no prediction.
EvalReport ScorePredictions(std::span<const REInstance> instances,
                            std::span<const OraclePrediction> predictions);

// Queries the oracle on both corpora and compares. The corpora must contain
// the same ids (order may differ).
DeltaReport RobustnessEval(std::span<const REInstance> before,
                           std::span<const REInstance> after,
                           RelationOracle& oracle);

DeltaReport MakeDelta(EvalReport before, EvalReport after);

nlohmann::json ToJson(const Score& score);
nlohmann::json ToJson(const EvalReport& report);
nlohmann::json ToJson(const DeltaReport& report);

}  // namespace entre

#endif  // ENTRE_EVAL_H_
