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

// The adversarial entity-replacement loop.
//
// Each iteration asks the oracle for predictions on the current corpus,
// selects target instances, and resamples every eligible PERSON/ORGANIZATION
// entity of each target from the lexicon. The loop stops when the selection
// is empty or after `max_iterations` rounds.
//
//   FULL  selects instances whose prediction equals the gold relation
//         (no_relation included unless excluded by flag).
//   FAST  selects instances whose prediction is not no_relation; gold
//         labels are never consulted.

#ifndef ENTRE_LOOP_H_
#define ENTRE_LOOP_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "entre/instance.h"
#include "entre/lexicon.h"
#include "entre/oracle.h"
#include "entre/replace.h"
#include "json.hpp"

namespace entre {

enum class SelectionMode { kFull, kFast };

std::string_view SelectionModeName(SelectionMode mode);
SelectionMode ParseSelectionMode(std::string_view name);

struct LoopConfig {
  int max_iterations = 200;
  SelectionMode mode = SelectionMode::kFull;
  std::uint64_t seed = 0;
  // Replace every eligible instance once before the first oracle query.
  bool initial_pass = false;
  bool replace_subject = true;
  bool replace_object = true;
  // FULL mode only: skip instances where gold and prediction are both
  // no_relation.
  bool exclude_no_relation_matches = false;
  // Never hand out the same replacement name twice in a run.
  bool unique_names = false;
  // Re-query only instances changed since their last prediction. Exact for
  // deterministic oracles; turn off for stochastic ones.
  bool reuse_predictions = true;
  ReplaceOptions replace;
};

struct IterationTrace {
  int iteration = 0;  // 0 is the optional initial pass
  std::size_t selected = 0;
  std::size_t oracle_requests = 0;
  std::size_t oracle_batches = 0;
  std::vector<ReplacementRecord> replacements;
};

struct FrozenInstance {
  std::string id;
  int iteration = 0;
  std::string reason;
};

struct LoopTrace {
  std::vector<IterationTrace> iterations;
  // Per instance id: iteration of its last change, 0 when never changed.
  std::map<std::string, int> last_changed;
  std::vector<FrozenInstance> frozen;
  // True when the loop stopped because the selection became empty.
  bool converged = false;

  std::size_t total_oracle_requests() const;
  std::size_t total_oracle_batches() const;
  std::size_t total_replacements() const;
  // Number of oracle-query rounds executed (iterations >= 1).
  int rounds() const;
};

struct EntreResult {
  std::vector<REInstance> corpus;
  LoopTrace trace;
};

// Ids of the instances to replace, in corpus order. Predictions must align
// with instances by position and id; otherwise Error(kPipeline).
std::vector<std::string> SelectTargets(
    std::span<const REInstance> instances,
    std::span<const OraclePrediction> predictions, SelectionMode mode,
    bool exclude_no_relation_matches = false);

// Replaces every eligible role of `instance` with a fresh lexicon draw.
// Sub-seeds depend on (seed, id, iteration, role) only. `used` is consulted
// and extended when non-null (unique-name mode).
REInstance ReplaceEligibleEntities(
    const REInstance& instance, const EntityLexicon& lexicon,
    const LoopConfig& config, int iteration,
    std::vector<ReplacementRecord>& records,
    std::unordered_set<std::string>* used = nullptr);

EntreResult RunEntre(std::span<const REInstance> instances,
                     const EntityLexicon& lexicon, RelationOracle& oracle,
                     const LoopConfig& config);

// 1 - fast_calls / full_calls over oracle request counts.
// Throws Error(kPipeline) when the full trace made no calls.
double EstimateSavedCalls(const LoopTrace& full, const LoopTrace& fast);

nlohmann::json ToJson(const ReplacementRecord& record);
nlohmann::json ToJson(const LoopTrace& trace);
nlohmann::json ToJson(const LoopConfig& config);

}  // namespace entre

#endif  // ENTRE_LOOP_H_
