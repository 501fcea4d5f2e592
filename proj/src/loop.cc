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

#include "entre/loop.h"

#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "entre/error.h"
#include "entre/random.h"

namespace entre {

using nlohmann::json;

std::string_view SelectionModeName(SelectionMode mode) {
  return mode == SelectionMode::kFull ? "full" : "fast";
}

SelectionMode ParseSelectionMode(std::string_view name) {
  if (name == "full") return SelectionMode::kFull;
  if (name == "fast") return SelectionMode::kFast;
  throw Error(ErrorCode::kConfiguration,
              "unknown selection mode '" + std::string(name) + "'");
}

std::size_t LoopTrace::total_oracle_requests() const {
  std::size_t total = 0;
  for (const IterationTrace& it : iterations) total += it.oracle_requests;
  return total;
}

std::size_t LoopTrace::total_oracle_batches() const {
  std::size_t total = 0;
  for (const IterationTrace& it : iterations) total += it.oracle_batches;
  return total;
}

std::size_t LoopTrace::total_replacements() const {
  std::size_t total = 0;
  for (const IterationTrace& it : iterations) total += it.replacements.size();
  return total;
}

int LoopTrace::rounds() const {
  int n = 0;
  for (const IterationTrace& it : iterations) n += it.iteration >= 1;
  return n;
}

std::vector<std::string> SelectTargets(
    std::span<const REInstance> instances,
    std::span<const OraclePrediction> predictions, SelectionMode mode,
    bool exclude_no_relation_matches) {
  if (predictions.size() != instances.size()) {
    throw Error(ErrorCode::kPipeline,
                std::to_string(instances.size()) + " instances but " +
                    std::to_string(predictions.size()) + " predictions");
  }
  std::vector<std::string> targets;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const REInstance& instance = instances[i];
    const OraclePrediction& prediction = predictions[i];
    if (prediction.id != instance.id) {
      throw Error(ErrorCode::kPipeline,
                  "missing prediction for instance '" + instance.id + "'");
    }
    bool selected = false;
    if (mode == SelectionMode::kFast) {
      selected = prediction.label != kNoRelation;
    } else {
      selected = prediction.label == instance.relation &&
                 !(exclude_no_relation_matches &&
                   instance.relation == kNoRelation);
    }
    if (selected) targets.push_back(instance.id);
  }
  return targets;
}

REInstance ReplaceEligibleEntities(const REInstance& instance,
                                   const EntityLexicon& lexicon,
                                   const LoopConfig& config, int iteration,
                                   std::vector<ReplacementRecord>& records,
                                   std::unordered_set<std::string>* used) {
  REInstance current = instance;
  std::vector<ReplacementRecord> local;
  std::vector<std::string> claimed;
  auto release_claims = [&] {
    for (const std::string& name : claimed) used->erase(name);
  };
  for (Role role : {Role::kSubject, Role::kObject}) {
    const bool wanted = role == Role::kSubject ? config.replace_subject
                                               : config.replace_object;
    if (!wanted || !current.type(role).replaceable()) continue;
    Rng rng(DeriveSeed(config.seed, current.id, iteration,
                       static_cast<int>(role)));
    EntityName old_name = current.Name(role);
    EntityName new_name;
    try {
      new_name = used != nullptr
                     ? SampleUnusedName(lexicon, current.type(role), &old_name,
                                        *used, rng)
                     : SampleName(lexicon, current.type(role), &old_name, rng);
    } catch (const Error&) {
      // A failed instance keeps nothing, including names it already claimed.
      release_claims();
      throw;
    }
    if (used != nullptr && used->insert(JoinName(new_name)).second) {
      claimed.push_back(JoinName(new_name));
    }
    current = ReplaceEntity(current, role, new_name, config.replace);
    local.push_back({current.id, role, std::move(old_name),
                     std::move(new_name), iteration});
  }
  records.insert(records.end(), local.begin(), local.end());
  return current;
}

EntreResult RunEntre(std::span<const REInstance> instances,
                     const EntityLexicon& lexicon, RelationOracle& oracle,
                     const LoopConfig& config) {
  if (config.max_iterations < 1) {
    throw Error(ErrorCode::kConfiguration, "max_iterations must be >= 1");
  }
  EntreResult result;
  result.corpus.assign(instances.begin(), instances.end());
  std::unordered_set<std::string> ids;
  for (const REInstance& instance : result.corpus) {
    ValidateInstance(instance);
    if (!ids.insert(instance.id).second) {
      throw Error(ErrorCode::kValidation,
                  "duplicate instance id '" + instance.id + "'");
    }
    result.trace.last_changed[instance.id] = 0;
  }

  std::vector<REInstance>& corpus = result.corpus;
  LoopTrace& trace = result.trace;
  const std::size_t n = corpus.size();
  std::vector<bool> frozen(n, false);
  std::vector<bool> dirty(n, true);
  std::vector<std::optional<OraclePrediction>> cached(n);
  std::unordered_set<std::string> used_names;
  std::unordered_set<std::string>* used =
      config.unique_names ? &used_names : nullptr;

  // Replaces instance i in place; a sampling failure freezes it unchanged.
  auto replace_at = [&](std::size_t i, int iteration, IterationTrace& it) {
    if (frozen[i]) return;
    try {
      corpus[i] = ReplaceEligibleEntities(corpus[i], lexicon, config,
                                          iteration, it.replacements, used);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kSampling) throw;
      frozen[i] = true;
      trace.frozen.push_back({corpus[i].id, iteration, e.what()});
      return;
    }
    dirty[i] = true;
    trace.last_changed[corpus[i].id] = iteration;
  };

  if (config.initial_pass) {
    IterationTrace it;
    it.iteration = 0;
    it.selected = n;
    for (std::size_t i = 0; i < n; ++i) replace_at(i, 0, it);
    trace.iterations.push_back(std::move(it));
  }

  std::unordered_map<std::string, std::size_t> index_of;
  for (std::size_t i = 0; i < n; ++i) index_of[corpus[i].id] = i;

  for (int iteration = 1; iteration <= config.max_iterations; ++iteration) {
    IterationTrace it;
    it.iteration = iteration;

    std::vector<std::size_t> to_query;
    std::vector<OracleRequest> requests;
    for (std::size_t i = 0; i < n; ++i) {
      if (dirty[i] || !config.reuse_predictions) {
        to_query.push_back(i);
        requests.push_back(MakeRequest(corpus[i]));
      }
    }
    const OracleCounters before = oracle.counters();
    std::vector<OraclePrediction> fresh = oracle.PredictBatch(requests);
    it.oracle_requests = oracle.counters().requests - before.requests;
    it.oracle_batches = oracle.counters().batches - before.batches;
    for (std::size_t k = 0; k < to_query.size(); ++k) {
      cached[to_query[k]] = std::move(fresh[k]);
      dirty[to_query[k]] = false;
    }

    std::vector<OraclePrediction> predictions;
    predictions.reserve(n);
    for (std::size_t i = 0; i < n; ++i) predictions.push_back(*cached[i]);
    std::vector<std::string> targets = SelectTargets(
        corpus, predictions, config.mode, config.exclude_no_relation_matches);
    it.selected = targets.size();
    if (targets.empty()) {
      trace.converged = true;
      trace.iterations.push_back(std::move(it));
      break;
    }
    for (const std::string& id : targets) {
      replace_at(index_of.at(id), iteration, it);
    }
    trace.iterations.push_back(std::move(it));
  }
  return result;
}

double EstimateSavedCalls(const LoopTrace& full, const LoopTrace& fast) {
  const std::size_t full_calls = full.total_oracle_requests();
  if (full_calls == 0) {
    throw Error(ErrorCode::kPipeline,
                "cannot estimate savings: the full run made no oracle calls");
  }
  return 1.0 - static_cast<double>(fast.total_oracle_requests()) /
                   static_cast<double>(full_calls);
}

json ToJson(const ReplacementRecord& record) {
  return {{"instance_id", record.instance_id},
          {"role", RoleName(record.role)},
          {"old_name", record.old_name},
          {"new_name", record.new_name},
          {"iteration", record.iteration}};
}

json ToJson(const LoopTrace& trace) {
  json iterations = json::array();
  for (const IterationTrace& it : trace.iterations) {
    json replacements = json::array();
    for (const ReplacementRecord& r : it.replacements) {
      replacements.push_back(ToJson(r));
    }
    iterations.push_back({{"iteration", it.iteration},
                          {"selected", it.selected},
                          {"oracle_requests", it.oracle_requests},
                          {"oracle_batches", it.oracle_batches},
                          {"replacements", std::move(replacements)}});
  }
  json frozen = json::array();
  for (const FrozenInstance& f : trace.frozen) {
    frozen.push_back(
        {{"id", f.id}, {"iteration", f.iteration}, {"reason", f.reason}});
  }
  return {{"schema_version", 1},
          {"iterations", std::move(iterations)},
          {"last_changed", trace.last_changed},
          {"frozen", std::move(frozen)},
          {"converged", trace.converged},
          {"rounds", trace.rounds()},
          {"total_oracle_requests", trace.total_oracle_requests()},
          {"total_oracle_batches", trace.total_oracle_batches()},
          {"total_replacements", trace.total_replacements()}};
}

json ToJson(const LoopConfig& config) {
  return {{"max_iterations", config.max_iterations},
          {"mode", SelectionModeName(config.mode)},
          {"seed", config.seed},
          {"initial_pass", config.initial_pass},
          {"replace_subject", config.replace_subject},
          {"replace_object", config.replace_object},
          {"exclude_no_relation_matches", config.exclude_no_relation_matches},
          {"unique_names", config.unique_names},
          {"reuse_predictions", config.reuse_predictions},
          {"rewrite_mentions", config.replace.rewrite_mentions}};
}

}  // namespace entre
