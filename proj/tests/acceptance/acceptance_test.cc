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


// Acceptance checks. Prints one PASS / FAIL / SKIP line per criterion and
// exits non-zero when any criterion fails.

#include <stdlib.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "entre/audit.h"
#include "entre/cli.h"
#include "entre/corpus.h"
#include "entre/error.h"
#include "entre/eval.h"
#include "entre/lexicon.h"
#include "entre/loop.h"
#include "entre/manifest.h"
#include "entre/oracle.h"
#include "entre/replace.h"
#include "scorer_table.h"
#include "synthetic.h"

namespace entre {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

enum class Outcome { kPass, kFail, kSkip };

struct Result {
  Outcome outcome;
  std::string detail;
};

Result Pass(std::string detail) { return {Outcome::kPass, std::move(detail)}; }
Result Fail(std::string detail) { return {Outcome::kFail, std::move(detail)}; }
Result Skip(std::string detail) { return {Outcome::kSkip, std::move(detail)}; }

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Format(const char* fmt, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof(buffer), fmt, args...);
  return buffer;
}

REInstance Make(std::string id, std::vector<std::string> tokens, Span subj,
                std::string subj_type, Span obj, std::string obj_type,
                std::string relation) {
  REInstance instance;
  instance.id = std::move(id);
  instance.tokens = std::move(tokens);
  instance.subj = subj;
  instance.obj = obj;
  instance.subj_type = EntityType::FromString(subj_type);
  instance.obj_type = EntityType::FromString(obj_type);
  instance.relation = std::move(relation);
  return instance;
}

std::vector<std::string> WithoutSpan(const std::vector<std::string>& tokens,
                                     Span span) {
  std::vector<std::string> rest;
  for (int i = 0; i < static_cast<int>(tokens.size()); ++i) {
    if (i < span.start || i >= span.end) rest.push_back(tokens[i]);
  }
  return rest;
}

// 1. Span integrity of single replacements.
Result SpanIntegrity() {
  constexpr int kTrials = 10000;
  std::mt19937_64 rng(20260101);
  EntityLexicon lexicon = testing::SyntheticLexicon(1000, 1000);
  Rng name_rng(7);
  std::size_t violations = 0;
  std::size_t replaced = 0;
  std::size_t refused = 0;
  std::string first;
  auto violation = [&](const std::string& what, const REInstance& in) {
    if (violations++ == 0) first = what + " on " + in.id;
  };

  const auto start = Clock::now();
  for (int t = 0; t < kTrials; ++t) {
    REInstance in = testing::RandomInstance(rng, "p" + std::to_string(t));
    const Role role = rng() % 2 == 0 ? Role::kSubject : Role::kObject;
    const Role other = role == Role::kSubject ? Role::kObject : Role::kSubject;
    const EntityType& type = in.type(role);
    if (!type.replaceable()) {
      try {
        ReplaceEntity(in, role, testing::RandomName(rng));
        violation("type constraint", in);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kEligibility) violation("error code", in);
        ++refused;
      }
      continue;
    }
    const EntityName old_name = in.Name(role);
    const EntityName new_name = SampleName(lexicon, type, &old_name, name_rng);
    REInstance out = ReplaceEntity(in, role, new_name);
    ++replaced;

    if (!lexicon.IndexOf(type, new_name) || out.type(role) != type ||
        out.type(other) != in.type(other)) {
      violation("type constraint", in);
    }
    if (out.tokens.size() !=
        in.tokens.size() - in.span(role).length() + new_name.size()) {
      violation("token count", in);
    }
    if (WithoutSpan(in.tokens, in.span(role)) !=
        WithoutSpan(out.tokens, out.span(role))) {
      violation("context preservation", in);
    }
    if (CheckInstance(out).has_value() || out.Name(role) != new_name ||
        out.Name(other) != in.Name(other)) {
      violation("span pointing", in);
    }
    if (out.relation != in.relation || out.id != in.id) {
      violation("label preservation", in);
    }
  }
  const double elapsed = Seconds(start);
  std::string detail =
      Format("%d trials (%zu replaced, %zu refused), %zu violations, %.2fs",
             kTrials, replaced, refused, violations, elapsed);
  if (violations > 0) return Fail(detail + "; first: " + first);
  if (elapsed >= 5.0) return Fail(detail + " exceeds 5s");
  return Pass(detail);
}

// 2. Name invariance for a reader that ignores entity names.
Result NameInvariance() {
  auto corpus = testing::SyntheticCorpus({.n = 50}, 2026);
  ContextReaderStub reader(testing::Triggers());
  EntityLexicon lexicon = testing::SyntheticLexicon(5000, 5000);
  LoopConfig config;
  config.max_iterations = 200;
  config.mode = SelectionMode::kFull;
  config.seed = 11;
  EntreResult result = RunEntre(corpus, lexicon, reader, config);
  DeltaReport delta = RobustnessEval(corpus, result.corpus, reader);
  std::string detail = Format(
      "F1 %.6f -> %.6f over %d rounds, %zu replacements", delta.f1_before,
      delta.f1_after, result.trace.rounds(),
      result.trace.total_replacements());
  if (result.trace.total_replacements() == 0) {
    return Fail(detail + "; nothing was replaced");
  }
  if (delta.f1_before != delta.f1_after) return Fail(detail);
  if (delta.before.per_relation != delta.after.per_relation) {
    return Fail(detail + "; per-relation scores differ");
  }
  return Pass(detail + ", per-relation identical");
}

// Independent memorizer used to check the library one.
using Memory = std::map<std::pair<std::string, std::string>, std::string>;

Memory Memorize(std::span<const REInstance> corpus) {
  Memory memory;
  for (const REInstance& in : corpus) {
    memory[{JoinName(in.Name(Role::kSubject)),
            JoinName(in.Name(Role::kObject))}] = in.relation;
  }
  return memory;
}

std::string Recall(const Memory& memory, const REInstance& instance) {
  auto it = memory.find({JoinName(instance.Name(Role::kSubject)),
                         JoinName(instance.Name(Role::kObject))});
  return it == memory.end() ? std::string(kNoRelation) : it->second;
}

// 3. Memorizer collapse.
Result MemorizerCollapse() {
  std::vector<std::string> problems;

  // Hand simulation on three instances. Iteration 1 selects all three
  // (memorized pairs are predicted correctly) and swaps every PERSON or
  // ORGANIZATION entity: five swaps, since Lima is a CITY. Iteration 2
  // re-queries the three changed instances, every new pair is unknown, so
  // nothing is selected and the loop stops.
  std::vector<REInstance> three = {
      Make("a", {"Ann", "Lee", "married", "Bo", "Chen"}, {0, 2}, "PERSON",
           {3, 5}, "PERSON", "per:spouse"),
      Make("b", {"Acme", "Corp", "was", "founded", "by", "Di", "Fox"}, {0, 2},
           "ORGANIZATION", {5, 7}, "PERSON", "org:founded_by"),
      Make("c", {"Eve", "Gold", "died", "in", "Lima"}, {0, 2}, "PERSON",
           {4, 5}, "CITY", "per:city_of_death"),
  };
  const Memory memory = Memorize(three);
  auto stub = EntityMemorizerStub::FromCorpus(three);
  EntityLexicon small =
      EntityLexicon::FromLines({"P1 X", "P2 Y", "P3 Z"}, {"O1 Inc", "O2 Inc"});
  LoopConfig config;
  config.seed = 5;
  EntreResult hand = RunEntre(three, small, *stub, config);
  const LoopTrace& trace = hand.trace;
  if (trace.iterations.size() != 2 || !trace.converged ||
      trace.iterations[0].selected != 3 ||
      trace.iterations[0].replacements.size() != 5 ||
      trace.iterations[1].selected != 0 ||
      trace.iterations[1].oracle_requests != 3) {
    problems.push_back("3-instance trace differs from hand simulation");
  }
  for (const REInstance& in : hand.corpus) {
    if (Recall(memory, in) != kNoRelation) {
      problems.push_back("3-instance: " + in.id + " still memorized");
    }
  }
  if (hand.corpus[2].Name(Role::kObject) != EntityName{"Lima"}) {
    problems.push_back("3-instance: CITY object was replaced");
  }

  // Synthetic corpus without no_relation golds.
  auto corpus = testing::SyntheticCorpus(
      {.n = 50, .no_relation_fraction = 0.0}, 2027);
  auto memorizer = EntityMemorizerStub::FromCorpus(corpus);
  EntityLexicon lexicon = testing::SyntheticLexicon(5000, 5000);
  config = LoopConfig{};
  config.seed = 12;
  config.max_iterations = 1;
  EntreResult one = RunEntre(corpus, lexicon, *memorizer, config);
  DeltaReport delta = RobustnessEval(corpus, one.corpus, *memorizer);
  config.max_iterations = 200;
  EntreResult full = RunEntre(corpus, lexicon, *memorizer, config);

  const Memory trained = Memorize(corpus);
  std::vector<std::string> golds;
  std::vector<std::string> before;
  std::vector<std::string> after;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    golds.push_back(corpus[i].relation);
    before.push_back(Recall(trained, corpus[i]));
    after.push_back(Recall(trained, one.corpus[i]));
  }
  const double hand_before = MicroF1(golds, before).micro.f1;
  const double hand_after = MicroF1(golds, after).micro.f1;

  if (delta.f1_before != 1.0 || hand_before != 1.0) {
    problems.push_back("F1 before is not 1.0");
  }
  if (delta.f1_after != 0.0 || hand_after != 0.0) {
    problems.push_back("F1 after one iteration is not 0.0");
  }
  if (full.trace.rounds() != 2 || !full.trace.converged ||
      full.trace.iterations.back().selected != 0) {
    problems.push_back(Format("loop halted after %d rounds",
                              full.trace.rounds()));
  }
  std::string detail =
      Format("F1 %.1f -> %.1f, halted at iteration %d; 3-instance oracle %s",
             delta.f1_before, delta.f1_after, full.trace.rounds(),
             problems.empty() ? "agrees" : "disagrees");
  if (!problems.empty()) return Fail(detail + "; " + problems.front());
  return Pass(detail);
}

// Deterministic test oracle: a hash of everything the request carries.
std::string HashLabel(const OracleRequest& request,
                      const std::vector<std::string>& labels) {
  std::string key = request.subj_type + "|" + request.obj_type + "|" +
                    std::to_string(request.subj.start) + "," +
                    std::to_string(request.subj.end) + "," +
                    std::to_string(request.obj.start) + "," +
                    std::to_string(request.obj.end);
  for (const std::string& token : request.tokens) key += "|" + token;
  return labels[std::hash<std::string>{}(key) % labels.size()];
}

class HashOracle : public RelationOracle {
 public:
  explicit HashOracle(std::vector<std::string> labels)
      : RelationOracle(37), labels_(std::move(labels)) {}
  const std::vector<std::string>& labels() const override { return labels_; }
  std::string identity() const override { return "hash"; }

 protected:
  std::vector<OraclePrediction> PredictChunk(
      std::span<const OracleRequest> batch) override {
    std::vector<OraclePrediction> out;
    for (const OracleRequest& request : batch) {
      out.push_back({request.id, HashLabel(request, labels_), {}});
    }
    return out;
  }

 private:
  std::vector<std::string> labels_;
};

// 4. Shortcut counts against a one-request-at-a-time recount.
Result ShortcutExactness() {
  const std::vector<std::string> labels = {"no_relation", "per:spouse",
                                           "org:founded_by"};
  std::mt19937_64 rng(4040);
  std::vector<REInstance> instances;
  for (int i = 0; i < 1000; ++i) {
    REInstance in = testing::RandomInstance(rng, "s" + std::to_string(i));
    in.relation = labels[rng() % labels.size()];
    instances.push_back(std::move(in));
  }
  HashOracle oracle(labels);
  std::size_t total = 0;
  for (ContextMaskMode mode :
       {ContextMaskMode::kPreservePositions, ContextMaskMode::kEntitiesOnly}) {
    ShortcutReport report = ShortcutAnalysis(instances, oracle, mode, "[M]");

    std::map<std::string, std::pair<std::size_t, std::size_t>> recount;
    for (const REInstance& in : instances) {
      OracleRequest request;
      request.id = in.id;
      request.subj_type = in.subj_type.name();
      request.obj_type = in.obj_type.name();
      if (mode == ContextMaskMode::kPreservePositions) {
        for (int k = 0; k < static_cast<int>(in.tokens.size()); ++k) {
          const bool entity = (k >= in.subj.start && k < in.subj.end) ||
                              (k >= in.obj.start && k < in.obj.end);
          request.tokens.push_back(entity ? in.tokens[k] : "[M]");
        }
        request.subj = in.subj;
        request.obj = in.obj;
      } else {
        for (int k = in.subj.start; k < in.subj.end; ++k) {
          request.tokens.push_back(in.tokens[k]);
        }
        request.tokens.push_back("[SEP]");
        for (int k = in.obj.start; k < in.obj.end; ++k) {
          request.tokens.push_back(in.tokens[k]);
        }
        const int ls = in.subj.length();
        request.subj = {0, ls};
        request.obj = {ls + 1, ls + 1 + in.obj.length()};
      }
      auto& [n, shortcuts] = recount[in.relation];
      ++n;
      shortcuts += HashLabel(request, labels) == in.relation ? 1 : 0;
    }

    std::size_t n_all = 0;
    std::size_t s_all = 0;
    if (recount.size() != report.per_relation.size()) {
      return Fail("relation sets differ");
    }
    for (const auto& [relation, counts] : recount) {
      auto it = report.per_relation.find(relation);
      if (it == report.per_relation.end() ||
          it->second.n_instances != counts.first ||
          it->second.n_shortcut != counts.second) {
        return Fail("counts differ for " + relation + " in " +
                    std::string(ContextMaskModeName(mode)));
      }
      n_all += counts.first;
      s_all += counts.second;
    }
    if (report.overall.n_instances != n_all ||
        report.overall.n_shortcut != s_all) {
      return Fail("overall counts differ");
    }
    total += s_all;
  }
  return Pass(Format("1000 instances, 2 mask modes, %zu shortcuts, counts equal",
                     total));
}

// 5. Scorer against the hand table.
Result ScorerConformance() {
  std::size_t n = 0;
  for (const testing::ScorerCase& c : testing::ScorerTable()) {
    ++n;
    Score s = MicroF1(c.golds, c.preds).micro;
    auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12; };
    if (s.n_correct != c.correct || s.n_guessed != c.guessed ||
        s.n_gold != c.gold || !close(s.precision, c.precision.value()) ||
        !close(s.recall, c.recall.value()) || !close(s.f1, c.f1.value())) {
      return Fail(std::string("case '") + c.name + "'");
    }
  }
  return Pass(Format("%zu cases within 1e-12", n));
}

struct CliRun {
  int code;
  std::string err;
};

CliRun Cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  int code = RunCli(args, out, err);
  return {code, err.str()};
}

std::string Stub(const std::string& kind, const fs::path& corpus) {
  return std::string("'") + ENTRE_STUB_SERVER + "' --kind " + kind +
         " --corpus '" + corpus.string() + "'";
}

// 6. Same seed, same bytes.
Result Determinism() {
  fs::path dir = testing::FreshTempDir("acceptance_determinism");
  WriteCorpus(testing::SyntheticCorpus({.n = 80}, 606), dir / "corpus.json");
  const std::string lexicons = std::string(ENTRE_DATA_DIR) + "/lexicon/";
  auto run = [&](const std::string& name) {
    return Cli({"entre", "run", "--corpus", (dir / "corpus.json").string(),
                "--person-lexicon", lexicons + "person.txt", "--org-lexicon",
                lexicons + "organization.txt", "--oracle",
                Stub("memorizer", dir / "corpus.json"), "--seed", "42",
                "--initial-pass", "--out", (dir / name / "corpus.json").string(),
                "--trace", (dir / name / "trace.json").string()});
  };
  for (const char* name : {"a", "b"}) {
    CliRun r = run(name);
    if (r.code != kExitOk) return Fail(Format("run exited %d: ", r.code) + r.err);
  }
  for (const char* file : {"corpus.json", "trace.json"}) {
    if (ReadFile(dir / "a" / file) != ReadFile(dir / "b" / file)) {
      return Fail(std::string(file) + " differs");
    }
  }
  if (ReadFile(dir / "a/corpus.json") == ReadFile(dir / "corpus.json")) {
    return Fail("output equals input");
  }
  return Pass("corpus " + Sha256File(dir / "a/corpus.json").substr(0, 12) +
              ", trace " + Sha256File(dir / "a/trace.json").substr(0, 12) +
              " identical across runs");
}

// 7. Distinct subject names after replacement.
//
// With n replaced subjects drawn uniformly from a pool of N >= 100 n names,
// the number of colliding pairs is approximately Poisson with mean
// n^2 / (2N) <= 500^2 / 100000 = 2.5 per type. Falling below 0.95 n distinct
// names takes more than 25 collisions; P(Poisson(2.5) > 25) < 1e-17, so
// 100 trials fail with probability below 1e-15.
Result DiversityBound() {
  constexpr int kTrials = 100;
  constexpr std::size_t kCorpus = 500;
  EntityLexicon lexicon =
      testing::SyntheticLexicon(100 * kCorpus, 100 * kCorpus);
  double worst = 1.0;
  std::size_t replaced_total = 0;
  for (int t = 0; t < kTrials; ++t) {
    auto corpus = testing::SyntheticCorpus({.n = kCorpus}, 7000 + t);
    auto memorizer = EntityMemorizerStub::FromCorpus(corpus);
    LoopConfig config;
    config.seed = 9000 + t;
    config.max_iterations = 1;
    EntreResult result = RunEntre(corpus, lexicon, *memorizer, config);
    std::set<std::string> replaced_ids;
    for (const IterationTrace& it : result.trace.iterations) {
      for (const ReplacementRecord& r : it.replacements) {
        if (r.role == Role::kSubject) replaced_ids.insert(r.instance_id);
      }
    }
    std::set<std::string> names;
    for (const REInstance& in : result.corpus) {
      if (replaced_ids.contains(in.id)) {
        names.insert(JoinName(in.Name(Role::kSubject)));
      }
    }
    if (replaced_ids.size() < kCorpus / 2) {
      return Fail(Format("trial %d replaced only %zu subjects", t,
                         replaced_ids.size()));
    }
    replaced_total += replaced_ids.size();
    const double ratio =
        static_cast<double>(names.size()) / replaced_ids.size();
    worst = std::min(worst, ratio);
    if (names.size() * 100 < replaced_ids.size() * 95) {
      return Fail(Format("trial %d: %zu distinct of %zu replaced", t,
                         names.size(), replaced_ids.size()));
    }
  }
  return Pass(Format("%d trials, %zu replaced subjects, worst distinct "
                     "ratio %.4f >= 0.95",
                     kTrials, replaced_total, worst));
}

// 8. Statistics of a locally supplied TACRED test split.
Result TacredFixture() {
  fs::path path;
  if (const char* env = std::getenv("ENTRE_TACRED_TEST"); env && *env) {
    path = env;
  } else {
    path = fs::path(ENTRE_DATA_DIR) / "tacred" / "test.json";
  }
  if (!fs::exists(path)) {
    return Skip("no TACRED test file at " + path.string() +
                " (set ENTRE_TACRED_TEST to enable)");
  }
  LoadResult loaded = LoadCorpus(path);
  CorpusStats stats = ComputeCorpusStats(loaded.instances);
  DiversityReport diversity = DiversityStats(loaded.instances);
  std::string detail =
      Format("%zu sentences, %zu tokens, %zu distinct subjects",
             stats.n_sentences, stats.n_tokens,
             diversity.distinct_subject_names);
  if (stats.n_sentences != 15509 || stats.n_tokens != 539306 ||
      diversity.distinct_subject_names != 420) {
    return Fail(detail + " (expected 15509, 539306, 420)");
  }
  return Pass(detail);
}

// Checks that a manifest names existing files with matching digests.
std::string ManifestProblem(const fs::path& path, const std::string& command) {
  if (!fs::exists(path)) return path.string() + " missing";
  json m = json::parse(ReadFile(path));
  for (const char* key : {"schema_version", "tool", "tool_version", "command",
                          "config", "seed", "inputs", "outputs", "oracle",
                          "started_at", "finished_at"}) {
    if (!m.contains(key)) return path.string() + " lacks " + key;
  }
  if (m["command"] != command) return path.string() + " has wrong command";
  if (m["outputs"].empty()) return path.string() + " lists no outputs";
  for (const char* group : {"inputs", "outputs"}) {
    for (const auto& [file, digest] : m[group].items()) {
      if (Sha256File(file) != digest.get<std::string>()) {
        return path.string() + ": digest mismatch for " + file;
      }
    }
  }
  return "";
}

// 9. End-to-end pipeline through the command line.
Result EndToEnd() {
  fs::path dir = testing::FreshTempDir("acceptance_e2e");
  const fs::path corpus = dir / "corpus.json";
  WriteCorpus(testing::SyntheticCorpus({.n = 50}, 909), corpus);
  const std::string lexicons = std::string(ENTRE_DATA_DIR) + "/lexicon/";
  const std::string memorizer = Stub("memorizer", corpus);

  const auto start = Clock::now();
  struct Step {
    std::string command;
    std::vector<std::string> args;
    fs::path manifest;
  };
  std::vector<Step> steps = {
      {"audit annotations",
       {"audit", "annotations", "--corpus", corpus.string(), "--ner-oracle",
        Stub("reference-ner", corpus), "--out-dir", (dir / "ann").string()},
       dir / "ann/manifest.json"},
      {"audit eligibility",
       {"audit", "eligibility", "--corpus", (dir / "ann/clean.json").string(),
        "--out-dir", (dir / "elig").string()},
       dir / "elig/manifest.json"},
      {"entre run",
       {"entre", "run", "--corpus", (dir / "elig/eligible.json").string(),
        "--person-lexicon", lexicons + "person.txt", "--org-lexicon",
        lexicons + "organization.txt", "--oracle", memorizer, "--mode", "fast",
        "--seed", "3", "--out", (dir / "run/corpus.json").string(), "--trace",
        (dir / "run/trace.json").string()},
       dir / "run/manifest.json"},
      {"eval robustness",
       {"eval", "robustness", "--before", (dir / "elig/eligible.json").string(),
        "--after", (dir / "run/corpus.json").string(), "--oracle", memorizer,
        "--out", (dir / "eval/robustness.json").string()},
       dir / "eval/manifest.json"},
  };
  for (const Step& step : steps) {
    CliRun r = Cli(step.args);
    if (r.code != kExitOk) {
      return Fail(step.command + Format(" exited %d: ", r.code) + r.err);
    }
    if (std::string problem = ManifestProblem(step.manifest, step.command);
        !problem.empty()) {
      return Fail(problem);
    }
  }
  const double elapsed = Seconds(start);
  json delta = json::parse(ReadFile(dir / "eval/robustness.json"));
  const std::size_t eligible =
      LoadCorpus(dir / "elig/eligible.json").instances.size();
  std::string detail = Format(
      "%zu eligible of 50, F1 %.3f -> %.3f, %.2fs, manifests valid", eligible,
      delta["f1_before"].get<double>(), delta["f1_after"].get<double>(),
      elapsed);
  if (elapsed >= 10.0) return Fail(detail + "; exceeds 10s");
  if (delta["f1_after"].get<double>() >= delta["f1_before"].get<double>()) {
    return Fail(detail + "; memorizer F1 did not drop");
  }
  return Pass(detail);
}

}  // namespace
}  // namespace entre

int main() {
  using entre::Outcome;
  const std::vector<std::pair<const char*, std::function<entre::Result()>>>
      criteria = {
          {"span integrity", entre::SpanIntegrity},
          {"name invariance", entre::NameInvariance},
          {"memorizer collapse", entre::MemorizerCollapse},
          {"shortcut exactness", entre::ShortcutExactness},
          {"scorer conformance", entre::ScorerConformance},
          {"determinism", entre::Determinism},
          {"diversity bound", entre::DiversityBound},
          {"tacred fixture", entre::TacredFixture},
          {"end-to-end smoke", entre::EndToEnd},
      };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    entre::Result result;
    try {
      result = check();
    } catch (const std::exception& e) {
      result = entre::Fail(std::string("exception: ") + e.what());
    }
    const char* tag = result.outcome == Outcome::kPass   ? "PASS"
                      : result.outcome == Outcome::kSkip ? "SKIP"
                                                         : "FAIL";
    failures += result.outcome == Outcome::kFail;
    std::printf("[%s] %s: %s\n", tag, name, result.detail.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
