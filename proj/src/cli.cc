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

#include "entre/cli.h"

#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "entre/audit.h"
#include "entre/corpus.h"
#include "entre/eval.h"
#include "entre/lexicon.h"
#include "entre/loop.h"
#include "entre/manifest.h"
#include "entre/replace.h"
#include "entre/wire.h"

namespace entre {

using nlohmann::json;
namespace fs = std::filesystem;

int ExitCodeFor(ErrorCode code) {
  return code == ErrorCode::kOracle ? kExitOracle : kExitValidation;
}

std::vector<std::string> ExpandConfigFile(
    const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::optional<std::string> config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (!config_path) return rest;

  auto given = [&](const std::string& flag) {
    for (const std::string& arg : rest) {
      if (arg == flag || arg.rfind(flag + "=", 0) == 0) return true;
    }
    return false;
  };
  std::istringstream in(ReadFile(*config_path));
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::vector<std::string> blank = SplitWhitespace(line);
    if (blank.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kConfiguration,
                  *config_path + ":" + std::to_string(line_number) +
                      ": expected 'key = value'");
    }
    std::vector<std::string> key = SplitWhitespace(line.substr(0, eq));
    std::string value = line.substr(eq + 1);
    value.erase(0, value.find_first_not_of(" \t\r"));
    value.erase(value.find_last_not_of(" \t\r") + 1);
    if (key.size() != 1) {
      throw Error(ErrorCode::kConfiguration,
                  *config_path + ":" + std::to_string(line_number) +
                      ": malformed key");
    }
    const std::string flag = "--" + key[0];
    if (given(flag)) continue;
    if (value == "true") {
      rest.push_back(flag);
    } else if (value != "false") {
      rest.push_back(flag);
      rest.push_back(value);
    }
  }
  return rest;
}

namespace {

struct OracleFlags {
  std::string endpoint;
  std::size_t batch_size = kDefaultBatchSize;
  std::size_t workers = 1;
};

// Per-invocation state: option storage plus the output streams.
class Cli {
 public:
  Cli(std::ostream& out, std::ostream& err) : stdout_(out), stderr_(err) {
    auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(stderr_);
    log_ = std::make_shared<spdlog::logger>("entre", sink);
    log_->set_pattern("[entre %l] %v");
  }

  int Run(const std::vector<std::string>& raw_args);

 private:
  using Handler = std::function<int()>;

  CLI::App* Leaf(CLI::App* parent, const std::string& name,
                 const std::string& description, Handler handler) {
    CLI::App* sub = parent->add_subcommand(name, description);
    handlers_[sub] = std::move(handler);
    return sub;
  }
  void AddOracleFlags(CLI::App* sub, OracleFlags& flags, const char* name,
                      const char* help) {
    sub->add_option(name, flags.endpoint, help);
    sub->add_option("--batch-size", flags.batch_size, "requests per batch")
        ->check(CLI::PositiveNumber);
    sub->add_option("--workers", flags.workers,
                    "concurrent oracle connections")
        ->check(CLI::PositiveNumber);
  }

  void Build(CLI::App& app);

  LoadResult Load(const std::string& path);
  std::unique_ptr<RelationOracle> OpenOracle(const OracleFlags& flags);
  std::unique_ptr<NerOracle> OpenNerOracle(const OracleFlags& flags);
  RunManifest StartManifest();
  void FinishManifest(RunManifest& manifest, const fs::path& output_dir);
  void Emit(const json& report, const std::string& out_path,
            const std::string& table);

  int CorpusStats();
  int CorpusValidate();
  int CorpusMask();
  int CorpusCounterfactual();
  int LexiconStats();
  int LexiconSample();
  int AuditAnnotations();
  int AuditEligibility();
  int AuditShortcuts();
  int AuditDiversity();
  int AuditCompare();
  int EntreRun();
  int EvalScore();
  int EvalRobustness();

  std::ostream& stdout_;
  std::ostream& stderr_;
  std::shared_ptr<spdlog::logger> log_;
  std::map<CLI::App*, Handler> handlers_;
  CLI::App* selected_ = nullptr;
  std::string command_;

  // Shared option storage. Each subcommand binds the fields it uses.
  std::string corpus_;
  std::string out_;
  std::string out_dir_;
  std::string manifest_;
  bool lenient_ = false;
  std::string mask_mode_ = "no-name-with-type";
  std::string context_mode_ = "preserve-positions";
  std::string mask_token_{kDefaultMaskToken};
  std::string person_lexicon_;
  std::string org_lexicon_;
  std::string entity_type_ = "PERSON";
  std::size_t count_ = 10;
  std::uint64_t seed_ = 0;
  OracleFlags oracle_;
  OracleFlags ner_oracle_;
  double min_jaccard_ = 1.0;
  std::size_t top_k_ = 10;
  std::string before_;
  std::string after_;
  std::string mode_ = "full";
  int max_iter_ = 200;
  std::string trace_;
  bool initial_pass_ = false;
  bool exclude_no_relation_ = false;
  bool unique_names_ = false;
  bool no_reuse_predictions_ = false;
  bool rewrite_mentions_ = false;
  std::vector<std::string> roles_ = {"subject", "object"};
  std::string predictions_;
  std::optional<double> f1_floor_;
};

void Cli::Build(CLI::App& app) {
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);

  auto add_corpus = [&](CLI::App* sub) {
    sub->add_option("--corpus", corpus_, "corpus JSON file")->required();
    sub->add_flag("--lenient", lenient_,
                  "skip invalid records instead of failing");
  };
  auto add_manifest = [&](CLI::App* sub) {
    sub->add_option("--manifest", manifest_,
                    "manifest path (default: manifest.json beside outputs)");
  };
  auto add_lexicon = [&](CLI::App* sub) {
    sub->add_option("--person-lexicon", person_lexicon_,
                    "newline-delimited PERSON names")
        ->required();
    sub->add_option("--org-lexicon", org_lexicon_,
                    "newline-delimited ORGANIZATION names")
        ->required();
  };

  CLI::App* corpus = app.add_subcommand("corpus", "corpus inspection and transforms");
  corpus->require_subcommand(1);
  {
    CLI::App* sub = Leaf(corpus, "stats", "sentence, token and label counts",
                         [this] { return CorpusStats(); });
    add_corpus(sub);
    sub->add_option("--out", out_, "write JSON here instead of stdout");
    add_manifest(sub);

    sub = Leaf(corpus, "validate", "check invariants and rewrite normalized",
               [this] { return CorpusValidate(); });
    add_corpus(sub);
    sub->add_option("--out", out_, "normalized corpus output");
    add_manifest(sub);

    sub = Leaf(corpus, "mask", "entity-mask baseline transform",
               [this] { return CorpusMask(); });
    add_corpus(sub);
    sub->add_option("--out", out_, "output corpus")->required();
    sub->add_option("--mode", mask_mode_, "entity mask mode")
        ->check(CLI::IsMember({"no-name-no-type", "no-name-with-type",
                               "with-name-with-type"}));
    add_manifest(sub);

    sub = Leaf(corpus, "counterfactual",
               "mask every context token, keep entity mentions",
               [this] { return CorpusCounterfactual(); });
    add_corpus(sub);
    sub->add_option("--out", out_, "output corpus")->required();
    sub->add_option("--mask-mode", context_mode_, "context mask mode")
        ->check(CLI::IsMember({"preserve-positions", "entities-only"}));
    sub->add_option("--mask-token", mask_token_, "mask token");
    add_manifest(sub);
  }

  CLI::App* lexicon = app.add_subcommand("lexicon", "replacement name pools");
  lexicon->require_subcommand(1);
  {
    CLI::App* sub = Leaf(lexicon, "stats", "pool sizes after deduplication",
                         [this] { return LexiconStats(); });
    add_lexicon(sub);

    sub = Leaf(lexicon, "sample", "draw names from a pool",
               [this] { return LexiconSample(); });
    add_lexicon(sub);
    sub->add_option("--type", entity_type_, "PERSON or ORGANIZATION")
        ->check(CLI::IsMember({"PERSON", "ORGANIZATION"}));
    sub->add_option("--count", count_, "number of draws");
    sub->add_option("--seed", seed_, "random seed");
  }

  CLI::App* audit = app.add_subcommand("audit", "corpus audits");
  audit->require_subcommand(1);
  {
    CLI::App* sub = Leaf(audit, "annotations",
                         "flag entities the NER tagger disagrees with",
                         [this] { return AuditAnnotations(); });
    add_corpus(sub);
    AddOracleFlags(sub, ner_oracle_, "--ner-oracle",
                   "NER oracle command or http:// URL");
    sub->add_option("--out-dir", out_dir_, "output directory")->required();
    sub->add_option("--min-jaccard", min_jaccard_,
                    "accept overlapping spans at this Jaccard (1 = exact)")
        ->check(CLI::Range(0.0, 1.0));
    add_manifest(sub);

    sub = Leaf(audit, "eligibility", "split off instances without "
               "PERSON/ORGANIZATION entities",
               [this] { return AuditEligibility(); });
    add_corpus(sub);
    sub->add_option("--out-dir", out_dir_, "output directory")->required();
    add_manifest(sub);

    sub = Leaf(audit, "shortcuts", "counterfactual entity-name shortcut ratios",
               [this] { return AuditShortcuts(); });
    add_corpus(sub);
    AddOracleFlags(sub, oracle_, "--oracle",
                   "relation oracle command or http:// URL");
    sub->add_option("--out", out_, "report JSON (table goes to stdout)");
    sub->add_option("--mask-mode", context_mode_, "context mask mode")
        ->check(CLI::IsMember({"preserve-positions", "entities-only"}));
    sub->add_option("--mask-token", mask_token_, "mask token");
    add_manifest(sub);

    sub = Leaf(audit, "diversity", "distinct entity-name counts",
               [this] { return AuditDiversity(); });
    add_corpus(sub);
    sub->add_option("--out", out_, "report JSON (table goes to stdout)");
    sub->add_option("--top-k", top_k_, "most reused subjects to list");
    add_manifest(sub);

    sub = Leaf(audit, "compare", "compare two shortcut or diversity reports",
               [this] { return AuditCompare(); });
    sub->add_option("--before", before_, "report before replacement")
        ->required();
    sub->add_option("--after", after_, "report after replacement")->required();
    sub->add_option("--out", out_, "comparison JSON (table goes to stdout)");
    add_manifest(sub);
  }

  CLI::App* entre = app.add_subcommand("entre", "adversarial entity replacement");
  entre->require_subcommand(1);
  {
    CLI::App* sub = Leaf(entre, "run", "run the replacement loop",
                         [this] { return EntreRun(); });
    add_corpus(sub);
    add_lexicon(sub);
    AddOracleFlags(sub, oracle_, "--oracle",
                   "relation oracle command or http:// URL");
    sub->add_option("--out", out_, "replaced corpus")->required();
    sub->add_option("--trace", trace_, "trace JSON");
    sub->add_option("--mode", mode_, "target selection")
        ->check(CLI::IsMember({"full", "fast"}));
    sub->add_option("--max-iter", max_iter_, "maximum iterations")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed_, "random seed");
    sub->add_option("--roles", roles_, "roles to replace")
        ->delimiter(',')
        ->check(CLI::IsMember({"subject", "object"}));
    sub->add_flag("--initial-pass", initial_pass_,
                  "replace every instance once before the first query");
    sub->add_flag("--exclude-no-relation", exclude_no_relation_,
                  "full mode: skip no_relation gold/prediction matches");
    sub->add_flag("--unique-names", unique_names_,
                  "never reuse a replacement name within the run");
    sub->add_flag("--no-reuse-predictions", no_reuse_predictions_,
                  "re-query unchanged instances every iteration");
    sub->add_flag("--rewrite-mentions", rewrite_mentions_,
                  "also rewrite verbatim copies of the old name");
    add_manifest(sub);
  }

  CLI::App* eval = app.add_subcommand("eval", "micro-F1 scoring");
  eval->require_subcommand(1);
  {
    CLI::App* sub = Leaf(eval, "score", "score predictions against a corpus",
                         [this] { return EvalScore(); });
    add_corpus(sub);
    sub->add_option("--predictions", predictions_,
                    "JSON lines of {\"id\", \"label\"} (instead of --oracle)");
    AddOracleFlags(sub, oracle_, "--oracle",
                   "relation oracle command or http:// URL");
    sub->add_option("--out", out_, "report JSON (default stdout)");
    sub->add_option("--f1-floor", f1_floor_,
                    "exit 3 when micro-F1 falls below this value");
    add_manifest(sub);

    sub = Leaf(eval, "robustness", "F1 before and after replacement",
               [this] { return EvalRobustness(); });
    sub->add_option("--before", before_, "original corpus")->required();
    sub->add_option("--after", after_, "replaced corpus")->required();
    sub->add_flag("--lenient", lenient_,
                  "skip invalid records instead of failing");
    AddOracleFlags(sub, oracle_, "--oracle",
                   "relation oracle command or http:// URL");
    sub->add_option("--out", out_, "report JSON (default stdout)");
    sub->add_option("--f1-floor", f1_floor_,
                    "exit 3 when F1 after replacement falls below this value");
    add_manifest(sub);
  }
}

// Every option of the selected subcommand with its resolved value.
json Snapshot(const CLI::App& sub) {
  json config = json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->get_lnames().empty() || opt->get_lnames()[0] == "help") continue;
    const std::string& name = opt->get_lnames()[0];
    if (opt->get_expected_min() == 0) {
      config[name] = opt->count() > 0;
    } else if (opt->count() > 0) {
      const std::vector<std::string>& results = opt->results();
      config[name] = results.size() == 1 && opt->get_expected_max() <= 1
                         ? json(results[0])
                         : json(results);
    } else {
      std::string value = opt->get_default_str();
      config[name] = value.empty() ? json(nullptr) : json(value);
    }
  }
  return config;
}

int Cli::Run(const std::vector<std::string>& raw_args) {
  CLI::App app("Entity-replacement robustness toolkit for relation extraction",
               "entre");
  Build(app);
  std::vector<std::string> args;
  try {
    args = ExpandConfigFile(raw_args);
  } catch (const Error& e) {
    stderr_ << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    stdout_ << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    stderr_ << "error: " << e.what() << "\n";
    const CLI::App* context = &app;
    for (CLI::App* sub : app.get_subcommands()) {
      context = sub;
      for (CLI::App* leaf : sub->get_subcommands()) context = leaf;
    }
    stderr_ << context->help();
    return kExitUsage;
  }

  for (CLI::App* group : app.get_subcommands()) {
    for (CLI::App* leaf : group->get_subcommands()) {
      selected_ = leaf;
      command_ = group->get_name() + " " + leaf->get_name();
    }
  }
  if (selected_ == nullptr || !handlers_.contains(selected_)) {
    stderr_ << app.help();
    return kExitUsage;
  }

  try {
    return handlers_[selected_]();
  } catch (const CLI::ParseError& e) {
    stderr_ << "error: " << e.what() << "\n" << selected_->help();
    return kExitUsage;
  } catch (const Error& e) {
    stderr_ << "error (" << ErrorCodeName(e.code()) << "): " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    stderr_ << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

LoadResult Cli::Load(const std::string& path) {
  LoadOptions options;
  options.mode = lenient_ ? LoadMode::kLenient : LoadMode::kStrict;
  LoadResult result = LoadCorpus(path, options);
  log_->info("loaded {} instances from {}", result.instances.size(), path);
  for (const SkippedRecord& skipped : result.skipped) {
    log_->warn("skipped record {} (id '{}'): {}", skipped.index, skipped.id,
               skipped.reason);
  }
  return result;
}

namespace {

std::string ResolveEndpoint(const OracleFlags& flags, const char* env_name,
                            const char* flag_name,
                            spdlog::logger& log) {
  if (const char* env = std::getenv(env_name); env != nullptr && *env) {
    if (!flags.endpoint.empty() && flags.endpoint != env) {
      log.info("{} overrides {}", env_name, flag_name);
    }
    return env;
  }
  if (flags.endpoint.empty()) {
    throw CLI::RequiredError(std::string(flag_name) + " (or " + env_name +
                             ")");
  }
  return flags.endpoint;
}

}  // namespace

std::unique_ptr<RelationOracle> Cli::OpenOracle(const OracleFlags& flags) {
  std::string endpoint = ResolveEndpoint(flags, kOracleEnv, "--oracle", *log_);
  ClientOptions options;
  options.batch_size = flags.batch_size;
  options.workers = flags.workers;
  auto oracle = std::make_unique<RemoteRelationOracle>(TransportFor(endpoint),
                                                       options);
  log_->info("oracle {} announced {} labels", oracle->identity(),
             oracle->labels().size());
  return oracle;
}

std::unique_ptr<NerOracle> Cli::OpenNerOracle(const OracleFlags& flags) {
  std::string endpoint =
      ResolveEndpoint(flags, kNerOracleEnv, "--ner-oracle", *log_);
  ClientOptions options;
  options.batch_size = flags.batch_size;
  options.workers = flags.workers;
  return std::make_unique<RemoteNerOracle>(TransportFor(endpoint), options);
}

RunManifest Cli::StartManifest() {
  RunManifest manifest;
  manifest.command = command_;
  manifest.config = Snapshot(*selected_);
  manifest.started_at = UtcTimestamp();
  return manifest;
}

void Cli::FinishManifest(RunManifest& manifest, const fs::path& output_dir) {
  manifest.finished_at = UtcTimestamp();
  fs::path path = manifest_.empty() ? output_dir / "manifest.json"
                                    : fs::path(manifest_);
  WriteFile(path, ToJson(manifest).dump(2) + "\n");
  log_->info("manifest written to {}", path.string());
}

fs::path DirOf(const std::string& file) {
  fs::path parent = fs::path(file).parent_path();
  return parent.empty() ? fs::path(".") : parent;
}

void Cli::Emit(const json& report, const std::string& out_path,
               const std::string& table) {
  if (out_path.empty()) {
    stdout_ << report.dump(2) << "\n";
    return;
  }
  WriteFile(out_path, report.dump(2) + "\n");
  stdout_ << table;
}

// corpus

int Cli::CorpusStats() {
  RunManifest manifest = StartManifest();
  LoadResult loaded = Load(corpus_);
  json report = ToJson(ComputeCorpusStats(loaded.instances));
  report["n_skipped"] = loaded.skipped.size();
  if (out_.empty()) {
    stdout_ << report.dump(2) << "\n";
    return kExitOk;
  }
  WriteFile(out_, report.dump(2) + "\n");
  manifest.AddInput(corpus_);
  manifest.AddOutput(out_);
  FinishManifest(manifest, DirOf(out_));
  return kExitOk;
}

int Cli::CorpusValidate() {
  RunManifest manifest = StartManifest();
  LoadResult loaded = Load(corpus_);
  json report = {{"n_valid", loaded.instances.size()},
                 {"n_skipped", loaded.skipped.size()},
                 {"skipped", ToJson(loaded.skipped)}};
  stdout_ << report.dump(2) << "\n";
  if (!out_.empty()) {
    WriteCorpus(loaded.instances, out_);
    manifest.AddInput(corpus_);
    manifest.AddOutput(out_);
    FinishManifest(manifest, DirOf(out_));
  }
  return kExitOk;
}

int Cli::CorpusMask() {
  RunManifest manifest = StartManifest();
  LoadResult loaded = Load(corpus_);
  const MaskMode mode = ParseMaskMode(mask_mode_);
  std::vector<REInstance> masked;
  masked.reserve(loaded.instances.size());
  for (const REInstance& instance : loaded.instances) {
    masked.push_back(ApplyEntityMask(instance, mode));
  }
  WriteCorpus(masked, out_);
  manifest.AddInput(corpus_);
  manifest.AddOutput(out_);
  FinishManifest(manifest, DirOf(out_));
  return kExitOk;
}

int Cli::CorpusCounterfactual() {
  RunManifest manifest = StartManifest();
  LoadResult loaded = Load(corpus_);
  const ContextMaskMode mode = ParseContextMaskMode(context_mode_);
  std::vector<REInstance> masked;
  masked.reserve(loaded.instances.size());
  for (const REInstance& instance : loaded.instances) {
    masked.push_back(MaskContext(instance, mask_token_, mode));
  }
  WriteCorpus(masked, out_);
  manifest.AddInput(corpus_);
  manifest.AddOutput(out_);
  FinishManifest(manifest, DirOf(out_));
  return kExitOk;
}

// lexicon

int Cli::LexiconStats() {
  EntityLexicon lexicon =
      EntityLexicon::FromFiles(person_lexicon_, org_lexicon_);
  stdout_ << json{{"PERSON", lexicon.person_count()},
               {"ORGANIZATION", lexicon.organization_count()}}
              .dump(2)
       << "\n";
  return kExitOk;
}

int Cli::LexiconSample() {
  EntityLexicon lexicon =
      EntityLexicon::FromFiles(person_lexicon_, org_lexicon_);
  Rng rng(seed_);
  const EntityType type = EntityType::FromString(entity_type_);
  for (std::size_t i = 0; i < count_; ++i) {
    stdout_ << JoinName(SampleName(lexicon, type, nullptr, rng)) << "\n";
  }
  return kExitOk;
}

// audit

int Cli::AuditAnnotations() {
  RunManifest manifest = StartManifest();
  LoadResult loaded = Load(corpus_);
  std::unique_ptr<NerOracle> ner = OpenNerOracle(ner_oracle_);
  manifest.oracle = ner->identity();
  AnnotationAudit audit =
      FlagAnnotations(loaded.instances, *ner, MatchPolicy{min_jaccard_});
  const fs::path dir(out_dir_);
  WriteCorpus(audit.clean, dir / "clean.json");
  WriteFile(dir / "disagreements.json", ToJson(audit.report).dump(2) + "\n");
  WriteFile(dir / "review.tsv",
            FormatReviewList(audit.report, loaded.instances));
  log_->info("flagged {} of {} instances ({} span, {} type, {} missing)",
             audit.report.flagged_ids.size(), audit.report.n_instances,
             audit.report.count(Verdict::kSpanMismatch),
             audit.report.count(Verdict::kTypeMismatch),
             audit.report.count(Verdict::kMissing));
  manifest.AddInput(corpus_);
  for (const char* name : {"clean.json", "disagreements.json", "review.tsv"}) {
    manifest.AddOutput(dir / name);
  }
  FinishManifest(manifest, dir);
  return kExitOk;
}

int Cli::AuditEligibility() {
  RunManifest manifest = StartManifest();
  LoadResult loaded = Load(corpus_);
  EligibilityResult result = EligibilityFilter(loaded.instances);
  const fs::path dir(out_dir_);
  WriteCorpus(result.eligible, dir / "eligible.json");
  WriteFile(dir / "eligibility.json", ToJson(result).dump(2) + "\n");
  log_->info("{} eligible, {} ineligible", result.eligible.size(),
             result.ineligible.size());
  manifest.AddInput(corpus_);
  manifest.AddOutput(dir / "eligible.json");
  manifest.AddOutput(dir / "eligibility.json");
  FinishManifest(manifest, dir);
  return kExitOk;
}

int Cli::AuditShortcuts() {
  RunManifest manifest = StartManifest();
  LoadResult loaded = Load(corpus_);
  std::unique_ptr<RelationOracle> oracle = OpenOracle(oracle_);
  manifest.oracle = oracle->identity();
  ShortcutReport report =
      ShortcutAnalysis(loaded.instances, *oracle,
                       ParseContextMaskMode(context_mode_), mask_token_);
  Emit(ToJson(report), out_, FormatTable(report));
  if (!out_.empty()) {
    manifest.AddInput(corpus_);
    manifest.AddOutput(out_);
    FinishManifest(manifest, DirOf(out_));
  }
  return kExitOk;
}

int Cli::AuditDiversity() {
  RunManifest manifest = StartManifest();
  LoadResult loaded = Load(corpus_);
  DiversityReport report = DiversityStats(loaded.instances, top_k_);
  Emit(ToJson(report), out_, FormatTable(report));
  if (!out_.empty()) {
    manifest.AddInput(corpus_);
    manifest.AddOutput(out_);
    FinishManifest(manifest, DirOf(out_));
  }
  return kExitOk;
}

int Cli::AuditCompare() {
  RunManifest manifest = StartManifest();
  json before;
  json after;
  try {
    before = json::parse(ReadFile(before_));
    after = json::parse(ReadFile(after_));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kReport, std::string("report is not JSON: ") +
                                        e.what());
  }
  const std::string kind = before.value("kind", "");
  if (kind != after.value("kind", "")) {
    throw Error(ErrorCode::kReport, "cannot compare a '" + kind +
                                        "' report with a '" +
                                        after.value("kind", "") + "' report");
  }
  if (kind == "shortcuts") {
    ShortcutComparison comparison = CompareShortcuts(
        ShortcutReportFromJson(before), ShortcutReportFromJson(after));
    Emit(ToJson(comparison), out_, FormatTable(comparison));
  } else if (kind == "diversity") {
    DiversityComparison comparison = CompareDiversity(
        DiversityReportFromJson(before), DiversityReportFromJson(after));
    json report = ToJson(comparison);
    Emit(report, out_, report.dump(2) + "\n");
  } else {
    throw Error(ErrorCode::kReport,
                "only shortcut and diversity reports can be compared");
  }
  if (!out_.empty()) {
    manifest.AddInput(before_);
    manifest.AddInput(after_);
    manifest.AddOutput(out_);
    FinishManifest(manifest, DirOf(out_));
  }
  return kExitOk;
}

// entre

int Cli::EntreRun() {
  RunManifest manifest = StartManifest();
  manifest.seed = seed_;
  LoadResult loaded = Load(corpus_);
  EntityLexicon lexicon =
      EntityLexicon::FromFiles(person_lexicon_, org_lexicon_);
  log_->info("lexicon: {} PERSON, {} ORGANIZATION names",
             lexicon.person_count(), lexicon.organization_count());
  std::unique_ptr<RelationOracle> oracle = OpenOracle(oracle_);
  manifest.oracle = oracle->identity();

  LoopConfig config;
  config.max_iterations = max_iter_;
  config.mode = ParseSelectionMode(mode_);
  config.seed = seed_;
  config.initial_pass = initial_pass_;
  config.exclude_no_relation_matches = exclude_no_relation_;
  config.unique_names = unique_names_;
  config.reuse_predictions = !no_reuse_predictions_;
  config.replace.rewrite_mentions = rewrite_mentions_;
  config.replace_subject =
      std::find(roles_.begin(), roles_.end(), "subject") != roles_.end();
  config.replace_object =
      std::find(roles_.begin(), roles_.end(), "object") != roles_.end();

  const std::size_t ineligible =
      EligibilityFilter(loaded.instances).ineligible.size();
  if (ineligible > 0) {
    log_->warn("{} instances have no PERSON/ORGANIZATION entity and will "
               "never change", ineligible);
  }

  EntreResult result = RunEntre(loaded.instances, lexicon, *oracle, config);
  for (const IterationTrace& it : result.trace.iterations) {
    log_->info("iteration {}: {} selected, {} oracle requests, {} swaps",
               it.iteration, it.selected, it.oracle_requests,
               it.replacements.size());
  }
  log_->info("{} after {} rounds, {} oracle requests in {} batches",
             result.trace.converged ? "converged" : "stopped",
             result.trace.rounds(), result.trace.total_oracle_requests(),
             result.trace.total_oracle_batches());

  WriteCorpus(result.corpus, out_);
  manifest.AddInput(corpus_);
  manifest.AddInput(person_lexicon_);
  manifest.AddInput(org_lexicon_);
  manifest.AddOutput(out_);
  if (!trace_.empty()) {
    json trace = ToJson(result.trace);
    trace["config"] = ToJson(config);
    WriteFile(trace_, trace.dump(1) + "\n");
    manifest.AddOutput(trace_);
  }
  FinishManifest(manifest, DirOf(out_));
  return kExitOk;
}

// eval

namespace {

std::vector<OraclePrediction> ReadPredictions(const std::string& path) {
  std::string text = ReadFile(path);
  std::vector<OraclePrediction> predictions;
  auto first = text.find_first_not_of(" \t\r\n");
  try {
    if (first != std::string::npos && text[first] == '[') {
      for (const json& item : json::parse(text)) {
        predictions.push_back(PredictionFromJson(item));
      }
      return predictions;
    }
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      predictions.push_back(PredictionFromJson(json::parse(line)));
    }
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kFormat,
                path + ": predictions are not JSON: " + e.what());
  }
  return predictions;
}

}  // namespace

int Cli::EvalScore() {
  RunManifest manifest = StartManifest();
  LoadResult loaded = Load(corpus_);
  std::vector<OraclePrediction> predictions;
  if (!predictions_.empty()) {
    predictions = ReadPredictions(predictions_);
    manifest.AddInput(predictions_);
  } else {
    std::unique_ptr<RelationOracle> oracle = OpenOracle(oracle_);
    manifest.oracle = oracle->identity();
    predictions = PredictInstances(*oracle, loaded.instances);
  }
  EvalReport report = ScorePredictions(loaded.instances, predictions);
  Emit(ToJson(report), out_, "");
  if (!out_.empty()) {
    manifest.AddInput(corpus_);
    manifest.AddOutput(out_);
    FinishManifest(manifest, DirOf(out_));
  }
  log_->info("micro P={:.4f} R={:.4f} F1={:.4f}", report.micro.precision,
             report.micro.recall, report.micro.f1);
  if (f1_floor_ && report.micro.f1 < *f1_floor_) {
    log_->error("F1 {:.4f} below floor {:.4f}", report.micro.f1, *f1_floor_);
    return kExitF1Floor;
  }
  return kExitOk;
}

int Cli::EvalRobustness() {
  RunManifest manifest = StartManifest();
  LoadResult before = Load(before_);
  LoadResult after = Load(after_);
  std::unique_ptr<RelationOracle> oracle = OpenOracle(oracle_);
  manifest.oracle = oracle->identity();
  DeltaReport delta =
      RobustnessEval(before.instances, after.instances, *oracle);
  Emit(ToJson(delta), out_, "");
  if (!out_.empty()) {
    manifest.AddInput(before_);
    manifest.AddInput(after_);
    manifest.AddOutput(out_);
    FinishManifest(manifest, DirOf(out_));
  }
  log_->info("F1 {:.4f} -> {:.4f}", delta.f1_before, delta.f1_after);
  if (f1_floor_ && delta.f1_after < *f1_floor_) {
    log_->error("F1 after replacement {:.4f} below floor {:.4f}",
                delta.f1_after, *f1_floor_);
    return kExitF1Floor;
  }
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  Cli cli(out, err);
  return cli.Run(args);
}

}  // namespace entre
