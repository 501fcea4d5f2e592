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

// Command-line front end. Lives in the library so tests can drive it
// without spawning processes.
//
//   entre corpus  {stats|validate|mask|counterfactual}
//   entre lexicon {stats|sample}
//   entre audit   {annotations|eligibility|shortcuts|diversity|compare}
//   entre entre   run
//   entre eval    {score|robustness}
//
// Any flag may also come from `--config FILE`, a flat `key = value` file
// whose keys are flag names without the leading dashes. Flags given on the
// command line win over the file.

#ifndef ENTRE_CLI_H_
#define ENTRE_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "entre/error.h"

namespace entre {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitOracle = 2;
inline constexpr int kExitF1Floor = 3;
inline constexpr int kExitUsage = 64;

// Overrides --oracle / --ner-oracle when set.
inline constexpr const char* kOracleEnv = "ENTRE_ORACLE";
inline constexpr const char* kNerOracleEnv = "ENTRE_NER_ORACLE";

int ExitCodeFor(ErrorCode code);

// `args` excludes the program name. Machine-readable output goes to `out`,
// progress and diagnostics to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

// Splices `--config FILE` contents into `args` (exposed for tests).
std::vector<std::string> ExpandConfigFile(const std::vector<std::string>& args);

}  // namespace entre

#endif  // ENTRE_CLI_H_
