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

#ifndef ENTRE_RANDOM_H_
#define ENTRE_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace entre {

// Explicit random state. std::mt19937_64 has a standardized output sequence;
// the bounded draw below is ours, so a seed reproduces the same names on
// every standard library (std::uniform_int_distribution does not promise
// that).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }

  // Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t UniformBelow(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

// 64-bit finalizer from splitmix64.
std::uint64_t Mix64(std::uint64_t x);

// FNV-1a over the bytes of `text`.
std::uint64_t Fnv1a64(std::string_view text);

// Sub-seed for one (instance, iteration, role) replacement. Depends only on
// its arguments, so replacements can run in any order or in parallel.
std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view instance_id,
                         int iteration, int role);

}  // namespace entre

#endif  // ENTRE_RANDOM_H_
