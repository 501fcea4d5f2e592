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

#include "entre/random.h"

namespace entre {

std::uint64_t Rng::UniformBelow(std::uint64_t bound) {
  // Rejection sampling: discard the top partial block so every residue is
  // equally likely.
  const std::uint64_t limit = -bound % bound;  // (2^64 - bound) mod bound
  for (;;) {
    std::uint64_t draw = engine_();
    if (draw >= limit) return draw % bound;
  }
}

std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t Fnv1a64(std::string_view text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view instance_id,
                         int iteration, int role) {
  std::uint64_t h = Mix64(seed);
  h = Mix64(h ^ Fnv1a64(instance_id));
  h = Mix64(h ^ static_cast<std::uint64_t>(iteration));
  h = Mix64(h ^ static_cast<std::uint64_t>(role));
  return h;
}

}  // namespace entre
