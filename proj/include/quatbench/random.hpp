// Copyright 2026 The quatbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Seeded random streams.
//
// One experiment seed fans out into independent sub-streams (features,
// labels, shuffles) by mixing the seed with a stream tag through SplitMix64.
// Each sub-stream drives a std::mt19937_64, whose output sequence is fixed by
// the C++ standard, and all conversions to doubles and bounded integers are
// done here rather than through <random> distributions, whose algorithms are
// implementation-defined. The result is bit-identical across platforms.

#pragma once

#include <cstdint>
#include <random>

namespace quatbench {

enum class Stream : std::uint64_t {
  Features = 1,
  Labels = 2,
  Shuffle = 3,
};

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t value);

std::uint64_t derive_seed(std::uint64_t seed, Stream stream);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, Stream stream) : engine_(derive_seed(seed, stream)) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer on [0, bound), bound > 0. Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace quatbench
