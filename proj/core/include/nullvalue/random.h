// Copyright 2026 The nullvalue Authors
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

#ifndef NULLVALUE_RANDOM_H_
#define NULLVALUE_RANDOM_H_

#include <cstdint>
#include <limits>

namespace nullvalue {

/// Counter-based generator: output k of stream (seed, stream, trial) is a
/// pure function of those four integers, so work split across threads in
/// any order reproduces the serial draws exactly.
///
/// Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Well-known stream identifiers so different consumers of one seed never
/// share draws.
enum class StreamId : std::uint64_t {
  kTreeTrials = 1,
  kPoissonLeaves = 2,
  kPhotons = 3,
  kDarkCounts = 4,
  kSweep = 5,
};

std::uint64_t stream_key(StreamId id, std::uint64_t index);

}  // namespace nullvalue

#endif  // NULLVALUE_RANDOM_H_
