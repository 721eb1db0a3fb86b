// Copyright 2026 The scourbench Authors.
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

#ifndef SCOURBENCH_RNG_HPP_
#define SCOURBENCH_RNG_HPP_

#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <utility>

namespace scourbench {

// Deterministic, splittable random streams.
//
// A stream is a std::mt19937_64 whose 64-bit seed is derived from the pair
// (master seed, stream id) with two rounds of SplitMix64. Parallel work
// takes its own stream id, so the numbers it consumes never depend on
// scheduling or worker count. The engine and all conversions below are
// fully specified, which makes every stream bit-identical across platforms
// (std::uniform_*_distribution is not, and is never used).
class RandomStream {
 public:
  using result_type = std::uint64_t;

  RandomStream(std::uint64_t seed, std::uint64_t stream_id)
      : engine_(derive_seed(seed, stream_id)) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return engine_(); }

  // Uniform on the open interval (0, 1); safe to feed into quantiles.
  double uniform_open() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform integer in [0, n), n > 0, by rejection (no modulo bias).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = max() - max() % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  static constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  static constexpr std::uint64_t derive_seed(std::uint64_t seed,
                                             std::uint64_t stream_id) noexcept {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream_id + 0x632BE59BD9B4E019ULL));
  }

 private:
  std::mt19937_64 engine_;
};

// Fisher-Yates with RandomStream::below; std::shuffle is implementation
// defined.
template <typename T>
void shuffle(std::span<T> values, RandomStream& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace scourbench

#endif  // SCOURBENCH_RNG_HPP_
