// Copyright 2026 The hspsim Authors
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

#ifndef HSP_RNG_H
#define HSP_RNG_H

#include <cstdint>
#include <random>

namespace hsp {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// A reproducible random stream identified by (seed, stream id).
///
/// The engine is std::mt19937_64 seeded through std::seed_seq with the four
/// 32-bit halves of seed and stream id. All derived quantities (uniforms,
/// bounded integers, Gaussians) are computed here from raw 64-bit words so
/// that draws are identical across standard library implementations.
class RngStream {
   public:
    RngStream(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t seed() const {
        return seed_;
    }
    std::uint64_t stream() const {
        return stream_;
    }

    /// Independent child stream: same seed, stream id mixed with `sub`.
    RngStream derive(std::uint64_t sub) const;

    std::uint64_t next_u64() {
        return engine_();
    }
    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();
    /// Uniform integer in [0, n). Requires n > 0.
    std::uint64_t uniform_int(std::uint64_t n);
    /// Standard normal via the Marsaglia polar method.
    double gaussian();

   private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace hsp

#endif
