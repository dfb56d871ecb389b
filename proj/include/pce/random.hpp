// Copyright 2026 The pce-mincut Authors
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

#pragma once

#include <cstdint>
#include <random>

namespace pce {

/// 64-bit finalizer from splitmix64; used to derive independent seeds
/// from (base seed, stream index) pairs.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t base,
                                    std::uint64_t stream) noexcept {
    return mix_seed(base ^ mix_seed(stream + 0x632be59bd9b4e019ULL));
}

using Rng = std::mt19937_64;

// std::uniform_real_distribution is implementation-defined; this keeps
// seeded streams bit-identical across standard libraries.
inline double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(Rng &rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

/// Uniform integer in [0, bound). Rejection sampling, bound > 0.
inline std::uint64_t uniform_index(Rng &rng, std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r;
    do {
        r = rng();
    } while (r >= limit);
    return r % bound;
}

} // namespace pce
