// irsifc - beamforming and rate-region toolkit for IRS-aided MISO interference channels
// Copyright (C) 2026 the irsifc authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

#include "irsifc/common.hpp"

namespace irsifc {

namespace detail {

// splitmix64 finalizer; a strong 64-bit mixer.
inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t fnv1a(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace detail

/// Counter-based random stream: every draw is a pure function of
/// (seed, stream name, counter), so independent tensors never perturb
/// each other and any draw can be reproduced in isolation.
class StreamRng {
  public:
    StreamRng(uint64_t seed, std::string_view stream)
        : seed_(detail::mix64(seed)), stream_(detail::fnv1a(stream)) {}

    uint64_t next_u64() { return at(counter_++); }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal pair via Box-Muller; consumes exactly two counter slots.
    void normal_pair(double& a, double& b) {
        double u1 = 1.0 - uniform();  // (0, 1]
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        a = r * std::cos(2.0 * kPi * u2);
        b = r * std::sin(2.0 * kPi * u2);
    }

    double normal() {
        double a, b;
        normal_pair(a, b);
        return a;
    }

    /// Circularly-symmetric complex Gaussian with total variance `var`.
    cplx cnormal(double var = 1.0) {
        double re, im;
        normal_pair(re, im);
        double s = std::sqrt(var * 0.5);
        return {re * s, im * s};
    }

    uint64_t counter() const { return counter_; }

  private:
    uint64_t at(uint64_t counter) const {
        return detail::mix64(detail::mix64(seed_ ^ stream_) + counter);
    }

    uint64_t seed_;
    uint64_t stream_;
    uint64_t counter_ = 0;
};

/// Derives a child seed for an independent purpose (per sweep point, per probe).
inline uint64_t derive_seed(uint64_t seed, std::string_view purpose, uint64_t index = 0) {
    return detail::mix64(detail::mix64(seed ^ detail::fnv1a(purpose)) + index);
}

}  // namespace irsifc
