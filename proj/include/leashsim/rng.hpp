// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>

#include "leashsim/bytes.hpp"

namespace leashsim {

/// splitmix64. Standard-library distributions are not bit-reproducible across
/// implementations, so all randomized fixtures draw from this instead.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, bound). bound must be nonzero.
    uint64_t below(uint64_t bound) {
        // Rejection sampling keeps the draw unbiased.
        uint64_t limit = bound * (UINT64_MAX / bound);
        uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

    uint64_t range(uint64_t lo, uint64_t hi_inclusive) {
        return lo + below(hi_inclusive - lo + 1);
    }

    bool chance(uint64_t num, uint64_t den) { return below(den) < num; }

    Bytes bytes(size_t n) {
        Bytes out(n);
        for (size_t i = 0; i < n; ++i) out[i] = static_cast<uint8_t>(next() & 0xff);
        return out;
    }

    Hash256 hash256() {
        Hash256 h;
        for (size_t i = 0; i < 32; ++i) h.bytes[i] = static_cast<uint8_t>(next() & 0xff);
        return h;
    }

    /// Independent stream derived from this seed and a label; lets parallel
    /// and serial sweeps draw identical per-case randomness.
    Rng fork(uint64_t label) const {
        Rng r(state_ ^ (0xa076'1d64'78bd'642fULL * (label + 1)));
        r.next();
        return r;
    }

  private:
    uint64_t state_;
};

} // namespace leashsim
