// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include "leashsim/u256.hpp"

#include "leashsim/errors.hpp"

namespace leashsim {

std::array<uint8_t, 32> u256_to_be(const U256& v) {
    std::array<uint8_t, 32> out{};
    U256 x = v;
    for (int i = 31; i >= 0; --i) {
        out[i] = static_cast<uint8_t>(x & 0xff);
        x >>= 8;
    }
    return out;
}

U256 u256_from_be(ByteView be32) {
    if (be32.size() != 32) raise(Errc::Malformed, "word must be 32 bytes");
    U256 x = 0;
    for (uint8_t b : be32) x = (x << 8) | b;
    return x;
}

std::optional<U256> checked_add(const U256& a, const U256& b) {
    U256 r = a + b;
    if (r < a) return std::nullopt;
    return r;
}

std::optional<U256> checked_sub(const U256& a, const U256& b) {
    if (b > a) return std::nullopt;
    return a - b;
}

std::optional<U256> checked_mul(const U256& a, const U256& b) {
    if (a == 0 || b == 0) return U256(0);
    U256 r = a * b;
    if (r / a != b) return std::nullopt;
    return r;
}

std::string u256_dec(const U256& v) { return v.str(); }

} // namespace leashsim
