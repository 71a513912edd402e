// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace leashsim {

using Bytes = std::vector<uint8_t>;
using ByteView = std::span<const uint8_t>;

/// 32-byte digest / identifier. Also used for fork identities, which share
/// the digest width by construction.
struct Hash256 {
    std::array<uint8_t, 32> bytes{};

    auto operator<=>(const Hash256&) const = default;

    bool is_zero() const {
        for (auto b : bytes)
            if (b != 0) return false;
        return true;
    }

    std::string hex() const;
    /// Short prefix for reports and log lines.
    std::string hex8() const { return hex().substr(0, 8); }

    static Hash256 from_hex(std::string_view s);
};

/// 256-bit account identifier (EOA key hash or contract account number).
struct AccountId {
    std::array<uint8_t, 32> bytes{};

    auto operator<=>(const AccountId&) const = default;

    std::string hex() const;
    std::string hex8() const { return hex().substr(0, 8); }
    static AccountId from_hex(std::string_view s);
};

std::string to_hex(ByteView data);
Bytes from_hex(std::string_view s);

inline void append(Bytes& out, ByteView data) {
    out.insert(out.end(), data.begin(), data.end());
}

} // namespace leashsim
