// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>

#include "leashsim/bytes.hpp"
#include "leashsim/codec.hpp"

namespace leashsim {

/// Leash restriction parameters: the transaction is valid only in blocks
/// descending from the anchor (height i, hash v) within length l, on the
/// chain with the expected fork identity.
struct LeashParams {
    uint64_t anchor_height = 0; // i
    Hash256 anchor_hash;        // v
    uint64_t length = 0;        // l
    Hash256 fork_id;

    bool operator==(const LeashParams&) const = default;

    /// i + l must not overflow; overflow means malformed params.
    bool well_formed() const { return anchor_height <= UINT64_MAX - length; }

    void encode(Encoder& enc) const;
    static LeashParams decode(Decoder& dec);
};

/// Throws Errc::MalformedParams on i + l overflow.
LeashParams make_leash(uint64_t anchor_height, const Hash256& anchor_hash, uint64_t length,
                       const Hash256& fork_id);

} // namespace leashsim
