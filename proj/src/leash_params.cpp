// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include "leashsim/leash_params.hpp"

#include "leashsim/errors.hpp"

namespace leashsim {

void LeashParams::encode(Encoder& enc) const {
    enc.u64(anchor_height);
    enc.hash(anchor_hash);
    enc.u64(length);
    enc.hash(fork_id);
}

LeashParams LeashParams::decode(Decoder& dec) {
    LeashParams p;
    p.anchor_height = dec.u64();
    p.anchor_hash = dec.hash();
    p.length = dec.u64();
    p.fork_id = dec.hash();
    return p;
}

LeashParams make_leash(uint64_t anchor_height, const Hash256& anchor_hash, uint64_t length,
                       const Hash256& fork_id) {
    LeashParams p{anchor_height, anchor_hash, length, fork_id};
    if (!p.well_formed()) raise(Errc::MalformedParams, "anchor height + length overflows");
    return p;
}

} // namespace leashsim
