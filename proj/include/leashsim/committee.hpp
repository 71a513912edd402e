// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <span>
#include <vector>

#include "leashsim/codec.hpp"
#include "leashsim/keys.hpp"

namespace leashsim {

struct Committee {
    uint64_t epoch = 0;
    std::vector<PubKey> members;
    uint32_t threshold = 0;

    bool operator==(const Committee&) const = default;

    bool is_member(const PubKey& pk) const;
    /// Classic BFT quorum: threshold > 2/3 of the membership, members non-empty.
    bool well_formed() const {
        return !members.empty() && uint64_t(3) * threshold > uint64_t(2) * members.size() &&
               threshold <= members.size();
    }

    void encode(Encoder& enc) const;
    static Committee decode(Decoder& dec);
    Bytes serialize() const;
};

/// Quorum-signed committee change, embedded in a block's payload. The
/// approvals are signatures by the outgoing committee over the incoming one.
struct TransitionRecord {
    Committee new_committee;
    std::vector<std::pair<PubKey, Signature>> approvals;

    bool operator==(const TransitionRecord&) const = default;

    void encode(Encoder& enc) const;
    static TransitionRecord decode(Decoder& dec);
};

Bytes transition_sign_message(const Committee& next);

/// Builds a transition record signed by `signers`. Throws Errc::BadQuorum if
/// the signers that are actually members of `parent` fall short of its
/// threshold. Adversarial records are built directly on the struct instead.
TransitionRecord register_transition(const Committee& parent, const Committee& next,
                                     std::span<const Keypair> signers);

/// Checks a record against the committee expected to have approved it.
bool verify_transition(const Committee& parent, const TransitionRecord& record);

} // namespace leashsim
