// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include "leashsim/consensus.hpp"

#include <algorithm>
#include <set>

namespace leashsim {

const char* reject_reason_name(RejectReason r) {
    switch (r) {
        case RejectReason::BadLink: return "BadLink";
        case RejectReason::BadHeight: return "BadHeight";
        case RejectReason::BadQuorum: return "BadQuorum";
        case RejectReason::BadTransition: return "BadTransition";
    }
    return "?";
}

Block mint_block(std::span<const Keypair> keys, const BlockTree& tree, const BlockId& parent,
                 std::vector<SignedTxn> txs, const Hash256& state_root, const Hash256& fork_id,
                 uint64_t epoch, std::optional<TransitionRecord> transition) {
    Block b;
    b.parent = parent;
    b.height = tree.depth(parent) + 1;
    b.epoch = epoch;
    b.fork_id = fork_id;
    b.txs = std::move(txs);
    b.state_root = state_root;
    b.transition = std::move(transition);
    Bytes message = b.presig_message();
    for (const Keypair& key : keys) b.committee_sigs.emplace_back(key.pub, key.sign(message));
    std::sort(b.committee_sigs.begin(), b.committee_sigs.end(),
              [](const auto& a, const auto& other) { return a.first < other.first; });
    return b;
}

bool quorum_signed(const Committee& committee, const Block& block) {
    Bytes message = block.presig_message();
    std::set<PubKey> counted;
    for (const auto& [pk, sig] : block.committee_sigs) {
        if (!committee.is_member(pk)) continue;
        if (counted.count(pk)) continue;
        if (verify_signature(pk, message, sig)) counted.insert(pk);
    }
    return counted.size() >= committee.threshold;
}

LightVerifyResult light_verify(const LightClientState& client, std::span<const Block> segment) {
    LightVerifyResult result;
    result.state = client;

    BlockId prev = client.trusted_block;
    uint64_t prev_height = client.trusted_height;
    Committee committee = client.trusted_committee;

    auto hasher = default_hasher();
    for (size_t i = 0; i < segment.size(); ++i) {
        const Block& b = segment[i];
        auto fail = [&](RejectReason why) {
            result.reject = why;
            result.reject_index = i;
            return result;
        };
        if (!b.parent || *b.parent != prev) return fail(RejectReason::BadLink);
        if (b.height != prev_height + 1) return fail(RejectReason::BadHeight);
        if (b.epoch != committee.epoch) return fail(RejectReason::BadTransition);
        if (b.transition && !verify_transition(committee, *b.transition))
            return fail(RejectReason::BadTransition);
        if (!quorum_signed(committee, b)) return fail(RejectReason::BadQuorum);

        prev = BlockId{hasher->hash(b.serialize())};
        prev_height = b.height;
        if (b.transition) committee = b.transition->new_committee;
    }

    result.state.trusted_block = prev;
    result.state.trusted_height = prev_height;
    result.state.trusted_committee = committee;
    return result;
}

} // namespace leashsim
