// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <span>

#include "leashsim/blocktree.hpp"

namespace leashsim {

/// What a light client trusts: one block, the committee of that block's
/// epoch, and how many elections count as "recent" (the security parameter r).
struct LightClientState {
    BlockId trusted_block;
    uint64_t trusted_height = 0;
    Committee trusted_committee;
    uint32_t recent_window = 2;
};

enum class RejectReason : uint8_t { BadLink, BadHeight, BadQuorum, BadTransition };
const char* reject_reason_name(RejectReason r);

struct LightVerifyResult {
    std::optional<RejectReason> reject; // nullopt = accepted
    size_t reject_index = 0;            // segment position of the offending block
    LightClientState state;             // advanced state when accepted

    bool accepted() const { return !reject.has_value(); }
};

/// Signs a block with whatever keys are supplied — quorum or not, honest or
/// leaked. Validity is entirely the verifier's business.
Block mint_block(std::span<const Keypair> keys, const BlockTree& tree, const BlockId& parent,
                 std::vector<SignedTxn> txs, const Hash256& state_root, const Hash256& fork_id,
                 uint64_t epoch, std::optional<TransitionRecord> transition = std::nullopt);

/// Consensus-metadata verification only: parent linkage, height increments,
/// a quorum of committee signatures per block, and quorum-signed committee
/// transitions. Transactions are not executed and state roots are not
/// recomputed — a light client cannot do either.
LightVerifyResult light_verify(const LightClientState& client, std::span<const Block> segment);

/// Quorum check for a single block against a committee.
bool quorum_signed(const Committee& committee, const Block& block);

} // namespace leashsim
