// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <variant>

#include "leashsim/blocktree.hpp"
#include "leashsim/state.hpp"

namespace leashsim {

/// Context of the block under construction: transactions execute as if
/// appended in a child of `parent`.
struct BlockCtx {
    const BlockTree* tree = nullptr;
    BlockId parent;
    uint64_t height = 0; // depth(parent) + 1
    Hash256 fork_id;
    uint32_t blockhash_window = 256; // W

    static BlockCtx for_child_of(const BlockTree& tree, const BlockId& parent,
                                 const Hash256& fork_id, uint32_t window = 256);
};

struct VmConfig {
    uint64_t step_budget = 20000;
    uint32_t max_call_depth = 16;
    uint32_t max_calldata = 4096;
    U256 base_fee = 10; // flat; keeps conservation checks exact
    /// Legacy semantics: division or mod by zero yields zero instead of
    /// aborting. This is the instruction-level "bug" the replay demo fixes.
    bool div_mod_zero_yields_zero = false;
};

/// Where fees accumulate, so supply conservation is checkable. An ordinary
/// account with a reserved id.
AccountId fee_sink_account();

enum class TxnStatus : uint8_t { Committed, Reverted };
enum class LeashOutcome : uint8_t { NotLeashed, Passed, RevertedByLeash };

enum class LeashReason : uint8_t {
    ForkMismatch = 1,
    AnchorInFuture = 2,
    LeashExpired = 3,
    AnchorHashMismatch = 4,
};
const char* leash_reason_name(LeashReason r);

struct TransferEvent {
    AccountId from;
    AccountId to;
    U256 amount;

    bool operator==(const TransferEvent&) const = default;
};

struct Receipt {
    TxnStatus status = TxnStatus::Committed;
    uint64_t gas_used = 0; // interpreter steps
    Bytes return_data;
    LeashOutcome leash_outcome = LeashOutcome::NotLeashed;
    std::optional<LeashReason> leash_reason; // set when RevertedByLeash
    std::string revert_cause;                // stable diagnostic token, empty when committed
    /// Committed value movements, fees excluded. Empty on revert (ACID).
    std::vector<TransferEvent> transfers;

    bool committed() const { return status == TxnStatus::Committed; }
};

/// Reasons a proposal is not sequenced at all: no nonce consumed, no fee
/// charged, nothing on chain. Distinct from an on-chain revert.
enum class SequencingError : uint8_t { BadSignature, BadNonce, InsufficientFee };
const char* sequencing_error_name(SequencingError e);

struct Applied {
    DbState state;
    Receipt receipt;
};

using ApplyResult = std::variant<SequencingError, Applied>;

ApplyResult apply_txn(const DbState& db, const SignedTxn& txn, const BlockCtx& ctx,
                      const VmConfig& config = {});

struct SequenceResult {
    DbState state;
    std::vector<ApplyResult> results;    // one entry per transaction considered
    std::optional<size_t> halted_at;     // index of a not-sequenced transaction
};

/// Left-to-right composition: continues past reverted transactions, halts on
/// the first not-sequenced one.
SequenceResult apply_sequence(const DbState& db, const std::vector<SignedTxn>& txns,
                              const BlockCtx& ctx, const VmConfig& config = {});

struct ScriptResult {
    bool reverted = false;
    Bytes data; // return data, or revert data
    uint64_t steps = 0;
    std::string revert_cause;
    DbState state; // post-state; equals the input state when reverted
    std::vector<TransferEvent> transfers;
};

ScriptResult execute_script(const DbState& db, const AccountId& contract, ByteView calldata,
                            const BlockCtx& ctx, const AccountId& caller,
                            const VmConfig& config = {});

/// Contract account number, derived from the creator account and its nonce.
AccountId contract_account_id(const AccountId& creator, const U256& nonce);

} // namespace leashsim
