// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "leashsim/vm.hpp"

namespace leashsim {

/// The leash predicate. Pass (nullopt) iff the fork identity matches and the
/// executing block's parent descends from the anchor (height i, hash v)
/// within length l:
///
///   fork_id match  ∧  depth(parent) ≥ i  ∧  depth(parent) < i + l
///   ∧  id(up(parent, depth(parent) − i)) == v
///
/// A zero-length leash reports LeashExpired for every anchor.
std::optional<LeashReason> leash_check(const LeashParams& params, const BlockCtx& ctx);

/// Metadata mode: the leash rides in the transaction proposal, covered by
/// the signature, validated before any contract code is loaded.
SignedTxn wrap_metadata(const Keypair& key, const TxnDraft& draft, const LeashParams& params);

/// Wrapper-contract mode: a script that performs the leash check with
/// block_number / blockhash / chain_id instructions and forwards its whole
/// calldata to a fixed target. full_domain selects blockhash_fd; the plain
/// variant is ineffective past the W window.
Script wrap_script(const AccountId& target, const LeashParams& params, bool full_domain = true);

// Gateway calldata layout: seven 32-byte words
//   [format_version, fork_id, anchor_height, anchor_hash, length, target, reserved]
// followed by the inner calldata. Return data carries a three-word prefix
//   [status, offset(=96), inner_length]
// ahead of the inner return bytes; failure paths revert with the same prefix
// shape and a distinct status word.
constexpr size_t kGatewayPrefixBytes = 224;
constexpr size_t kGatewayReturnPrefixBytes = 96;
constexpr uint64_t kGatewayFormatVersion = 1;

enum class GatewayStatus : uint64_t {
    Ok = 1,
    MalformedPrefix = 2,
    ForkMismatch = 3,
    AnchorInFuture = 4,
    LeashExpired = 5,
    AnchorHashMismatch = 6,
    TargetMissing = 7,
    InnerReverted = 8,
};
const char* gateway_status_name(GatewayStatus s);

/// Throws Errc::CalldataTooLong when the prefixed payload would exceed
/// max_calldata, Errc::MalformedParams on malformed params.
Bytes gateway_encode(const LeashParams& params, const AccountId& target, ByteView inner_calldata,
                     uint32_t max_calldata = VmConfig{}.max_calldata);

struct GatewayCall {
    uint64_t format_version = 0;
    LeashParams params;
    AccountId target;
    Bytes inner_calldata;
};
GatewayCall gateway_decode(ByteView calldata);

/// The generic gateway script, installed once as a well-known contract.
Script gateway_contract();

/// Reads the status word out of gateway return/revert data; nullopt when the
/// data does not carry a gateway prefix.
std::optional<GatewayStatus> gateway_status_of(ByteView return_data);

} // namespace leashsim
