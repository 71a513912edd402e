// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include "leashsim/leash.hpp"

#include <sstream>

#include "leashsim/errors.hpp"

namespace leashsim {

std::optional<LeashReason> leash_check(const LeashParams& params, const BlockCtx& ctx) {
    if (params.fork_id != ctx.fork_id) return LeashReason::ForkMismatch;
    if (params.length == 0) return LeashReason::LeashExpired;
    uint64_t parent_depth = ctx.tree->depth(ctx.parent);
    // Malformed params never reach here via make_leash; saturate defensively.
    uint64_t limit = params.anchor_height > UINT64_MAX - params.length
                         ? UINT64_MAX
                         : params.anchor_height + params.length;
    if (parent_depth >= limit) return LeashReason::LeashExpired;
    if (parent_depth < params.anchor_height) return LeashReason::AnchorInFuture;
    BlockId anchor = ctx.tree->up(ctx.parent, parent_depth - params.anchor_height);
    if (anchor.digest != params.anchor_hash) return LeashReason::AnchorHashMismatch;
    return std::nullopt;
}

SignedTxn wrap_metadata(const Keypair& key, const TxnDraft& draft, const LeashParams& params) {
    if (!params.well_formed()) raise(Errc::MalformedParams, "anchor height + length overflows");
    return sign_txn(key, draft, params);
}

namespace {

std::string word_literal(const U256& v) { return "0x" + to_hex(u256_to_be(v)); }
std::string hash_literal(const Hash256& h) { return "0x" + h.hex(); }
std::string account_literal(const AccountId& a) { return "0x" + a.hex(); }

} // namespace

Script wrap_script(const AccountId& target, const LeashParams& params, bool full_domain) {
    if (!params.well_formed()) raise(Errc::MalformedParams, "anchor height + length overflows");
    std::ostringstream s;
    s << "; leash wrapper: check, then forward the whole calldata\n"
      << "push " << hash_literal(params.fork_id) << "\n"
      << "chainid\n"
      << "eq\niszero\npush :bad\njumpi\n"
      // expired unless depth < i + l
      << "push " << (params.anchor_height + params.length) << "\n"
      << "push 1\nblocknumber\nsub\n" // depth = blocknumber - 1
      << "lt\niszero\npush :bad\njumpi\n"
      // anchor in the future unless depth >= i
      << "push " << params.anchor_height << "\n"
      << "push 1\nblocknumber\nsub\n"
      << "lt\npush :bad\njumpi\n"
      // anchor hash must match
      << "push " << hash_literal(params.anchor_hash) << "\n"
      << "push " << params.anchor_height << "\n"
      << (full_domain ? "blockhash_fd\n" : "blockhash\n")
      << "eq\niszero\npush :bad\njumpi\n"
      // forward
      << "calldatasize\npush 0\n"
      << "push " << account_literal(target) << "\n"
      << "call\niszero\npush :bad\njumpi\n"
      << "outretdata\nreturnout\n"
      << "label bad\n"
      << "revert\n";
    return assemble(s.str());
}

Bytes gateway_encode(const LeashParams& params, const AccountId& target, ByteView inner_calldata,
                     uint32_t max_calldata) {
    if (!params.well_formed()) raise(Errc::MalformedParams, "anchor height + length overflows");
    if (kGatewayPrefixBytes + inner_calldata.size() > max_calldata)
        raise(Errc::CalldataTooLong, "prefixed calldata exceeds the configured maximum");
    Encoder enc;
    enc.word(kGatewayFormatVersion);
    enc.raw(params.fork_id.bytes);
    enc.word(params.anchor_height);
    enc.raw(params.anchor_hash.bytes);
    enc.word(params.length);
    enc.raw(target.bytes);
    enc.word(0); // reserved
    enc.raw(inner_calldata);
    return enc.take();
}

GatewayCall gateway_decode(ByteView calldata) {
    if (calldata.size() < kGatewayPrefixBytes)
        raise(Errc::Malformed, "calldata shorter than the gateway prefix");
    Decoder dec(calldata);
    GatewayCall call;
    U256 version = dec.word();
    if (version != kGatewayFormatVersion) raise(Errc::Malformed, "unknown gateway format version");
    call.format_version = static_cast<uint64_t>(version);
    call.params.fork_id = dec.hash();
    U256 height = dec.word();
    if (height > UINT64_MAX) raise(Errc::Malformed, "anchor height exceeds 64 bits");
    call.params.anchor_height = static_cast<uint64_t>(height);
    call.params.anchor_hash = dec.hash();
    U256 length = dec.word();
    if (length > UINT64_MAX) raise(Errc::Malformed, "leash length exceeds 64 bits");
    call.params.length = static_cast<uint64_t>(length);
    call.target = dec.account();
    if (dec.word() != 0) raise(Errc::Malformed, "reserved word must be zero");
    call.inner_calldata = dec.raw(dec.remaining());
    return call;
}

Script gateway_contract() {
    // Calldata word offsets: 0 version, 32 fork, 64 i, 96 v, 128 l, 160 target.
    static const char* text = R"(
; generic leash gateway
push 224
calldatasize
lt
push :malformed
jumpi
push 1
push 0
calldataword
eq
iszero
push :malformed
jumpi
; fork identity
push 32
calldataword
chainid
eq
iszero
push :fork
jumpi
; expired unless depth < i + l
push 128
calldataword
push 64
calldataword
add
push 1
blocknumber
sub
lt
iszero
push :expired
jumpi
; anchor in the future unless depth >= i
push 64
calldataword
push 1
blocknumber
sub
lt
push :future
jumpi
; anchor hash
push 96
calldataword
push 64
calldataword
blockhash_fd
eq
iszero
push :anchor
jumpi
; target must have code
push 160
calldataword
hascode
iszero
push :notarget
jumpi
; forward inner calldata
push 224
calldatasize
sub
push 224
push 160
calldataword
call
iszero
push :inner
jumpi
; success prefix [1, 96, len] then the inner return bytes
push 1
outword
push 96
outword
returndatasize
outword
outretdata
returnout
label malformed
push 2
push 1
push :fail
jumpi
label fork
push 3
push 1
push :fail
jumpi
label future
push 4
push 1
push :fail
jumpi
label expired
push 5
push 1
push :fail
jumpi
label anchor
push 6
push 1
push :fail
jumpi
label notarget
push 7
push 1
push :fail
jumpi
label inner
push 8
label fail
outword
push 96
outword
push 0
outword
revert
)";
    static const Script script = assemble(text);
    return script;
}

const char* gateway_status_name(GatewayStatus s) {
    switch (s) {
        case GatewayStatus::Ok: return "Ok";
        case GatewayStatus::MalformedPrefix: return "MalformedPrefix";
        case GatewayStatus::ForkMismatch: return "ForkMismatch";
        case GatewayStatus::AnchorInFuture: return "AnchorInFuture";
        case GatewayStatus::LeashExpired: return "LeashExpired";
        case GatewayStatus::AnchorHashMismatch: return "AnchorHashMismatch";
        case GatewayStatus::TargetMissing: return "TargetMissing";
        case GatewayStatus::InnerReverted: return "InnerReverted";
    }
    return "?";
}

std::optional<GatewayStatus> gateway_status_of(ByteView return_data) {
    if (return_data.size() < kGatewayReturnPrefixBytes) return std::nullopt;
    U256 status = u256_from_be(return_data.subspan(0, 32));
    U256 offset = u256_from_be(return_data.subspan(32, 32));
    if (offset != kGatewayReturnPrefixBytes) return std::nullopt;
    if (status == 0 || status > uint64_t(GatewayStatus::InnerReverted)) return std::nullopt;
    return static_cast<GatewayStatus>(static_cast<uint64_t>(status));
}

} // namespace leashsim
