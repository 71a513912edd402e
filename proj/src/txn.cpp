// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include "leashsim/txn.hpp"

#include "leashsim/errors.hpp"

namespace leashsim {

namespace {

constexpr uint8_t kTxnVersion = 1;
constexpr uint8_t kTxnSignTag = 0x54; // 'T'

constexpr uint8_t kBodyTransfer = 1;
constexpr uint8_t kBodyCall = 2;
constexpr uint8_t kBodyDeploy = 3;

void encode_body(Encoder& enc, const TxnBody& body) {
    if (const auto* t = std::get_if<TransferBody>(&body)) {
        enc.u8(kBodyTransfer);
        enc.account(t->to);
        enc.word(t->amount);
    } else if (const auto* c = std::get_if<CallBody>(&body)) {
        enc.u8(kBodyCall);
        enc.account(c->contract);
        enc.blob(c->calldata);
    } else {
        const auto& d = std::get<DeployBody>(body);
        enc.u8(kBodyDeploy);
        d.script.encode(enc);
        enc.word(d.endowment);
    }
}

TxnBody decode_body(Decoder& dec) {
    switch (dec.u8()) {
        case kBodyTransfer: {
            TransferBody t;
            t.to = dec.account();
            t.amount = dec.word();
            return t;
        }
        case kBodyCall: {
            CallBody c;
            c.contract = dec.account();
            c.calldata = dec.blob();
            return c;
        }
        case kBodyDeploy: {
            DeployBody d;
            d.script = Script::decode(dec);
            d.endowment = dec.word();
            return d;
        }
        default:
            raise(Errc::Malformed, "unknown transaction body tag");
    }
}

void encode_unsigned(Encoder& enc, const SignedTxn& txn) {
    enc.u8(kTxnVersion);
    enc.account(txn.sender);
    enc.word(txn.nonce);
    enc.hash(txn.fork_id);
    enc.word(txn.max_fee);
    enc.optional_field(txn.leash, [&](const LeashParams& p) { p.encode(enc); });
    encode_body(enc, txn.body);
    enc.raw(txn.sender_pub.bytes);
}

} // namespace

Bytes SignedTxn::signed_payload() const {
    Encoder enc;
    enc.u8(kTxnSignTag);
    encode_unsigned(enc, *this);
    return enc.take();
}

void SignedTxn::encode(Encoder& enc) const {
    encode_unsigned(enc, *this);
    enc.raw(signature.bytes);
}

Bytes SignedTxn::serialize() const {
    Encoder enc;
    encode(enc);
    return enc.take();
}

SignedTxn SignedTxn::decode(Decoder& dec) {
    SignedTxn txn;
    if (dec.u8() != kTxnVersion) raise(Errc::Malformed, "unsupported transaction version");
    txn.sender = dec.account();
    txn.nonce = dec.word();
    txn.fork_id = dec.hash();
    txn.max_fee = dec.word();
    if (dec.has_optional()) txn.leash = LeashParams::decode(dec);
    txn.body = decode_body(dec);
    Bytes pk = dec.raw(32);
    std::copy(pk.begin(), pk.end(), txn.sender_pub.bytes.begin());
    Bytes sig = dec.raw(64);
    std::copy(sig.begin(), sig.end(), txn.signature.bytes.begin());
    return txn;
}

SignedTxn SignedTxn::deserialize(ByteView data) {
    Decoder dec(data);
    SignedTxn txn = decode(dec);
    dec.expect_end();
    return txn;
}

bool SignedTxn::verify() const {
    if (eoa_account_id(sender_pub) != sender) return false;
    return verify_signature(sender_pub, signed_payload(), signature);
}

SignedTxn sign_txn(const Keypair& key, const TxnDraft& draft, std::optional<LeashParams> leash) {
    SignedTxn txn;
    txn.sender = eoa_account_id(key.pub);
    txn.nonce = draft.nonce;
    txn.body = draft.body;
    txn.leash = std::move(leash);
    txn.fork_id = draft.fork_id;
    txn.max_fee = draft.max_fee;
    txn.sender_pub = key.pub;
    txn.signature = key.sign(txn.signed_payload());
    return txn;
}

} // namespace leashsim
