// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include "leashsim/committee.hpp"

#include <algorithm>
#include <set>

#include "leashsim/errors.hpp"

namespace leashsim {

namespace {
constexpr uint8_t kTransitionSignTag = 0x43; // 'C'
}

bool Committee::is_member(const PubKey& pk) const {
    return std::find(members.begin(), members.end(), pk) != members.end();
}

void Committee::encode(Encoder& enc) const {
    enc.u64(epoch);
    enc.u32(threshold);
    enc.u32(static_cast<uint32_t>(members.size()));
    for (const PubKey& m : members) enc.raw(m.bytes);
}

Committee Committee::decode(Decoder& dec) {
    Committee c;
    c.epoch = dec.u64();
    c.threshold = dec.u32();
    uint32_t n = dec.u32();
    c.members.reserve(n);
    for (uint32_t i = 0; i < n; ++i) {
        PubKey pk;
        Bytes raw = dec.raw(32);
        std::copy(raw.begin(), raw.end(), pk.bytes.begin());
        c.members.push_back(pk);
    }
    return c;
}

Bytes Committee::serialize() const {
    Encoder enc;
    encode(enc);
    return enc.take();
}

void TransitionRecord::encode(Encoder& enc) const {
    new_committee.encode(enc);
    enc.u32(static_cast<uint32_t>(approvals.size()));
    for (const auto& [pk, sig] : approvals) {
        enc.raw(pk.bytes);
        enc.raw(sig.bytes);
    }
}

TransitionRecord TransitionRecord::decode(Decoder& dec) {
    TransitionRecord r;
    r.new_committee = Committee::decode(dec);
    uint32_t n = dec.u32();
    r.approvals.reserve(n);
    for (uint32_t i = 0; i < n; ++i) {
        PubKey pk;
        Signature sig;
        Bytes rawpk = dec.raw(32);
        std::copy(rawpk.begin(), rawpk.end(), pk.bytes.begin());
        Bytes rawsig = dec.raw(64);
        std::copy(rawsig.begin(), rawsig.end(), sig.bytes.begin());
        r.approvals.emplace_back(pk, sig);
    }
    return r;
}

Bytes transition_sign_message(const Committee& next) {
    Encoder enc;
    enc.u8(kTransitionSignTag);
    next.encode(enc);
    return enc.take();
}

TransitionRecord register_transition(const Committee& parent, const Committee& next,
                                     std::span<const Keypair> signers) {
    TransitionRecord record;
    record.new_committee = next;
    Bytes message = transition_sign_message(next);
    size_t member_signers = 0;
    for (const Keypair& key : signers) {
        record.approvals.emplace_back(key.pub, key.sign(message));
        if (parent.is_member(key.pub)) ++member_signers;
    }
    std::sort(record.approvals.begin(), record.approvals.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    if (member_signers < parent.threshold)
        raise(Errc::BadQuorum, "transition signers below parent committee threshold");
    return record;
}

bool verify_transition(const Committee& parent, const TransitionRecord& record) {
    if (!record.new_committee.well_formed()) return false;
    if (record.new_committee.epoch != parent.epoch + 1) return false;
    Bytes message = transition_sign_message(record.new_committee);
    std::set<PubKey> counted;
    for (const auto& [pk, sig] : record.approvals) {
        if (!parent.is_member(pk)) continue;
        if (counted.count(pk)) continue;
        if (verify_signature(pk, message, sig)) counted.insert(pk);
    }
    return counted.size() >= parent.threshold;
}

} // namespace leashsim
