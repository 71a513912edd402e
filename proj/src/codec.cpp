// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include "leashsim/codec.hpp"

namespace leashsim {

void Encoder::u32(uint32_t v) {
    out_.push_back(static_cast<uint8_t>(v >> 24));
    out_.push_back(static_cast<uint8_t>(v >> 16));
    out_.push_back(static_cast<uint8_t>(v >> 8));
    out_.push_back(static_cast<uint8_t>(v));
}

void Encoder::u64(uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8)
        out_.push_back(static_cast<uint8_t>(v >> shift));
}

void Encoder::word(const U256& v) {
    auto be = u256_to_be(v);
    raw(be);
}

void Encoder::hash(const Hash256& h) { raw(h.bytes); }

void Encoder::account(const AccountId& a) { raw(a.bytes); }

void Encoder::blob(ByteView data) {
    u32(static_cast<uint32_t>(data.size()));
    raw(data);
}

void Encoder::raw(ByteView data) { out_.insert(out_.end(), data.begin(), data.end()); }

ByteView Decoder::need(size_t n) {
    if (data_.size() - pos_ < n) raise(Errc::Malformed, "truncated input");
    ByteView view = data_.subspan(pos_, n);
    pos_ += n;
    return view;
}

uint8_t Decoder::u8() { return need(1)[0]; }

uint32_t Decoder::u32() {
    auto v = need(4);
    return (uint32_t(v[0]) << 24) | (uint32_t(v[1]) << 16) | (uint32_t(v[2]) << 8) | uint32_t(v[3]);
}

uint64_t Decoder::u64() {
    auto v = need(8);
    uint64_t out = 0;
    for (uint8_t b : v) out = (out << 8) | b;
    return out;
}

U256 Decoder::word() { return u256_from_be(need(32)); }

Hash256 Decoder::hash() {
    auto v = need(32);
    Hash256 h;
    std::copy(v.begin(), v.end(), h.bytes.begin());
    return h;
}

AccountId Decoder::account() {
    auto v = need(32);
    AccountId a;
    std::copy(v.begin(), v.end(), a.bytes.begin());
    return a;
}

Bytes Decoder::blob() {
    uint32_t n = u32();
    auto v = need(n);
    return Bytes(v.begin(), v.end());
}

Bytes Decoder::raw(size_t n) {
    auto v = need(n);
    return Bytes(v.begin(), v.end());
}

} // namespace leashsim
