// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include "leashsim/bytes.hpp"

#include "leashsim/errors.hpp"

namespace leashsim {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

} // namespace

std::string to_hex(ByteView data) {
    std::string out;
    out.reserve(data.size() * 2);
    for (uint8_t b : data) {
        out.push_back(kHexDigits[b >> 4]);
        out.push_back(kHexDigits[b & 0xf]);
    }
    return out;
}

Bytes from_hex(std::string_view s) {
    if (s.size() >= 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) s.remove_prefix(2);
    if (s.size() % 2 != 0) raise(Errc::Malformed, "odd-length hex string");
    Bytes out(s.size() / 2);
    for (size_t i = 0; i < out.size(); ++i) {
        int hi = nibble(s[2 * i]);
        int lo = nibble(s[2 * i + 1]);
        if (hi < 0 || lo < 0) raise(Errc::Malformed, "bad hex digit");
        out[i] = static_cast<uint8_t>((hi << 4) | lo);
    }
    return out;
}

std::string Hash256::hex() const { return to_hex(bytes); }

Hash256 Hash256::from_hex(std::string_view s) {
    Bytes raw = leashsim::from_hex(s);
    if (raw.size() != 32) raise(Errc::Malformed, "hash hex must decode to 32 bytes");
    Hash256 h;
    std::copy(raw.begin(), raw.end(), h.bytes.begin());
    return h;
}

std::string AccountId::hex() const { return to_hex(bytes); }

AccountId AccountId::from_hex(std::string_view s) {
    Bytes raw = leashsim::from_hex(s);
    if (raw.size() != 32) raise(Errc::Malformed, "account hex must decode to 32 bytes");
    AccountId a;
    std::copy(raw.begin(), raw.end(), a.bytes.begin());
    return a;
}

} // namespace leashsim
