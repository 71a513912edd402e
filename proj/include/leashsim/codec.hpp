// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <optional>

#include "leashsim/bytes.hpp"
#include "leashsim/errors.hpp"
#include "leashsim/u256.hpp"

namespace leashsim {

// Canonical serialization: fixed field order, big-endian integers,
// u32-length-prefixed variable-size fields. Distinct field tuples always
// yield distinct byte streams, which is what content addressing needs.

class Encoder {
  public:
    void u8(uint8_t v) { out_.push_back(v); }
    void u32(uint32_t v);
    void u64(uint64_t v);
    void word(const U256& v);               // 32 bytes, big-endian
    void hash(const Hash256& h);            // 32 bytes
    void account(const AccountId& a);       // 32 bytes
    void blob(ByteView data);               // u32 length prefix + bytes
    void raw(ByteView data);                // no prefix; fixed-size fields only

    template <class T>
    void optional_field(const std::optional<T>& v, auto&& write) {
        u8(v.has_value() ? 1 : 0);
        if (v) write(*v);
    }

    const Bytes& bytes() const { return out_; }
    Bytes take() { return std::move(out_); }

  private:
    Bytes out_;
};

/// Bounds-checked reader over a byte view; throws Errc::Malformed on
/// truncation or trailing garbage.
class Decoder {
  public:
    explicit Decoder(ByteView data) : data_(data) {}

    uint8_t u8();
    uint32_t u32();
    uint64_t u64();
    U256 word();
    Hash256 hash();
    AccountId account();
    Bytes blob();
    Bytes raw(size_t n);

    bool has_optional() { return u8() != 0; }

    size_t remaining() const { return data_.size() - pos_; }
    void expect_end() const {
        if (pos_ != data_.size()) raise(Errc::Malformed, "trailing bytes");
    }

  private:
    ByteView need(size_t n);
    ByteView data_;
    size_t pos_ = 0;
};

} // namespace leashsim
