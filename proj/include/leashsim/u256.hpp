// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>

#include "leashsim/bytes.hpp"

namespace leashsim {

/// Ledger word: nonces, balances, storage addresses and values.
using U256 = boost::multiprecision::uint256_t;

/// Unbounded integer for the schedule-counting arithmetic.
using BigInt = boost::multiprecision::cpp_int;

/// Big-endian 32-byte encoding, the canonical wire form of a word.
std::array<uint8_t, 32> u256_to_be(const U256& v);
U256 u256_from_be(ByteView be32);

inline U256 u256_from_hash(const Hash256& h) { return u256_from_be(h.bytes); }
inline U256 u256_from_account(const AccountId& a) { return u256_from_be(a.bytes); }
inline Hash256 hash_from_u256(const U256& v) { return Hash256{u256_to_be(v)}; }
inline AccountId account_from_u256(const U256& v) { return AccountId{u256_to_be(v)}; }

// Checked arithmetic. No silent wraparound: overflow/underflow yields nullopt
// and the VM turns that into a revert.
std::optional<U256> checked_add(const U256& a, const U256& b);
std::optional<U256> checked_sub(const U256& a, const U256& b);
std::optional<U256> checked_mul(const U256& a, const U256& b);

std::string u256_dec(const U256& v);

} // namespace leashsim
