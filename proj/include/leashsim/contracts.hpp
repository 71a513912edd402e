// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "leashsim/script.hpp"

namespace leashsim {

struct AccountId;

/// Owner-triggered payout whose amount depends on the parity of the
/// contract's own balance: 1,000,000 base units when even, 1 when odd.
/// The destination is calldata word 0. Anyone but the owner reverts.
Script parity_payout_script(const AccountId& owner);

constexpr uint64_t kParityPayoutEven = 1'000'000;
constexpr uint64_t kParityPayoutOdd = 1;

/// storage[0] += 1.
Script counter_script();

/// Returns the caller id as one word.
Script echo_caller_script();

/// Stores calldata word 0 at storage slot (calldata word 1).
Script store_script();

/// Custodial payments: storage slot (caller id) holds the caller's deposit.
/// Calldata [dest, amount] pays out of the caller's deposit via a real token
/// transfer from the contract; overdrafts revert.
Script vault_pay_script();

} // namespace leashsim
