// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <set>

#include "leashsim/vm.hpp"

namespace leashsim {

/// All acceptable schedules over a base sequence T: every interleaving of
/// every per-EOA-prefix-closed subset, each EOA's transactions in nonce
/// order. Includes the empty sequence.
struct ScheduleSet {
    std::vector<SignedTxn> base;                // T
    std::vector<std::vector<size_t>> schedules; // index lists into base

    size_t size() const { return schedules.size(); }
    std::vector<SignedTxn> materialize(size_t i) const;
};

/// Exhaustive enumeration. Throws NonceGap when some EOA's nonces in T are
/// not strictly increasing, TooLarge past max_schedules.
ScheduleSet acceptable_schedules(const std::vector<SignedTxn>& txns,
                                 size_t max_schedules = 2'000'000);

enum class ScheduleShape : uint8_t { SingleEoa, IndependentEoas };

/// k+1 for a single EOA; sum over i of k!/i! for k independent EOAs.
BigInt count_closed_form(uint64_t k, ScheduleShape shape);

/// Exact-arithmetic check that `count` < k!·e, via a rational lower bound on
/// e with denominator (k+20)!. No floating point anywhere.
bool count_below_kfact_e(uint64_t k, const BigInt& count);

struct AdversaryAmounts {
    U256 sent = 0;     // W_S
    U256 received = 0; // W_R

    bool operator==(const AdversaryAmounts&) const = default;
};

/// Executes the schedule from db and sums every transfer whose source (sent)
/// or destination (received) is adversary-controlled, script-internal
/// transfers included. Flat fees are not transfers and are excluded.
AdversaryAmounts adversary_amounts(const std::vector<SignedTxn>& schedule, const DbState& db,
                                   const std::set<AccountId>& adversary_accounts,
                                   const BlockCtx& ctx, const VmConfig& config = {});

struct AmountExtremes {
    size_t schedule_count = 0;
    U256 min_sent, max_sent, min_received, max_received;
    size_t argmin_sent = 0, argmax_sent = 0, argmin_received = 0, argmax_received = 0;

    bool operator==(const AmountExtremes&) const = default;
};

/// Per-schedule amounts for the whole set. The parallel path shards the
/// schedule list across OpenMP threads; each schedule's execution is
/// independent, so both paths produce identical vectors.
std::vector<AdversaryAmounts> amounts_per_schedule(const ScheduleSet& set, const DbState& db,
                                                   const std::set<AccountId>& adversary_accounts,
                                                   const BlockCtx& ctx, const VmConfig& config,
                                                   bool parallel);

/// Brute-force extremes over all acceptable schedules. Ties resolve to the
/// lowest schedule index, so serial and parallel runs agree exactly.
/// Throws TooLarge when |T| exceeds k_limit.
AmountExtremes amounts_over_all_schedules(const std::vector<SignedTxn>& txns, const DbState& db,
                                          const std::set<AccountId>& adversary_accounts,
                                          const BlockCtx& ctx, size_t k_limit = 7,
                                          const VmConfig& config = {}, bool parallel = true);

/// Serial reference for the sweep above; kept for tests and the benchmark.
AmountExtremes amounts_over_all_schedules_serial(const std::vector<SignedTxn>& txns,
                                                 const DbState& db,
                                                 const std::set<AccountId>& adversary_accounts,
                                                 const BlockCtx& ctx, size_t k_limit = 7,
                                                 const VmConfig& config = {});

/// The state-dependence counterexample fixture: a parity-payout contract
/// funded with an even balance above the payout, t1 = an odd-amount deposit
/// by an independent EOA, t2 = the owner-triggered payout to the adversary.
struct CounterexampleFixture {
    BlockTree tree;
    DbState db;
    BlockId genesis;
    Hash256 fork_id;
    std::vector<SignedTxn> txns; // (t1, t2)
    AccountId contract;
    AccountId adversary_dest;
    std::set<AccountId> adversary_accounts;

    BlockCtx ctx() const { return BlockCtx::for_child_of(tree, genesis, fork_id); }
};
CounterexampleFixture make_parity_counterexample(uint64_t seed = 1);

} // namespace leashsim
