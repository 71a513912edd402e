// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include "leashsim/winkle.hpp"

#include <algorithm>
#include <map>

#include "leashsim/contracts.hpp"
#include "leashsim/errors.hpp"

namespace leashsim {

std::vector<SignedTxn> ScheduleSet::materialize(size_t i) const {
    std::vector<SignedTxn> out;
    out.reserve(schedules[i].size());
    for (size_t idx : schedules[i]) out.push_back(base[idx]);
    return out;
}

ScheduleSet acceptable_schedules(const std::vector<SignedTxn>& txns, size_t max_schedules) {
    // group transaction indices per sender, in base order
    std::map<AccountId, std::vector<size_t>> per_sender;
    std::vector<AccountId> senders; // first-appearance order
    for (size_t i = 0; i < txns.size(); ++i) {
        auto [it, fresh] = per_sender.try_emplace(txns[i].sender);
        if (fresh) senders.push_back(txns[i].sender);
        it->second.push_back(i);
    }
    for (const auto& [sender, indices] : per_sender) {
        for (size_t j = 1; j < indices.size(); ++j)
            if (txns[indices[j]].nonce <= txns[indices[j - 1]].nonce)
                raise(Errc::NonceGap, "per-EOA nonces must be strictly increasing in T");
    }

    ScheduleSet set;
    set.base = txns;

    std::vector<size_t> consumed(senders.size(), 0);
    std::vector<size_t> current;
    // Every node of this recursion is one acceptable schedule; children
    // extend it with the next-nonce transaction of some EOA.
    auto walk = [&](auto&& self) -> void {
        if (set.schedules.size() >= max_schedules)
            raise(Errc::TooLarge, "schedule enumeration exceeds the configured cap");
        set.schedules.push_back(current);
        for (size_t s = 0; s < senders.size(); ++s) {
            const auto& queue = per_sender[senders[s]];
            if (consumed[s] == queue.size()) continue;
            current.push_back(queue[consumed[s]]);
            ++consumed[s];
            self(self);
            --consumed[s];
            current.pop_back();
        }
    };
    walk(walk);
    return set;
}

BigInt count_closed_form(uint64_t k, ScheduleShape shape) {
    if (shape == ScheduleShape::SingleEoa) return BigInt(k) + 1;
    // sum_{i=0}^{k} k!/i!
    BigInt k_fact = 1;
    for (uint64_t i = 2; i <= k; ++i) k_fact *= i;
    BigInt total = 0;
    BigInt i_fact = 1;
    for (uint64_t i = 0; i <= k; ++i) {
        if (i >= 2) i_fact *= i;
        total += k_fact / i_fact;
    }
    return total;
}

bool count_below_kfact_e(uint64_t k, const BigInt& count) {
    // e > L/N with N = M! and L = sum_{i=0}^{M} M!/i!; then
    // count < k!·e follows from count·N < k!·L.
    uint64_t m = k + 20;
    BigInt n_denom = 1;
    for (uint64_t i = 2; i <= m; ++i) n_denom *= i;
    BigInt l_num = 0;
    BigInt i_fact = 1;
    for (uint64_t i = 0; i <= m; ++i) {
        if (i >= 2) i_fact *= i;
        l_num += n_denom / i_fact;
    }
    BigInt k_fact = 1;
    for (uint64_t i = 2; i <= k; ++i) k_fact *= i;
    return count * n_denom < k_fact * l_num;
}

AdversaryAmounts adversary_amounts(const std::vector<SignedTxn>& schedule, const DbState& db,
                                   const std::set<AccountId>& adversary_accounts,
                                   const BlockCtx& ctx, const VmConfig& config) {
    AdversaryAmounts amounts;
    SequenceResult seq = apply_sequence(db, schedule, ctx, config);
    for (const ApplyResult& r : seq.results) {
        const Applied* applied = std::get_if<Applied>(&r);
        if (!applied) continue;
        for (const TransferEvent& ev : applied->receipt.transfers) {
            if (adversary_accounts.count(ev.from)) amounts.sent += ev.amount;
            if (adversary_accounts.count(ev.to)) amounts.received += ev.amount;
        }
    }
    return amounts;
}

std::vector<AdversaryAmounts> amounts_per_schedule(const ScheduleSet& set, const DbState& db,
                                                   const std::set<AccountId>& adversary_accounts,
                                                   const BlockCtx& ctx, const VmConfig& config,
                                                   bool parallel) {
    std::vector<AdversaryAmounts> per(set.size());
    // Each schedule executes against its own copy of the immutable snapshot,
    // so the loop is embarrassingly parallel and bit-deterministic.
    const auto body = [&](size_t i) {
        per[i] = adversary_amounts(set.materialize(i), db, adversary_accounts, ctx, config);
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (long long i = 0; i < static_cast<long long>(set.size()); ++i)
            body(static_cast<size_t>(i));
    } else {
        for (size_t i = 0; i < set.size(); ++i) body(i);
    }
    return per;
}

namespace {

AmountExtremes reduce_extremes(const std::vector<AdversaryAmounts>& per) {
    AmountExtremes out;
    out.schedule_count = per.size();
    for (size_t i = 0; i < per.size(); ++i) {
        const AdversaryAmounts& a = per[i];
        if (i == 0) {
            out.min_sent = out.max_sent = a.sent;
            out.min_received = out.max_received = a.received;
            continue;
        }
        if (a.sent < out.min_sent) out.min_sent = a.sent, out.argmin_sent = i;
        if (a.sent > out.max_sent) out.max_sent = a.sent, out.argmax_sent = i;
        if (a.received < out.min_received) out.min_received = a.received, out.argmin_received = i;
        if (a.received > out.max_received) out.max_received = a.received, out.argmax_received = i;
    }
    return out;
}

AmountExtremes sweep(const std::vector<SignedTxn>& txns, const DbState& db,
                     const std::set<AccountId>& adversary_accounts, const BlockCtx& ctx,
                     size_t k_limit, const VmConfig& config, bool parallel) {
    if (txns.size() > k_limit)
        raise(Errc::TooLarge, "schedule sweep is factorial; raise k_limit deliberately");
    ScheduleSet set = acceptable_schedules(txns);
    return reduce_extremes(amounts_per_schedule(set, db, adversary_accounts, ctx, config, parallel));
}

} // namespace

AmountExtremes amounts_over_all_schedules(const std::vector<SignedTxn>& txns, const DbState& db,
                                          const std::set<AccountId>& adversary_accounts,
                                          const BlockCtx& ctx, size_t k_limit,
                                          const VmConfig& config, bool parallel) {
    return sweep(txns, db, adversary_accounts, ctx, k_limit, config, parallel);
}

AmountExtremes amounts_over_all_schedules_serial(const std::vector<SignedTxn>& txns,
                                                 const DbState& db,
                                                 const std::set<AccountId>& adversary_accounts,
                                                 const BlockCtx& ctx, size_t k_limit,
                                                 const VmConfig& config) {
    return sweep(txns, db, adversary_accounts, ctx, k_limit, config, /*parallel=*/false);
}

CounterexampleFixture make_parity_counterexample(uint64_t seed) {
    CounterexampleFixture fx;
    Keypair alice = Keypair::derive(seed, "winkle-alice"); // contract owner
    Keypair bob = Keypair::derive(seed, "winkle-bob");     // independent EOA
    AccountId alice_id = eoa_account_id(alice.pub);
    AccountId bob_id = eoa_account_id(bob.pub);
    fx.adversary_dest = account_from_u256(U256(0xc0bb));
    fx.adversary_accounts = {fx.adversary_dest};

    fx.fork_id = sha256(Bytes{'w', 'i', 'n', 'k', 'l', 'e'});
    Block genesis;
    genesis.fork_id = fx.fork_id;

    fx.contract = account_from_u256(U256(0x9a51));
    fx.db.accounts[alice_id].balance = 1'000;
    fx.db.accounts[bob_id].balance = 1'000;
    AccountState contract_state;
    contract_state.balance = 2'000'000; // even, above the payout
    contract_state.code = std::make_shared<const Script>(parity_payout_script(alice_id));
    fx.db.accounts[fx.contract] = std::move(contract_state);

    genesis.state_root = state_root(fx.db);
    fx.genesis = fx.tree.insert_block(genesis);

    // t1: Bob deposits an odd number of base units into the contract
    fx.txns.push_back(sign_txn(bob, {0, TransferBody{fx.contract, 7}, fx.fork_id, 10}));
    // t2: the owner triggers the payout toward the adversary
    auto dest = u256_to_be(u256_from_account(fx.adversary_dest));
    fx.txns.push_back(sign_txn(
        alice, {0, CallBody{fx.contract, Bytes(dest.begin(), dest.end())}, fx.fork_id, 10}));
    return fx;
}

} // namespace leashsim
