// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "leashsim/errors.hpp"
#include "leashsim/winkle.hpp"

using namespace leashsim;
using namespace leashsim::test;

namespace {

/// T with `senders` EOAs and `per_sender` transactions each (simple
/// transfers), nonces in order.
struct ScheduleFixture {
    BlockTree tree;
    Hash256 fork = fork_id_of("main");
    DbState db;
    std::vector<SignedTxn> txns;
    std::vector<Keypair> keys;
    BlockId genesis;

    ScheduleFixture(size_t senders, size_t per_sender, uint64_t seed = 4) {
        Block g;
        g.fork_id = fork;
        genesis = tree.insert_block(g);
        AccountId sink = account_from_u256(U256(0xabcdef));
        for (size_t s = 0; s < senders; ++s) {
            Keypair k = Keypair::derive(seed, "eoa" + std::to_string(s));
            keys.push_back(k);
            db.accounts[eoa_account_id(k.pub)].balance = 1'000'000;
        }
        for (size_t n = 0; n < per_sender; ++n)
            for (size_t s = 0; s < senders; ++s)
                txns.push_back(sign_txn(keys[s], {U256(n), TransferBody{sink, 10}, fork, 10}));
    }

    BlockCtx ctx() const { return BlockCtx::for_child_of(tree, genesis, fork); }
};

uint64_t factorial_sum(uint64_t k) {
    // sum_{i=0}^{k} k!/i! in plain integers, small k only
    uint64_t kf = 1;
    for (uint64_t i = 2; i <= k; ++i) kf *= i;
    uint64_t total = 0;
    uint64_t inf = 1;
    for (uint64_t i = 0; i <= k; ++i) {
        if (i >= 2) inf *= i;
        total += kf / inf;
    }
    return total;
}

} // namespace

TEST_CASE("single-EOA schedules are exactly the prefixes") {
    ScheduleFixture fx(1, 3);
    ScheduleSet set = acceptable_schedules(fx.txns);
    REQUIRE(set.size() == 4); // (), (t1), (t1,t2), (t1,t2,t3)
    std::set<std::vector<size_t>> expect = {{}, {0}, {0, 1}, {0, 1, 2}};
    std::set<std::vector<size_t>> got(set.schedules.begin(), set.schedules.end());
    CHECK(got == expect);
}

TEST_CASE("independent EOAs: 2 -> 5 and 3 -> 16, enumeration vs closed form") {
    CHECK(acceptable_schedules(ScheduleFixture(2, 1).txns).size() == 5);
    CHECK(acceptable_schedules(ScheduleFixture(3, 1).txns).size() == 16);
    CHECK(count_closed_form(2, ScheduleShape::IndependentEoas) == 5);
    CHECK(count_closed_form(3, ScheduleShape::IndependentEoas) == 16);
    CHECK(count_closed_form(6, ScheduleShape::IndependentEoas) == 1957);
    CHECK(count_closed_form(0, ScheduleShape::IndependentEoas) == 1);
    CHECK(count_closed_form(0, ScheduleShape::SingleEoa) == 1);
    CHECK(count_closed_form(5, ScheduleShape::SingleEoa) == 6);
}

TEST_CASE("enumeration agrees with the closed forms across the sweep range") {
    for (uint64_t k = 0; k <= 8; ++k) {
        ScheduleFixture fx(1, k);
        CHECK(acceptable_schedules(fx.txns).size() ==
              static_cast<size_t>(count_closed_form(k, ScheduleShape::SingleEoa)));
    }
    for (uint64_t k = 0; k <= 6; ++k) {
        ScheduleFixture fx(k, 1);
        ScheduleSet set = acceptable_schedules(fx.txns);
        CHECK(set.size() == static_cast<size_t>(count_closed_form(k, ScheduleShape::IndependentEoas)));
        CHECK(set.size() == factorial_sum(k));
        // distinctness of emitted sequences
        std::set<std::vector<size_t>> uniq(set.schedules.begin(), set.schedules.end());
        CHECK(uniq.size() == set.size());
    }
}

TEST_CASE("every schedule preserves per-EOA prefix order") {
    ScheduleFixture fx(3, 2, 9);
    ScheduleSet set = acceptable_schedules(fx.txns);
    for (const auto& schedule : set.schedules) {
        std::map<AccountId, std::vector<U256>> seen;
        for (size_t idx : schedule) seen[fx.txns[idx].sender].push_back(fx.txns[idx].nonce);
        for (const auto& [sender, nonces] : seen)
            for (size_t i = 0; i < nonces.size(); ++i)
                CHECK(nonces[i] == i); // a prefix 0,1,2,... of that EOA's nonces
    }
}

TEST_CASE("exact-arithmetic bound: counts stay below k!·e") {
    for (uint64_t k = 1; k <= 6; ++k)
        CHECK(count_below_kfact_e(k, count_closed_form(k, ScheduleShape::IndependentEoas)));
    for (uint64_t k = 1; k <= 8; ++k)
        CHECK(count_below_kfact_e(k, count_closed_form(k, ScheduleShape::SingleEoa)));
    // sanity: the bound is tight enough to reject k!·e itself rounded up
    BigInt too_big = count_closed_form(6, ScheduleShape::IndependentEoas) + 2;
    CHECK(!count_below_kfact_e(6, too_big));
}

TEST_CASE("malformed T: nonce gaps rejected") {
    ScheduleFixture fx(1, 2);
    std::vector<SignedTxn> bad = {fx.txns[1], fx.txns[0]}; // nonces 1 then 0
    CHECK_THROWS_WITH_AS(acceptable_schedules(bad), doctest::Contains("NonceGap"), Error);
}

TEST_CASE("adversary amounts: empty schedule is zero, transfers tally by side") {
    CounterexampleFixture fx = make_parity_counterexample();
    CHECK(adversary_amounts({}, fx.db, fx.adversary_accounts, fx.ctx()) == AdversaryAmounts{});

    // the full schedule (t1, t2): odd deposit first, payout becomes 1
    AdversaryAmounts full =
        adversary_amounts(fx.txns, fx.db, fx.adversary_accounts, fx.ctx());
    CHECK(full.received == 1);
    CHECK(full.sent == 0);

    // (t2) alone: even balance pays the full million
    AdversaryAmounts alone =
        adversary_amounts({fx.txns[1]}, fx.db, fx.adversary_accounts, fx.ctx());
    CHECK(alone.received == 1'000'000);

    // the literal refutation: schedule amounts are state dependent
    CHECK(full.received != alone.received);
}

TEST_CASE("amounts over all schedules: counterexample extremes") {
    CounterexampleFixture fx = make_parity_counterexample();
    AmountExtremes ext =
        amounts_over_all_schedules(fx.txns, fx.db, fx.adversary_accounts, fx.ctx());
    CHECK(ext.schedule_count == 5); // two independent EOAs
    CHECK(ext.max_received == 1'000'000);
    CHECK(ext.min_received == 0); // the empty schedule
    // and the max is achieved by a schedule other than the full one
    AdversaryAmounts full = adversary_amounts(fx.txns, fx.db, fx.adversary_accounts, fx.ctx());
    CHECK(ext.max_received != full.received);
}

TEST_CASE("parallel sweep equals the serial reference") {
    ScheduleFixture fx(5, 1, 77);
    AccountId sink = account_from_u256(U256(0xabcdef));
    std::set<AccountId> advs = {sink};
    AmountExtremes par = amounts_over_all_schedules(fx.txns, fx.db, advs, fx.ctx());
    AmountExtremes ser = amounts_over_all_schedules_serial(fx.txns, fx.db, advs, fx.ctx());
    CHECK(par == ser);
    CHECK(par.schedule_count == factorial_sum(5));
    // pure transfers: max received is the sum of all adversary-bound amounts
    CHECK(par.max_received == U256(10) * 5);
    CHECK(par.min_received == 0);

    ScheduleSet set = acceptable_schedules(fx.txns);
    auto per_par = amounts_per_schedule(set, fx.db, advs, fx.ctx(), VmConfig{}, true);
    auto per_ser = amounts_per_schedule(set, fx.db, advs, fx.ctx(), VmConfig{}, false);
    CHECK(per_par == per_ser);
}

TEST_CASE("single-EOA contract-free transfers: received amount is monotone along prefixes") {
    ScheduleFixture fx(1, 6);
    AccountId sink = account_from_u256(U256(0xabcdef));
    std::set<AccountId> advs = {sink};
    ScheduleSet set = acceptable_schedules(fx.txns);
    // prefixes sorted by length
    std::vector<U256> received(set.size());
    for (size_t i = 0; i < set.size(); ++i)
        received[set.schedules[i].size()] =
            adversary_amounts(set.materialize(i), fx.db, advs, fx.ctx()).received;
    for (size_t len = 1; len < received.size(); ++len) CHECK(received[len] >= received[len - 1]);
}

TEST_CASE("k limit guard") {
    ScheduleFixture fx(8, 1);
    std::set<AccountId> advs;
    CHECK_THROWS_WITH_AS(amounts_over_all_schedules(fx.txns, fx.db, advs, fx.ctx(), 7),
                         doctest::Contains("TooLarge"), Error);
}
