// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "leashsim/contracts.hpp"
#include "leashsim/errors.hpp"
#include "leashsim/vm.hpp"

using namespace leashsim;
using namespace leashsim::test;

namespace {

struct VmFixture {
    BlockTree tree;
    std::vector<BlockId> chain;
    Keypair alice = Keypair::derive(1, "alice");
    Keypair bob = Keypair::derive(1, "bob");
    AccountId alice_id = eoa_account_id(alice.pub);
    AccountId bob_id = eoa_account_id(bob.pub);
    Hash256 fork = fork_id_of("main");
    DbState db;
    VmConfig config;

    explicit VmFixture(size_t chain_len = 12) {
        chain = bare_chain(tree, chain_len);
        db.accounts[alice_id].balance = 1'000'000;
        db.accounts[bob_id].balance = 500'000;
    }

    BlockCtx ctx(uint32_t window = 256) const {
        return BlockCtx::for_child_of(tree, chain.back(), fork, window);
    }

    SignedTxn transfer(const Keypair& from, const AccountId& to, uint64_t amount, U256 nonce) {
        return sign_txn(from, {nonce, TransferBody{to, amount}, fork, config.base_fee});
    }

    AccountId install(const Script& script, U256 balance = 0) {
        AccountId id = account_from_u256(U256(0xC0DE0000) + U256(db.accounts.size()));
        AccountState st;
        st.balance = balance;
        st.code = std::make_shared<const Script>(script);
        db.accounts[id] = std::move(st);
        return id;
    }
};

const Applied& applied(const ApplyResult& r) {
    REQUIRE(std::holds_alternative<Applied>(r));
    return std::get<Applied>(r);
}

} // namespace

TEST_CASE("transfer commits and moves exactly amount plus fee") {
    VmFixture fx;
    U256 supply = fx.db.total_supply();
    auto res = applied(apply_txn(fx.db, fx.transfer(fx.alice, fx.bob_id, 5, 0), fx.ctx()));
    CHECK(res.receipt.committed());
    CHECK(res.state.balance_of(fx.alice_id) == U256(1'000'000) - 5 - fx.config.base_fee);
    CHECK(res.state.balance_of(fx.bob_id) == U256(500'005));
    CHECK(res.state.balance_of(fee_sink_account()) == fx.config.base_fee);
    CHECK(res.state.total_supply() == supply);
    REQUIRE(res.receipt.transfers.size() == 1);
    CHECK(res.receipt.transfers[0] == TransferEvent{fx.alice_id, fx.bob_id, 5});
}

TEST_CASE("sequencing errors do not touch the chain") {
    VmFixture fx;

    SUBCASE("bad signature") {
        SignedTxn txn = fx.transfer(fx.alice, fx.bob_id, 5, 0);
        txn.signature.bytes[0] ^= 1;
        auto r = apply_txn(fx.db, txn, fx.ctx());
        REQUIRE(std::holds_alternative<SequencingError>(r));
        CHECK(std::get<SequencingError>(r) == SequencingError::BadSignature);
    }
    SUBCASE("stripping the leash breaks the signature") {
        SignedTxn txn = sign_txn(fx.alice, {0, TransferBody{fx.bob_id, 5}, fx.fork, 10},
                                 make_leash(0, fx.chain[0].digest, 4, fx.fork));
        txn.leash.reset();
        auto r = apply_txn(fx.db, txn, fx.ctx());
        REQUIRE(std::holds_alternative<SequencingError>(r));
        CHECK(std::get<SequencingError>(r) == SequencingError::BadSignature);
    }
    SUBCASE("bad nonce") {
        auto r = apply_txn(fx.db, fx.transfer(fx.alice, fx.bob_id, 5, 3), fx.ctx());
        REQUIRE(std::holds_alternative<SequencingError>(r));
        CHECK(std::get<SequencingError>(r) == SequencingError::BadNonce);
    }
    SUBCASE("fee unaffordable or unoffered") {
        Keypair pauper = Keypair::derive(1, "pauper");
        auto r = apply_txn(fx.db, fx.transfer(pauper, fx.bob_id, 1, 0), fx.ctx());
        REQUIRE(std::holds_alternative<SequencingError>(r));
        CHECK(std::get<SequencingError>(r) == SequencingError::InsufficientFee);

        SignedTxn cheap = sign_txn(fx.alice, {0, TransferBody{fx.bob_id, 5}, fx.fork, U256(1)});
        auto r2 = apply_txn(fx.db, cheap, fx.ctx());
        REQUIRE(std::holds_alternative<SequencingError>(r2));
        CHECK(std::get<SequencingError>(r2) == SequencingError::InsufficientFee);
    }
}

TEST_CASE("revert changes only nonce and balance (fee), storage untouched") {
    VmFixture fx;
    AccountId victim = fx.install(assemble("push 1\npush 0\nsstore\nrevert"), 100);
    fx.db.accounts[victim].storage[U256(7)] = U256(99);

    SignedTxn txn = sign_txn(fx.alice, {0, CallBody{victim, {}}, fx.fork, 10});
    auto res = applied(apply_txn(fx.db, txn, fx.ctx()));
    CHECK(res.receipt.status == TxnStatus::Reverted);
    CHECK(res.receipt.revert_cause == "script_revert");
    CHECK(res.receipt.transfers.empty());
    // storage identical to pre-state
    CHECK(res.state.accounts.at(victim).storage == fx.db.accounts.at(victim).storage);
    // nonce advanced, fee charged
    CHECK(res.state.accounts.at(fx.alice_id).nonce == 1);
    CHECK(res.state.balance_of(fx.alice_id) == U256(1'000'000) - fx.config.base_fee);
    CHECK(res.state.total_supply() == fx.db.total_supply());
}

TEST_CASE("blockhash: windowed zero vs full-domain ancestor digest") {
    VmFixture fx(310);
    uint64_t k = 10; // 300 behind the block under construction (height 310)
    std::ostringstream probe;
    probe << "push " << k << "\nblockhash\noutword\npush " << k
          << "\nblockhash_fd\noutword\nreturnout\n";
    AccountId prober = fx.install(assemble(probe.str()));

    SignedTxn txn = sign_txn(fx.alice, {0, CallBody{prober, {}}, fx.fork, 10});
    auto res = applied(apply_txn(fx.db, txn, fx.ctx()));
    REQUIRE(res.receipt.committed());
    REQUIRE(res.receipt.return_data.size() == 64);
    U256 windowed = u256_from_be(ByteView(res.receipt.return_data).subspan(0, 32));
    U256 full = u256_from_be(ByteView(res.receipt.return_data).subspan(32, 32));
    CHECK(windowed == 0);
    CHECK(full == u256_from_hash(fx.chain[k].digest));

    // inside the window both agree
    std::ostringstream near;
    near << "push 309\nblockhash\noutword\nreturnout\n";
    AccountId np = fx.install(assemble(near.str()));
    auto res2 = applied(apply_txn(fx.db, sign_txn(fx.alice, {0, CallBody{np, {}}, fx.fork, 10}),
                                  fx.ctx()));
    CHECK(u256_from_be(ByteView(res2.receipt.return_data).subspan(0, 32)) ==
          u256_from_hash(fx.chain[309].digest));
}

TEST_CASE("parity payout pays 1,000,000 on even balance and 1 on odd") {
    VmFixture fx;
    AccountId contract = fx.install(parity_payout_script(fx.alice_id), 2'000'000); // even
    AccountId dest = account_from_u256(U256(0xdead));
    Bytes calldata(u256_to_be(u256_from_account(dest)).begin(),
                   u256_to_be(u256_from_account(dest)).end());

    SUBCASE("even balance pays the full million") {
        auto res =
            applied(apply_txn(fx.db, sign_txn(fx.alice, {0, CallBody{contract, calldata}, fx.fork, 10}),
                              fx.ctx()));
        REQUIRE(res.receipt.committed());
        CHECK(res.state.balance_of(dest) == kParityPayoutEven);
        REQUIRE(res.receipt.transfers.size() == 1);
        CHECK(res.receipt.transfers[0].amount == kParityPayoutEven);
    }
    SUBCASE("odd balance pays one base unit") {
        fx.db.accounts[contract].balance += 1; // odd now
        auto res =
            applied(apply_txn(fx.db, sign_txn(fx.alice, {0, CallBody{contract, calldata}, fx.fork, 10}),
                              fx.ctx()));
        REQUIRE(res.receipt.committed());
        CHECK(res.state.balance_of(dest) == kParityPayoutOdd);
    }
    SUBCASE("non-owner reverts") {
        auto res =
            applied(apply_txn(fx.db, sign_txn(fx.bob, {0, CallBody{contract, calldata}, fx.fork, 10}),
                              fx.ctx()));
        CHECK(res.receipt.status == TxnStatus::Reverted);
        CHECK(res.state.balance_of(dest) == 0);
    }
}

TEST_CASE("script `return caller` echoes the caller id") {
    VmFixture fx;
    AccountId echo = fx.install(echo_caller_script());
    auto res = applied(
        apply_txn(fx.db, sign_txn(fx.alice, {0, CallBody{echo, {}}, fx.fork, 10}), fx.ctx()));
    REQUIRE(res.receipt.committed());
    CHECK(u256_from_be(res.receipt.return_data) == u256_from_account(fx.alice_id));
}

TEST_CASE("checked arithmetic and gas: overflow and exhaustion revert") {
    VmFixture fx;
    U256 max = ~U256(0);
    AccountId boom = fx.install(assemble("push 0x" + to_hex(u256_to_be(max)) + "\npush 1\nadd\nstop"));
    auto res = applied(
        apply_txn(fx.db, sign_txn(fx.alice, {0, CallBody{boom, {}}, fx.fork, 10}), fx.ctx()));
    CHECK(res.receipt.status == TxnStatus::Reverted);
    CHECK(res.receipt.revert_cause == "arithmetic_overflow");

    // division by zero reverts under current semantics, yields 0 under legacy
    AccountId divz = fx.install(assemble("push 0\npush 1\ndiv\noutword\nreturnout"));
    auto res2 = applied(
        apply_txn(fx.db, sign_txn(fx.alice, {0, CallBody{divz, {}}, fx.fork, 10}), fx.ctx()));
    CHECK(res2.receipt.status == TxnStatus::Reverted);
    CHECK(res2.receipt.revert_cause == "division_by_zero");
    VmConfig legacy = fx.config;
    legacy.div_mod_zero_yields_zero = true;
    auto res3 = applied(apply_txn(fx.db, sign_txn(fx.alice, {0, CallBody{divz, {}}, fx.fork, 10}),
                                  fx.ctx(), legacy));
    CHECK(res3.receipt.committed());
    CHECK(u256_from_be(res3.receipt.return_data) == 0);

    // infinite loop runs out of steps
    AccountId spin = fx.install(assemble("label top\npush 1\npush :top\njumpi"));
    auto res4 = applied(
        apply_txn(fx.db, sign_txn(fx.alice, {0, CallBody{spin, {}}, fx.fork, 10}), fx.ctx()));
    CHECK(res4.receipt.status == TxnStatus::Reverted);
    CHECK(res4.receipt.revert_cause == "out_of_gas");
    CHECK(res4.receipt.gas_used > fx.config.step_budget);
}

TEST_CASE("apply_sequence: identity, composition, fold oracle, halt semantics") {
    VmFixture fx;

    SUBCASE("empty sequence is the identity") {
        auto seq = apply_sequence(fx.db, {}, fx.ctx());
        CHECK(seq.state == fx.db);
        CHECK(seq.results.empty());
        CHECK(!seq.halted_at.has_value());
    }
    SUBCASE("three transfers equal the manual fold") {
        std::vector<SignedTxn> txns = {
            fx.transfer(fx.alice, fx.bob_id, 10, 0),
            fx.transfer(fx.bob, fx.alice_id, 3, 0),
            fx.transfer(fx.alice, fx.bob_id, 7, 1),
        };
        auto seq = apply_sequence(fx.db, txns, fx.ctx());
        REQUIRE(seq.results.size() == 3);

        DbState folded = fx.db;
        for (const SignedTxn& t : txns) folded = applied(apply_txn(folded, t, fx.ctx())).state;
        CHECK(seq.state == folded);
        CHECK(state_root(seq.state) == state_root(folded));
    }
    SUBCASE("continues past reverts, halts on not-sequenced") {
        AccountId bomb = fx.install(assemble("revert"));
        std::vector<SignedTxn> txns = {
            sign_txn(fx.alice, {0, CallBody{bomb, {}}, fx.fork, 10}), // reverts, sequenced
            fx.transfer(fx.alice, fx.bob_id, 1, 1),                   // fine
            fx.transfer(fx.bob, fx.alice_id, 1, 9),                   // bad nonce: halt
            fx.transfer(fx.alice, fx.bob_id, 1, 2),                   // never reached
        };
        auto seq = apply_sequence(fx.db, txns, fx.ctx());
        CHECK(seq.results.size() == 3);
        CHECK(seq.halted_at == 2);
        CHECK(std::get<Applied>(seq.results[0]).receipt.status == TxnStatus::Reverted);
        CHECK(std::get<Applied>(seq.results[1]).receipt.committed());
    }
}

TEST_CASE("nested calls: inner revert isolated, status observable") {
    VmFixture fx;
    AccountId counter = fx.install(counter_script());
    // calls the counter, then calls a reverter, stores both statuses
    AccountId bomb = fx.install(assemble("revert"));
    std::ostringstream s;
    s << "push 0\npush 0\npush 0x" << counter.hex() << "\ncall\n"
      << "push 0\nsstore\n" // slot 0 = status of counter call
      << "push 0\npush 0\npush 0x" << bomb.hex() << "\ncall\n"
      << "push 1\nsstore\n" // slot 1 = status of bomb call
      << "stop\n";
    AccountId orchestrator = fx.install(assemble(s.str()));

    auto res = applied(apply_txn(fx.db, sign_txn(fx.alice, {0, CallBody{orchestrator, {}}, fx.fork, 10}),
                                 fx.ctx()));
    REQUIRE(res.receipt.committed());
    CHECK(res.state.accounts.at(orchestrator).storage_at(0) == 1);
    CHECK(res.state.accounts.at(orchestrator).storage_at(1) == 0); // reverted inner call
    CHECK(res.state.accounts.at(counter).storage_at(0) == 1);      // outer call survives
}

TEST_CASE("property: conservation and determinism over random transaction batches") {
    Rng rng(424242);
    for (int round = 0; round < 30; ++round) {
        VmFixture fx;
        AccountId contract = fx.install(parity_payout_script(fx.alice_id), 1'000'000 + rng.below(2));
        U256 supply = fx.db.total_supply();

        std::vector<SignedTxn> txns;
        U256 alice_nonce = 0, bob_nonce = 0;
        for (int i = 0; i < 6; ++i) {
            switch (rng.below(3)) {
                case 0:
                    txns.push_back(fx.transfer(fx.alice, fx.bob_id, rng.below(100), alice_nonce++));
                    break;
                case 1:
                    txns.push_back(fx.transfer(fx.bob, contract, 1 + rng.below(99), bob_nonce++));
                    break;
                default: {
                    AccountId dest = account_from_u256(U256(rng.next()));
                    auto be = u256_to_be(u256_from_account(dest));
                    txns.push_back(sign_txn(fx.alice, {alice_nonce++,
                                                       CallBody{contract, Bytes(be.begin(), be.end())},
                                                       fx.fork, 10}));
                }
            }
        }
        auto seq1 = apply_sequence(fx.db, txns, fx.ctx());
        CHECK(seq1.state.total_supply() == supply);
        auto seq2 = apply_sequence(fx.db, txns, fx.ctx());
        CHECK(state_root(seq1.state) == state_root(seq2.state));
        CHECK(seq1.state == seq2.state);
    }
}

TEST_CASE("property: random straight-line scripts ending in revert leave storage untouched") {
    Rng rng(777);
    for (int round = 0; round < 50; ++round) {
        VmFixture fx;
        AccountId sink = account_from_u256(U256(0xbeef));
        std::ostringstream s;
        int units = 1 + static_cast<int>(rng.below(8));
        for (int u = 0; u < units; ++u) {
            switch (rng.below(5)) {
                case 0: s << "push " << rng.below(1000) << "\npush " << rng.below(50) << "\nsstore\n"; break;
                case 1: s << "push " << rng.below(50) << "\nsload\npop\n"; break;
                case 2: s << "push " << rng.below(3) << "\npush 0x" << sink.hex() << "\ntransfer\n"; break;
                case 3: s << "push " << rng.below(1u << 20) << "\npush " << rng.below(1u << 20) << "\nadd\npop\n"; break;
                default: s << "caller\npop\n"; break;
            }
        }
        s << "revert\n";
        AccountId contract = fx.install(assemble(s.str()), 100);
        fx.db.accounts[contract].storage[U256(1)] = U256(11);

        auto res = applied(apply_txn(fx.db, sign_txn(fx.alice, {0, CallBody{contract, {}}, fx.fork, 10}),
                                     fx.ctx()));
        CHECK(res.receipt.status == TxnStatus::Reverted);
        // contract_state projection of every account is untouched
        for (const auto& [id, st] : fx.db.accounts)
            CHECK(res.state.accounts.at(id).storage == st.storage);
        CHECK(res.state.balance_of(sink) == 0);
        CHECK(res.state.total_supply() == fx.db.total_supply());
    }
}

TEST_CASE("deploy creates a contract account derived from sender and nonce") {
    VmFixture fx;
    SignedTxn txn = sign_txn(fx.alice, {0, DeployBody{counter_script(), 55}, fx.fork, 10});
    auto res = applied(apply_txn(fx.db, txn, fx.ctx()));
    REQUIRE(res.receipt.committed());
    AccountId expected = contract_account_id(fx.alice_id, 0);
    CHECK(res.receipt.return_data == Bytes(expected.bytes.begin(), expected.bytes.end()));
    CHECK(res.state.balance_of(expected) == 55);
    CHECK(res.state.accounts.at(expected).is_contract());
    CHECK(res.state.total_supply() == fx.db.total_supply());
}
