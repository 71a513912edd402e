// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "leashsim/contracts.hpp"
#include "leashsim/errors.hpp"
#include "leashsim/leash.hpp"
#include "leashsim/replay.hpp"

using namespace leashsim;
using namespace leashsim::test;

namespace {

/// A 20-block chain whose blocks execute real transactions against a
/// div/mod-by-zero-tolerant VM; the "zero-day" is a script that hits that
/// edge, and the fix is the checked semantics.
struct ReplayFixture {
    BlockTree tree;
    Hash256 fork = fork_id_of("main");
    Keypair alice = Keypair::derive(3, "alice");
    Keypair validator = Keypair::derive(3, "validator");
    AccountId alice_id = eoa_account_id(alice.pub);
    AccountId contract; // stores calldata0 % calldata1 into a rolling slot
    std::vector<BlockId> chain;
    std::vector<DbState> states; // states[h] = state after block h
    VmConfig buggy;              // original semantics
    VmConfig fixed;              // amended semantics

    explicit ReplayFixture(size_t n_blocks = 20) {
        buggy.div_mod_zero_yields_zero = true;

        DbState db;
        db.accounts[alice_id].balance = 10'000'000;
        contract = account_from_u256(U256(0x3333));
        AccountState cs;
        cs.balance = 0;
        // slot p = calldata0 % calldata1; p = blocknumber-dependent so every
        // block's root moves
        // (calldata0 % calldata1) + 1: the +1 keeps the stored word nonzero,
        // so the buggy zero result leaves a visible trace in the trie
        cs.code = std::make_shared<const Script>(assemble(R"(
push 32
calldataword
push 0
calldataword
mod
push 1
add
blocknumber
sstore
stop
)"));
        db.accounts[contract] = std::move(cs);

        Block genesis;
        genesis.fork_id = fork;
        genesis.state_root = state_root(db);
        chain.push_back(tree.insert_block(genesis));
        states.push_back(db);

        U256 nonce = 0;
        for (size_t h = 1; h <= n_blocks; ++h) {
            // blocks 5 and 11 carry the exploit: mod by zero
            uint64_t divisor = (h == 5 || h == 11) ? 0 : (h + 2);
            Encoder calldata;
            calldata.word(U256(100 + h));
            calldata.word(U256(divisor));
            std::vector<SignedTxn> txs;
            txs.push_back(
                sign_txn(alice, {nonce++, CallBody{contract, calldata.take()}, fork, 10}));
            BlockCtx ctx = BlockCtx::for_child_of(tree, chain.back(), fork);
            SequenceResult seq = apply_sequence(db, txs, ctx, buggy);
            REQUIRE(!seq.halted_at.has_value());
            db = seq.state;
            Block b = mint_block(std::span<const Keypair>(&validator, 1), tree, chain.back(),
                                 std::move(txs), state_root(db), fork, 0);
            chain.push_back(tree.insert_block(b));
            states.push_back(db);
        }
    }

    ReplayInput input(size_t z) const {
        ReplayInput in;
        in.tree = &tree;
        in.chain = chain;
        in.state_before_z = states[z - 1];
        in.amended_vm = fixed;
        Keypair v = validator;
        in.signers = [v](uint64_t) { return std::vector<Keypair>{v}; };
        return in;
    }
};

} // namespace

TEST_CASE("swizzle map: case definition, involution, distinctness") {
    Rng rng(5);
    SwizzleMap g;
    std::vector<std::pair<Hash256, Hash256>> pairs;
    for (int i = 0; i < 8; ++i) {
        Hash256 a = rng.hash256(), b = rng.hash256();
        g.add_pair(a, b);
        pairs.emplace_back(a, b);
    }
    for (const auto& [a, b] : pairs) {
        CHECK(g.apply(a) == b); // x == h(B_j) -> h(B_j')
        CHECK(g.apply(b) == a); // x == h(B_j') -> h(B_j)
    }
    Hash256 untouched = rng.hash256();
    CHECK(g.apply(untouched) == untouched); // x otherwise
    for (int i = 0; i < 100; ++i) {
        Hash256 x = rng.hash256();
        CHECK(g.apply(g.apply(x)) == x); // involution
    }
    // equal digests rejected at construction
    Hash256 dup = rng.hash256();
    CHECK_THROWS_WITH_AS(g.add_pair(dup, dup), doctest::Contains("CollisionFound"), Error);
    // reusing a swizzled digest rejected too
    CHECK_THROWS_AS(g.add_pair(pairs[0].first, rng.hash256()), Error);

    // round trip through the fixture encoding
    Encoder enc;
    g.encode(enc);
    Bytes wire = enc.take();
    Decoder dec(wire);
    SwizzleMap back = SwizzleMap::decode(dec);
    for (const auto& [a, b] : pairs) CHECK(back.apply(a) == b);
}

TEST_CASE("identity replay is degenerate: empty map, identical blocks") {
    ReplayFixture fx(8);
    ReplayInput in = fx.input(3);
    in.amended_vm = fx.buggy; // same semantics as the original chain
    ReplayResult r = replay_from(in, 3);
    CHECK(r.degenerate);
    CHECK(r.swizzle.empty());
    for (size_t j = 0; j < fx.chain.size(); ++j)
        CHECK(r.forked_chain[j].serialize() == fx.tree.block(fx.chain[j]).serialize());
}

TEST_CASE("bugfix replay at z=5: new roots, stable pointers, anchors survive") {
    ReplayFixture fx(20);
    ReplayResult r = replay_from(fx.input(5), 5);
    REQUIRE(!r.degenerate);

    for (size_t j = 0; j < 5; ++j) // bytes identical below z
        CHECK(r.forked_chain[j].serialize() == fx.tree.block(fx.chain[j]).serialize());

    for (size_t j = 5; j <= 20; ++j) {
        const Block& original = fx.tree.block(fx.chain[j]);
        const Block& forked = r.forked_chain[j];
        CHECK(forked.state_root != original.state_root);
        CHECK(forked.txs == original.txs);       // same transactions, same order
        CHECK(forked.parent == original.parent); // pointer values unchanged
        // the central claim: h'(B_j') == h(B_j)
        CHECK(r.forked_hasher->hash(forked.serialize()) == fx.chain[j].digest);
        CHECK(r.forked_tree.contains(fx.chain[j]));
    }
    CHECK(r.swizzle.pair_count() == 16);

    // a leash anchored at block 7 still passes on the forked chain with the
    // ORIGINAL (i, v) pair
    LeashParams params = make_leash(7, fx.chain[7].digest, 100, fx.fork);
    BlockCtx forked_ctx =
        BlockCtx::for_child_of(r.forked_tree, r.forked_tree.id_for(r.forked_chain.back()), fx.fork);
    CHECK(!leash_check(params, forked_ctx).has_value());

    // blockhash consistency: scripts on the forked chain observe original values
    DbState probe_db;
    Keypair prober = Keypair::derive(9, "prober");
    probe_db.accounts[eoa_account_id(prober.pub)].balance = 1000;
    AccountId probe = account_from_u256(U256(0x4444));
    AccountState ps;
    ps.code = std::make_shared<const Script>(assemble("push 7\nblockhash_fd\noutword\nreturnout"));
    probe_db.accounts[probe] = ps;
    auto res = apply_txn(probe_db, sign_txn(prober, {0, CallBody{probe, {}}, fx.fork, 10}),
                         forked_ctx);
    REQUIRE(std::holds_alternative<Applied>(res));
    CHECK(u256_from_be(std::get<Applied>(res).receipt.return_data) ==
          u256_from_hash(fx.chain[7].digest));
}

TEST_CASE("replay guards its index range") {
    ReplayFixture fx(6);
    CHECK_THROWS_WITH_AS(replay_from(fx.input(1), 0), doctest::Contains("IndexOutOfRange"), Error);
    CHECK_THROWS_WITH_AS(replay_from(fx.input(6), 99), doctest::Contains("IndexOutOfRange"), Error);
}

TEST_CASE("composed swizzles: a second fork keeps pointers stable across both") {
    ReplayFixture fx(14);
    // first fork: fix the semantics from z1 = 4
    ReplayResult first = replay_from(fx.input(4), 4);
    REQUIRE(!first.degenerate);

    // second fork: replay the forked chain from z2 = 9 under semantics that
    // also charge mod-by-zero... here, re-break the semantics to force new
    // roots again
    ReplayInput second_in;
    second_in.tree = &first.forked_tree;
    std::vector<BlockId> forked_ids;
    for (const Block& b : first.forked_chain) forked_ids.push_back(first.forked_tree.id_for(b));
    second_in.chain = forked_ids;

    // rebuild DB'_8 by replaying 4..8 under the fixed vm
    DbState db = fx.states[3];
    for (size_t j = 4; j <= 8; ++j) {
        BlockCtx ctx = BlockCtx::for_child_of(fx.tree, fx.chain[j - 1], fx.fork);
        db = apply_sequence(db, fx.tree.block(fx.chain[j]).txs, ctx, fx.fixed).state;
    }
    second_in.state_before_z = db;
    second_in.amended_vm = fx.buggy; // flip semantics again
    Keypair v = fx.validator;
    second_in.signers = [v](uint64_t) { return std::vector<Keypair>{v}; };

    ReplayResult second = replay_from(second_in, 9);
    REQUIRE(!second.degenerate);

    // h'' = g2 ∘ g1 ∘ h keeps every pointer stable across both forks
    SwizzleChain chain2 = compose_swizzles(second.swizzle, first.swizzle);
    ForkedHash h2(fx.tree.hasher_ptr(), chain2);
    for (size_t j = 0; j < fx.chain.size(); ++j)
        CHECK(h2.hash(second.forked_chain[j].serialize()) == fx.chain[j].digest);

    // compose with an empty inner equals the outer alone
    SwizzleChain with_empty = compose_swizzles(first.swizzle, SwizzleMap{});
    Rng rng(12);
    for (int i = 0; i < 50; ++i) {
        Hash256 x = rng.hash256();
        CHECK(with_empty.apply(x) == first.swizzle.apply(x));
    }

    // the composition stays a bijection on the union of affected digests
    std::vector<Hash256> domain1 = first.swizzle.domain();
    std::vector<Hash256> domain2 = second.swizzle.domain();
    std::vector<Hash256> domain = domain1;
    domain.insert(domain.end(), domain2.begin(), domain2.end());
    std::set<Hash256> inputs(domain.begin(), domain.end());
    std::set<Hash256> images;
    for (const Hash256& x : inputs) images.insert(chain2.apply(x));
    CHECK(images.size() == inputs.size()); // injective on the affected set
}

TEST_CASE("collision check: scenario corpus plus random strings, no collisions under h'") {
    ReplayFixture fx(12);
    ReplayResult r = replay_from(fx.input(5), 5);

    std::vector<Bytes> corpus;
    for (const BlockId& id : fx.tree.all_ids()) corpus.push_back(fx.tree.block(id).serialize());
    for (const Block& b : r.forked_chain) corpus.push_back(b.serialize());
    Rng rng(88);
    for (int i = 0; i < 10'000; ++i) corpus.push_back(rng.bytes(8 + rng.below(64)));

    CollisionReport base_report = collision_check(*default_hasher(), corpus);
    CHECK(!base_report.collision_found);
    CollisionReport forked_report = collision_check(*r.forked_hasher, corpus);
    CHECK(!forked_report.collision_found);
    CHECK(forked_report.corpus_size == corpus.size());
}
