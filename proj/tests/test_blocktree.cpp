// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include <doctest.h>

#include "helpers.hpp"
#include "leashsim/errors.hpp"

using namespace leashsim;
using namespace leashsim::test;

TEST_CASE("insert: content addressing, idempotency, and the error cases") {
    BlockTree tree;
    Block genesis = bare_block(std::nullopt, 0);
    BlockId gid = tree.insert_block(genesis);

    // BlockId is the hash of the canonical serialization.
    CHECK(gid.digest == sha256(genesis.serialize()));
    CHECK(tree.insert_block(genesis) == gid); // idempotent
    CHECK(tree.size() == 1);

    BlockId child = tree.insert_block(bare_block(gid, 1));
    CHECK(tree.contains(child));

    // height must be parent height + 1
    CHECK_THROWS_WITH_AS(tree.insert_block(bare_block(gid, 5)), doctest::Contains("HeightMismatch"),
                         Error);
    // unknown parent
    Block orphan = bare_block(BlockId{sha256(Bytes{9})}, 1);
    CHECK_THROWS_WITH_AS(tree.insert_block(orphan), doctest::Contains("MissingParent"), Error);
    // a second, different genesis
    CHECK_THROWS_WITH_AS(tree.insert_block(bare_block(std::nullopt, 0, /*salt=*/77)),
                         doctest::Contains("GenesisConflict"), Error);
    // genesis height must be zero
    CHECK_THROWS_WITH_AS(tree.insert_block(bare_block(std::nullopt, 3, 1)),
                         doctest::Contains("HeightMismatch"), Error);
}

TEST_CASE("depth by parent walk") {
    BlockTree tree;
    auto ids = bare_chain(tree, 10);
    CHECK(tree.depth(ids[0]) == 0);
    CHECK(tree.depth(ids[1]) == 1);
    CHECK(tree.depth(ids.back()) == 9);

    // oracle: count edges by walking parents
    uint64_t walked = 0;
    std::optional<BlockId> cursor = ids.back();
    while (tree.block(*cursor).parent) {
        cursor = tree.block(*cursor).parent;
        ++walked;
    }
    CHECK(walked == tree.depth(ids.back()));

    CHECK_THROWS_AS(tree.depth(BlockId{sha256(Bytes{1})}), Error);
}

TEST_CASE("up walks k hops toward the root") {
    BlockTree tree;
    auto ids = bare_chain(tree, 10);
    CHECK(tree.up(ids[5], 0) == ids[5]);
    CHECK(tree.up(ids[5], 2) == ids[3]);
    CHECK(tree.up(ids.back(), tree.depth(ids.back())) == ids[0]);
    CHECK_THROWS_WITH_AS(tree.up(ids[2], 3), doctest::Contains("PastRoot"), Error);
}

TEST_CASE("is_ancestor_of: reflexive, genesis below everything, siblings unrelated") {
    BlockTree tree;
    auto ids = bare_chain(tree, 4);
    // two sibling branches off genesis
    BlockId a1 = tree.insert_block(bare_block(ids[0], 1, 100));
    BlockId a2 = tree.insert_block(bare_block(a1, 2, 100));
    BlockId b1 = tree.insert_block(bare_block(ids[0], 1, 200));
    BlockId b2 = tree.insert_block(bare_block(b1, 2, 200));

    for (BlockId id : tree.all_ids()) CHECK(tree.is_ancestor_of(ids[0], id));
    CHECK(tree.is_ancestor_of(ids[2], ids[2])); // reflexive
    CHECK(!tree.is_ancestor_of(ids.back(), ids[0]));
    CHECK(!tree.is_ancestor_of(a2, b2));
    CHECK(!tree.is_ancestor_of(b2, a2));
    CHECK(tree.is_ancestor_of(a1, a2));
}

TEST_CASE("dist: identity, ancestors, and through the common ancestor") {
    BlockTree tree;
    auto ids = bare_chain(tree, 4);
    BlockId a1 = tree.insert_block(bare_block(ids[0], 1, 100));
    BlockId a2 = tree.insert_block(bare_block(a1, 2, 100));
    BlockId b1 = tree.insert_block(bare_block(ids[0], 1, 200));
    BlockId b2 = tree.insert_block(bare_block(b1, 2, 200));

    CHECK(tree.dist(ids[2], ids[2]) == 0);
    CHECK(tree.dist(ids[0], ids[3]) == 3); // derived: walk parents
    CHECK(tree.dist(ids[3], ids[0]) == 3); // symmetry
    CHECK(tree.dist(a2, b2) == 4);         // path through genesis

    // triangle inequality over all stored triples
    auto all = tree.all_ids();
    for (const BlockId& x : all)
        for (const BlockId& y : all)
            for (const BlockId& z : all)
                CHECK(tree.dist(x, z) <= tree.dist(x, y) + tree.dist(y, z));
}

TEST_CASE("property: depth/up/is_ancestor_of interplay on a random tree") {
    BlockTree tree;
    Rng rng(20260801);
    std::vector<BlockId> ids;
    ids.push_back(tree.insert_block(bare_block(std::nullopt, 0)));
    for (int i = 0; i < 60; ++i) {
        BlockId parent = ids[rng.below(ids.size())];
        uint64_t h = tree.depth(parent) + 1;
        ids.push_back(tree.insert_block(bare_block(parent, h, rng.next())));
    }

    for (int trial = 0; trial < 200; ++trial) {
        BlockId n = ids[rng.below(ids.size())];
        uint64_t d = tree.depth(n);
        uint64_t k = rng.below(d + 1);
        BlockId anc = tree.up(n, k);
        CHECK(tree.depth(anc) == d - k);
        CHECK(tree.is_ancestor_of(anc, n));

        BlockId other = ids[rng.below(ids.size())];
        // is_ancestor_of(a, b) iff some k with up(b, k) == a
        bool found = false;
        for (uint64_t j = 0; j <= tree.depth(other); ++j)
            if (tree.up(other, j) == n) {
                found = true;
                break;
            }
        CHECK(tree.is_ancestor_of(n, other) == found);
    }
}

TEST_CASE("content addressing: rehashing every stored block reproduces its key") {
    BlockTree tree;
    Rng rng(7);
    std::vector<BlockId> ids;
    ids.push_back(tree.insert_block(bare_block(std::nullopt, 0)));
    for (int i = 0; i < 20; ++i) {
        BlockId parent = ids[rng.below(ids.size())];
        ids.push_back(tree.insert_block(bare_block(parent, tree.depth(parent) + 1, rng.next())));
    }
    for (const BlockId& id : tree.all_ids()) {
        const Block& b = tree.block(id);
        CHECK(tree.hasher().hash(b.serialize()) == id.digest);
        // serialization round trip is exact
        CHECK(Block::deserialize(b.serialize()) == b);
    }
}
