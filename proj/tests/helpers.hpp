// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <string>

#include "leashsim/blocktree.hpp"
#include "leashsim/rng.hpp"

namespace leashsim::test {

inline Hash256 fork_id_of(const std::string& name) {
    return sha256(ByteView(reinterpret_cast<const uint8_t*>(name.data()), name.size()));
}

/// Bare block for tree-shape tests: no transactions, no signatures.
inline Block bare_block(std::optional<BlockId> parent, uint64_t height, uint64_t salt = 0,
                        Hash256 fork = fork_id_of("main")) {
    Block b;
    b.parent = parent;
    b.height = height;
    b.epoch = 0;
    b.fork_id = fork;
    b.state_root = sha256(u256_to_be(U256(salt)));
    return b;
}

/// Linear chain of `len` bare blocks on a fresh tree; returns ids, genesis first.
inline std::vector<BlockId> bare_chain(BlockTree& tree, size_t len, uint64_t salt = 0) {
    std::vector<BlockId> ids;
    BlockId cursor = tree.insert_block(bare_block(std::nullopt, 0, salt));
    ids.push_back(cursor);
    for (size_t h = 1; h < len; ++h) {
        cursor = tree.insert_block(bare_block(cursor, h, salt));
        ids.push_back(cursor);
    }
    return ids;
}

} // namespace leashsim::test
