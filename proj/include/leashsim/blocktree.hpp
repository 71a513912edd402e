// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "leashsim/committee.hpp"
#include "leashsim/hasher.hpp"
#include "leashsim/txn.hpp"

namespace leashsim {

/// Content address of a block: the hash of its canonical serialization under
/// the tree's hash function.
struct BlockId {
    Hash256 digest;

    auto operator<=>(const BlockId&) const = default;
    std::string hex() const { return digest.hex(); }
    std::string hex8() const { return digest.hex8(); }
};

struct Block {
    std::optional<BlockId> parent; // absent iff genesis
    uint64_t height = 0;
    uint64_t epoch = 0;
    Hash256 fork_id;
    std::vector<SignedTxn> txs;
    Hash256 state_root;
    std::optional<TransitionRecord> transition;
    std::vector<std::pair<PubKey, Signature>> committee_sigs;

    bool operator==(const Block&) const = default;

    /// Versioned byte layout (see docs/formats.md); the injection from field
    /// tuples to byte streams that content addressing requires.
    Bytes serialize() const;
    static Block deserialize(ByteView data);

    /// Serialization of everything except committee_sigs, with a signing
    /// domain tag. This is what validators sign.
    Bytes presig_message() const;
};

/// Content-addressable store of blocks forming a tree rooted at genesis.
/// Immutable after insert; all navigation is by parent walks.
class BlockTree {
  public:
    explicit BlockTree(std::shared_ptr<const Hasher> hasher = default_hasher());

    /// Idempotent for byte-identical blocks. Throws MissingParent,
    /// HeightMismatch, or GenesisConflict.
    BlockId insert_block(const Block& block);

    bool contains(const BlockId& id) const { return store_.count(id) != 0; }
    const Block& block(const BlockId& id) const;
    BlockId genesis() const;
    bool has_genesis() const { return genesis_.has_value(); }
    size_t size() const { return store_.size(); }

    /// Path length from n to the root; the block number for consensus blocks.
    uint64_t depth(const BlockId& n) const;
    /// Edges on the tree path between n1 and n2 (through the lowest common
    /// ancestor when they sit on divergent branches).
    uint64_t dist(const BlockId& n1, const BlockId& n2) const;
    /// Reflexive: every node is its own ancestor.
    bool is_ancestor_of(const BlockId& n1, const BlockId& n2) const;
    /// The ancestor k hops up from n. Throws PastRoot if k > depth(n).
    BlockId up(const BlockId& n, uint64_t k) const;

    /// What this tree would call the given block.
    BlockId id_for(const Block& block) const;

    const Hasher& hasher() const { return *hasher_; }
    std::shared_ptr<const Hasher> hasher_ptr() const { return hasher_; }

    std::vector<BlockId> all_ids() const;

  private:
    struct Entry {
        Block block;
        uint64_t depth; // memoized; the parent walk is the definition
    };

    const Entry& entry(const BlockId& id) const;

    std::map<BlockId, Entry> store_;
    std::optional<BlockId> genesis_;
    std::shared_ptr<const Hasher> hasher_;
};

} // namespace leashsim
