// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "leashsim/codec.hpp"
#include "leashsim/hasher.hpp"

namespace leashsim {

/// One authentication-path step: the sibling digest and which side it sits on.
struct ProofNode {
    Hash256 sibling;
    bool sibling_on_left = false;

    bool operator==(const ProofNode&) const = default;
};

struct MerkleProof {
    std::vector<ProofNode> nodes; // leaf to root

    bool operator==(const MerkleProof&) const = default;

    /// Leaf index recovered from the direction bits.
    uint64_t leaf_index() const;

    void encode(Encoder& enc) const;
    static MerkleProof decode(Decoder& dec);
};

/// Binary Merkle tree over an ordered list of leaf byte strings, padded to a
/// perfect tree so every proof has uniform depth and the direction bits pin
/// the leaf index (adjacency checks for absence proofs rely on that).
/// Leaf, inner, and padding nodes are domain-separated.
class MerkleTree {
  public:
    MerkleTree(const std::vector<Bytes>& leaves, const Hasher& hasher);

    const Hash256& root() const { return root_; }
    size_t leaf_count() const { return leaf_count_; }

    MerkleProof prove(size_t index) const;

    static Hash256 leaf_digest(const Hasher& hasher, ByteView leaf);
    static bool verify_leaf(const Hasher& hasher, const Hash256& root, ByteView leaf,
                            const MerkleProof& proof);

  private:
    // levels_[0] = leaf digests (padded); levels_.back() = {root}
    std::vector<std::vector<Hash256>> levels_;
    Hash256 root_;
    size_t leaf_count_;
};

} // namespace leashsim
