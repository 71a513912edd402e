// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include "leashsim/merkle.hpp"

#include "leashsim/errors.hpp"

namespace leashsim {

namespace {

constexpr uint8_t kLeafTag = 0x00;
constexpr uint8_t kInnerTag = 0x01;
constexpr uint8_t kPadTag = 0x02;

Hash256 inner_digest(const Hasher& hasher, const Hash256& left, const Hash256& right) {
    Bytes buf;
    buf.reserve(65);
    buf.push_back(kInnerTag);
    append(buf, left.bytes);
    append(buf, right.bytes);
    return hasher.hash(buf);
}

Hash256 pad_digest(const Hasher& hasher) {
    uint8_t tag = kPadTag;
    return hasher.hash(ByteView(&tag, 1));
}

} // namespace

uint64_t MerkleProof::leaf_index() const {
    uint64_t index = 0;
    for (size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].sibling_on_left) index |= (uint64_t(1) << i);
    return index;
}

void MerkleProof::encode(Encoder& enc) const {
    enc.u32(static_cast<uint32_t>(nodes.size()));
    for (const ProofNode& n : nodes) {
        enc.u8(n.sibling_on_left ? 1 : 0);
        enc.hash(n.sibling);
    }
}

MerkleProof MerkleProof::decode(Decoder& dec) {
    MerkleProof p;
    uint32_t n = dec.u32();
    p.nodes.reserve(n);
    for (uint32_t i = 0; i < n; ++i) {
        ProofNode node;
        node.sibling_on_left = dec.u8() != 0;
        node.sibling = dec.hash();
        p.nodes.push_back(node);
    }
    return p;
}

Hash256 MerkleTree::leaf_digest(const Hasher& hasher, ByteView leaf) {
    Bytes buf;
    buf.reserve(leaf.size() + 1);
    buf.push_back(kLeafTag);
    append(buf, leaf);
    return hasher.hash(buf);
}

MerkleTree::MerkleTree(const std::vector<Bytes>& leaves, const Hasher& hasher)
    : leaf_count_(leaves.size()) {
    std::vector<Hash256> level;
    level.reserve(leaves.size());
    for (const Bytes& leaf : leaves) level.push_back(leaf_digest(hasher, leaf));

    size_t width = 1;
    while (width < std::max<size_t>(level.size(), 1)) width *= 2;
    level.resize(width, pad_digest(hasher));

    levels_.push_back(level);
    while (levels_.back().size() > 1) {
        const auto& prev = levels_.back();
        std::vector<Hash256> next;
        next.reserve(prev.size() / 2);
        for (size_t i = 0; i < prev.size(); i += 2)
            next.push_back(inner_digest(hasher, prev[i], prev[i + 1]));
        levels_.push_back(std::move(next));
    }
    root_ = levels_.back()[0];
}

MerkleProof MerkleTree::prove(size_t index) const {
    if (index >= leaf_count_) raise(Errc::IndexOutOfRange, "leaf index out of range");
    MerkleProof proof;
    size_t i = index;
    for (size_t lvl = 0; lvl + 1 < levels_.size(); ++lvl) {
        size_t sibling = i ^ 1;
        proof.nodes.push_back({levels_[lvl][sibling], (i & 1) != 0});
        i /= 2;
    }
    return proof;
}

bool MerkleTree::verify_leaf(const Hasher& hasher, const Hash256& root, ByteView leaf,
                             const MerkleProof& proof) {
    if (proof.nodes.size() > 62) return false; // index must fit the recovered u64
    Hash256 acc = leaf_digest(hasher, leaf);
    for (const ProofNode& node : proof.nodes)
        acc = node.sibling_on_left ? inner_digest(hasher, node.sibling, acc)
                                   : inner_digest(hasher, acc, node.sibling);
    return acc == root;
}

} // namespace leashsim
