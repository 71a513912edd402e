// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include "leashsim/blocktree.hpp"

#include "leashsim/errors.hpp"

namespace leashsim {

namespace {
constexpr uint8_t kBlockVersion = 1;
constexpr uint8_t kBlockSignTag = 0x42; // 'B'

void encode_block_body(Encoder& enc, const Block& b) {
    enc.u8(kBlockVersion);
    enc.optional_field(b.parent, [&](const BlockId& p) { enc.hash(p.digest); });
    enc.u64(b.height);
    enc.u64(b.epoch);
    enc.hash(b.fork_id);
    enc.u32(static_cast<uint32_t>(b.txs.size()));
    for (const SignedTxn& txn : b.txs) enc.blob(txn.serialize());
    enc.hash(b.state_root);
    enc.optional_field(b.transition, [&](const TransitionRecord& t) { t.encode(enc); });
}

} // namespace

Bytes Block::serialize() const {
    Encoder enc;
    encode_block_body(enc, *this);
    enc.u32(static_cast<uint32_t>(committee_sigs.size()));
    for (const auto& [pk, sig] : committee_sigs) {
        enc.raw(pk.bytes);
        enc.raw(sig.bytes);
    }
    return enc.take();
}

Bytes Block::presig_message() const {
    Encoder enc;
    enc.u8(kBlockSignTag);
    encode_block_body(enc, *this);
    return enc.take();
}

Block Block::deserialize(ByteView data) {
    Decoder dec(data);
    Block b;
    if (dec.u8() != kBlockVersion) raise(Errc::Malformed, "unsupported block version");
    if (dec.has_optional()) b.parent = BlockId{dec.hash()};
    b.height = dec.u64();
    b.epoch = dec.u64();
    b.fork_id = dec.hash();
    uint32_t ntx = dec.u32();
    b.txs.reserve(ntx);
    for (uint32_t i = 0; i < ntx; ++i) {
        Bytes raw = dec.blob();
        b.txs.push_back(SignedTxn::deserialize(raw));
    }
    b.state_root = dec.hash();
    if (dec.has_optional()) b.transition = TransitionRecord::decode(dec);
    uint32_t nsig = dec.u32();
    b.committee_sigs.reserve(nsig);
    for (uint32_t i = 0; i < nsig; ++i) {
        PubKey pk;
        Signature sig;
        Bytes rawpk = dec.raw(32);
        std::copy(rawpk.begin(), rawpk.end(), pk.bytes.begin());
        Bytes rawsig = dec.raw(64);
        std::copy(rawsig.begin(), rawsig.end(), sig.bytes.begin());
        b.committee_sigs.emplace_back(pk, sig);
    }
    dec.expect_end();
    return b;
}

BlockTree::BlockTree(std::shared_ptr<const Hasher> hasher) : hasher_(std::move(hasher)) {}

BlockId BlockTree::id_for(const Block& block) const {
    return BlockId{hasher_->hash(block.serialize())};
}

BlockId BlockTree::insert_block(const Block& block) {
    uint64_t depth = 0;
    if (block.parent) {
        auto it = store_.find(*block.parent);
        if (it == store_.end())
            raise(Errc::MissingParent, "parent " + block.parent->hex8() + " not in store");
        if (block.height != it->second.block.height + 1)
            raise(Errc::HeightMismatch, "height must be parent height + 1");
        depth = it->second.depth + 1;
    } else {
        if (block.height != 0) raise(Errc::HeightMismatch, "genesis must have height 0");
    }

    BlockId id = id_for(block);
    if (auto it = store_.find(id); it != store_.end()) return id; // idempotent

    if (!block.parent) {
        if (genesis_ && *genesis_ != id)
            raise(Errc::GenesisConflict, "a different genesis is already stored");
        genesis_ = id;
    }
    store_.emplace(id, Entry{block, depth});
    return id;
}

const BlockTree::Entry& BlockTree::entry(const BlockId& id) const {
    auto it = store_.find(id);
    if (it == store_.end()) raise(Errc::UnknownBlock, id.hex8());
    return it->second;
}

const Block& BlockTree::block(const BlockId& id) const { return entry(id).block; }

BlockId BlockTree::genesis() const {
    if (!genesis_) raise(Errc::UnknownBlock, "empty tree has no genesis");
    return *genesis_;
}

uint64_t BlockTree::depth(const BlockId& n) const { return entry(n).depth; }

BlockId BlockTree::up(const BlockId& n, uint64_t k) const {
    const Entry* cur = &entry(n);
    if (k > cur->depth) raise(Errc::PastRoot, "k exceeds depth");
    BlockId id = n;
    for (uint64_t i = 0; i < k; ++i) {
        id = *cur->block.parent;
        cur = &entry(id);
    }
    return id;
}

bool BlockTree::is_ancestor_of(const BlockId& n1, const BlockId& n2) const {
    uint64_t d1 = depth(n1);
    uint64_t d2 = depth(n2);
    if (d1 > d2) return false;
    return up(n2, d2 - d1) == n1;
}

uint64_t BlockTree::dist(const BlockId& n1, const BlockId& n2) const {
    uint64_t d1 = depth(n1);
    uint64_t d2 = depth(n2);
    BlockId a = n1;
    BlockId b = n2;
    uint64_t hops = 0;
    // Lift the deeper node, then walk both in lockstep to the common ancestor.
    while (d1 > d2) {
        a = *entry(a).block.parent;
        --d1;
        ++hops;
    }
    while (d2 > d1) {
        b = *entry(b).block.parent;
        --d2;
        ++hops;
    }
    while (a != b) {
        a = *entry(a).block.parent;
        b = *entry(b).block.parent;
        hops += 2;
    }
    return hops;
}

std::vector<BlockId> BlockTree::all_ids() const {
    std::vector<BlockId> ids;
    ids.reserve(store_.size());
    for (const auto& [id, _] : store_) ids.push_back(id);
    return ids;
}

} // namespace leashsim
