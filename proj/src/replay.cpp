// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include "leashsim/replay.hpp"

#include <algorithm>

#include "leashsim/errors.hpp"

namespace leashsim {

void SwizzleMap::add_pair(const Hash256& a, const Hash256& b) {
    if (a == b) raise(Errc::CollisionFound, "swizzle pair digests must be distinct");
    if (table_.count(a) || table_.count(b))
        raise(Errc::CollisionFound, "digest already swizzled");
    table_[a] = b;
    table_[b] = a;
}

Hash256 SwizzleMap::apply(const Hash256& x) const {
    auto it = table_.find(x);
    return it == table_.end() ? x : it->second;
}

std::vector<Hash256> SwizzleMap::domain() const {
    std::vector<Hash256> out;
    out.reserve(table_.size());
    for (const auto& [k, _] : table_) out.push_back(k);
    return out;
}

void SwizzleMap::encode(Encoder& enc) const {
    // store each unordered pair once, smaller digest first
    std::vector<std::pair<Hash256, Hash256>> pairs;
    for (const auto& [a, b] : table_)
        if (a < b) pairs.emplace_back(a, b);
    enc.u32(static_cast<uint32_t>(pairs.size()));
    for (const auto& [a, b] : pairs) {
        enc.hash(a);
        enc.hash(b);
    }
}

SwizzleMap SwizzleMap::decode(Decoder& dec) {
    SwizzleMap g;
    uint32_t n = dec.u32();
    for (uint32_t i = 0; i < n; ++i) {
        Hash256 a = dec.hash();
        Hash256 b = dec.hash();
        g.add_pair(a, b);
    }
    return g;
}

SwizzleChain compose_swizzles(const SwizzleMap& outer, const SwizzleMap& inner) {
    SwizzleChain chain;
    chain.maps.push_back(inner);
    chain.maps.push_back(outer);
    return chain;
}

ReplayResult replay_from(const ReplayInput& input, size_t z) {
    const BlockTree& tree = *input.tree;
    size_t n = input.chain.size();
    if (z == 0 || z >= n) raise(Errc::IndexOutOfRange, "need 0 < z <= n");

    ReplayResult result;
    result.forked_chain.reserve(n);
    for (size_t j = 0; j < z; ++j) result.forked_chain.push_back(tree.block(input.chain[j]));

    // Re-execute under the amended semantics. Blockhash instructions resolve
    // against the original tree: those are exactly the values h' reproduces
    // on the forked chain.
    DbState db = input.state_before_z;
    for (size_t j = z; j < n; ++j) {
        const Block& original = tree.block(input.chain[j]);
        BlockCtx ctx = BlockCtx::for_child_of(tree, input.chain[j - 1], original.fork_id,
                                              input.blockhash_window);
        SequenceResult seq = apply_sequence(db, original.txs, ctx, input.amended_vm);
        if (seq.halted_at)
            raise(Errc::Malformed, "replayed block contains a non-sequenceable transaction");
        db = std::move(seq.state);

        Block forked = original;
        forked.state_root = state_root(db);
        result.new_roots.push_back(forked.state_root);
        if (forked.state_root != original.state_root) {
            // the pre-signature bytes changed, so the committee re-signs
            forked.committee_sigs.clear();
            Bytes message = forked.presig_message();
            for (const Keypair& key : input.signers(forked.epoch))
                forked.committee_sigs.emplace_back(key.pub, key.sign(message));
            std::sort(forked.committee_sigs.begin(), forked.committee_sigs.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
        }
        result.forked_chain.push_back(std::move(forked));
    }

    const Hasher& base = tree.hasher();
    for (size_t j = z; j < n; ++j) {
        Bytes original_bytes = tree.block(input.chain[j]).serialize();
        Bytes forked_bytes = result.forked_chain[j].serialize();
        if (original_bytes != forked_bytes)
            result.swizzle.add_pair(base.hash(original_bytes), base.hash(forked_bytes));
    }
    result.degenerate = result.swizzle.empty();

    result.forked_hasher =
        std::make_shared<const ForkedHash>(tree.hasher_ptr(), result.swizzle);
    result.forked_tree = BlockTree(result.forked_hasher);
    for (const Block& b : result.forked_chain) result.forked_tree.insert_block(b);
    return result;
}

CollisionReport collision_check(const Hasher& h_variant, const std::vector<Bytes>& corpus) {
    CollisionReport report;
    report.corpus_size = corpus.size();
    std::vector<std::pair<Hash256, size_t>> digests;
    digests.reserve(corpus.size());
    for (size_t i = 0; i < corpus.size(); ++i) digests.emplace_back(h_variant.hash(corpus[i]), i);
    std::sort(digests.begin(), digests.end());
    for (size_t i = 0; i + 1 < digests.size(); ++i) {
        if (digests[i].first == digests[i + 1].first &&
            corpus[digests[i].second] != corpus[digests[i + 1].second]) {
            report.collision_found = true;
            report.first = digests[i].second;
            report.second = digests[i + 1].second;
            return report;
        }
    }
    return report;
}

} // namespace leashsim
