// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <functional>

#include "leashsim/consensus.hpp"
#include "leashsim/vm.hpp"

namespace leashsim {

/// The output swizzler g: a set of unordered digest pairs. Applying the map
/// swaps the two digests of a pair and leaves every other input alone, so g
/// is an involution by construction.
class SwizzleMap {
  public:
    /// All digests across all pairs must be pairwise distinct (a repeat would
    /// be a hash collision in the corpus that induced the map).
    void add_pair(const Hash256& a, const Hash256& b);

    Hash256 apply(const Hash256& x) const;

    size_t pair_count() const { return table_.size() / 2; }
    bool empty() const { return table_.empty(); }
    /// Every digest the map moves.
    std::vector<Hash256> domain() const;

    void encode(Encoder& enc) const;
    static SwizzleMap decode(Decoder& dec);

  private:
    std::map<Hash256, Hash256> table_; // both directions of every pair
};

inline Hash256 swizzle_apply(const SwizzleMap& g, const Hash256& x) { return g.apply(x); }

/// Composition handle for repeated forks: maps are applied innermost first.
/// The composition of permutations is a permutation, but not in general an
/// involution, so it stays a chain rather than collapsing into one map.
struct SwizzleChain {
    std::vector<SwizzleMap> maps;

    Hash256 apply(Hash256 x) const {
        for (const SwizzleMap& g : maps) x = g.apply(x);
        return x;
    }
};

SwizzleChain compose_swizzles(const SwizzleMap& outer, const SwizzleMap& inner);

/// h'(x) = g(h(x)) — or a chain of g's for repeated forks. Drop-in Hasher, so
/// a BlockTree built with it never knows swizzling is happening.
class ForkedHash final : public Hasher {
  public:
    ForkedHash(std::shared_ptr<const Hasher> base, SwizzleMap g)
        : base_(std::move(base)), chain_{{std::move(g)}} {}
    ForkedHash(std::shared_ptr<const Hasher> base, SwizzleChain chain)
        : base_(std::move(base)), chain_(std::move(chain)) {}

    Hash256 hash(ByteView data) const override { return chain_.apply(base_->hash(data)); }

    const SwizzleChain& swizzles() const { return chain_; }

  private:
    std::shared_ptr<const Hasher> base_;
    SwizzleChain chain_;
};

/// Everything replay needs to re-execute a chain under amended semantics.
struct ReplayInput {
    const BlockTree* tree = nullptr;   // the original chain lives here
    std::vector<BlockId> chain;        // B_0 .. B_n, consensus path
    DbState state_before_z;            // DB_{z-1}
    VmConfig amended_vm;               // the fixed semantics
    uint32_t blockhash_window = 256;
    /// Committee keys by epoch, for re-signing blocks whose roots changed.
    std::function<std::vector<Keypair>(uint64_t epoch)> signers;
};

struct ReplayResult {
    std::vector<Block> forked_chain; // B'_0 .. B'_n; byte-identical below z
    std::vector<Hash256> new_roots;  // roots of B'_z .. B'_n
    SwizzleMap swizzle;
    std::shared_ptr<const ForkedHash> forked_hasher; // h'
    BlockTree forked_tree;                           // built under h'
    bool degenerate = false; // replay changed nothing (warning, not an error)
};

/// Re-executes blocks z..n under the amended VM. The forked blocks carry the
/// same transactions in the same order and differ only in the state root
/// (and the signatures over it); parent pointer values are unchanged because
/// the forked tree hashes with h'.
ReplayResult replay_from(const ReplayInput& input, size_t z);

struct CollisionReport {
    size_t corpus_size = 0;
    bool collision_found = false;
    size_t first = 0, second = 0; // offending corpus indices when found
};

/// Empirical sanity guard over a finite corpus. The real argument is the
/// reduction: a collision under g∘h yields one under h because g is a
/// bijection.
CollisionReport collision_check(const Hasher& h_variant, const std::vector<Bytes>& corpus);

} // namespace leashsim
