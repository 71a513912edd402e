// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "leashsim/consensus.hpp"
#include "leashsim/leash.hpp"
#include "leashsim/replay.hpp"

namespace leashsim {

enum class ScenarioKind : uint8_t {
    CanonicalLra,        // eclipsed sleeper, forged side chain, bogus balance
    StaleTruncation,     // truthful but truncated view; anchor expires
    SkippedVerification, // victim trusts the block explorer blindly
    HardForkHidden,      // real governance fork eclipsed from the victim
    HardForkBogus,       // fabricated governance fork on the side chain
};
const char* scenario_kind_name(ScenarioKind k);

enum class VictimMode : uint8_t { Metadata, Wrapper, WrapperWindowed, Gateway, Unleashed };
const char* victim_mode_name(VictimMode m);

struct ScenarioSpec {
    ScenarioKind kind = ScenarioKind::CanonicalLra;
    uint64_t seed = 1;

    // world shape
    uint64_t honest_blocks = 12;
    uint64_t epoch_length = 3;
    uint64_t committee_size = 4;
    uint32_t threshold = 3;
    uint64_t sleep_height = 5;
    uint64_t side_length = 4;
    uint64_t balance_bonus = 1'000'000; // added to the victim's displayed balance
    uint64_t gov_fork_height = 8;       // hard-fork scenarios only

    // victim behavior
    VictimMode victim_mode = VictimMode::Metadata;
    uint64_t leash_length = 8;
    bool verify_proofs = true;
    uint64_t transfer_amount = 500;
    uint64_t rounds = 1; // adaptive adversary: side-chain extensions per run

    // knobs shared with the VM / light client
    uint32_t blockhash_window = 256;
    uint32_t recent_window = 2;

    /// Throws Errc::ConfigError when the shape is inconsistent (sleep beyond
    /// the chain, fork epoch not coverable by leaked keys, and so on).
    void validate() const;
};

/// What the adversary hands the eclipsed victim for one inspection.
struct InspectionOffer {
    AccountId account;
    std::optional<U256> address;
    Bytes value;
    StateProof proof;
    Hash256 claimed_root;
};

struct VictimPolicy {
    VictimMode mode = VictimMode::Metadata;
    uint64_t leash_length = 8;
    bool verify_proofs = true;
    U256 transfer_amount = 500;
    U256 max_fee = 10;
    AccountId pay_dest; // where the victim believes she is sending value
    AccountId vault;    // custodial payments contract
    AccountId gateway;  // the well-known gateway contract
};

/// The eclipsed victim. Holds only her key, her pre-sleep light-client state,
/// and whatever the adversary sends her — no reference to the honest chain
/// exists behind this interface, which is the runner's information-flow guard.
class Victim {
  public:
    Victim(Keypair key, LightClientState trust, Block trusted_tip, VictimPolicy policy);

    /// Light-client verification of an adversary-supplied segment; adopts it
    /// as her view when it verifies.
    bool receive_segment(std::span<const Block> segment);

    /// Merkle-checks the offer against her view tip's state root and returns
    /// the committed value. Throws Errc::ProofRejected when the proof fails
    /// and her TCB is enabled; with verification skipped she swallows
    /// whatever she is shown.
    Bytes inspect(const InspectionOffer& offer);

    /// The transaction(s) she signs based on her current view: anchor at the
    /// view tip, fork identity taken from the view tip, her configured mode.
    /// Wrapper modes prepend the wrapper deployment.
    std::vector<SignedTxn> propose(bool leashed, const U256& first_nonce);

    const LightClientState& view() const { return view_; }
    const Block& view_tip() const { return view_tip_; }
    AccountId account() const { return eoa_account_id(key_.pub); }

  private:
    Keypair key_;
    LightClientState view_;
    Block view_tip_;
    VictimPolicy policy_;
};

struct SideChainPlan {
    uint64_t epoch = 0;
    Hash256 fork_id;
    std::vector<Hash256> state_roots;           // one per block
    std::vector<std::vector<SignedTxn>> txs;    // listed txns; states need not match
};

/// Mints plan.state_roots.size() blocks extending fork_point, signed with the
/// leaked keys — which must reach the forged committee's quorum
/// (Errc::InsufficientKeys otherwise; an adversary below quorum has nothing).
std::vector<Block> build_side_chain(BlockTree& tree, const BlockId& fork_point,
                                    std::span<const Keypair> leaked_keys,
                                    const Committee& forged_committee, const SideChainPlan& plan);

struct ArmOutcome {
    bool proposed = false; // the victim may abort before signing
    TxnStatus status = TxnStatus::Reverted;
    std::optional<LeashReason> leash_reason;
    std::string receipt_note;  // stable one-line receipt description
    U256 adversary_gain = 0;   // adversary-controlled balance delta, consensus chain
    U256 victim_fee_loss = 0;  // EOA balance delta
    U256 victim_value_loss = 0; // vault deposit delta
};

struct ScenarioReport {
    ScenarioKind kind;
    VictimMode mode;
    uint64_t seed = 0;
    std::vector<std::string> log; // deterministic action trail
    bool side_chain_accepted = false;
    bool inspection_verified = false;
    uint64_t displayed_balance = 0; // what the victim was shown
    uint64_t actual_balance = 0;    // what she really had
    ArmOutcome leashed;
    ArmOutcome control; // the unleashed arm of the paired run
    std::vector<Hash256> consensus_roots;
    bool harm_dominance_ok = false;

    std::string to_text() const;
};

ScenarioReport run_scenario(const ScenarioSpec& spec);

/// Hard-fork variants (§ fork-identity handling); spec.kind must be one of
/// the HardFork kinds.
ScenarioReport run_hard_fork_scenario(const ScenarioSpec& spec);

// --- bundled replay demonstration -----------------------------------------

struct ReplayDemoSpec {
    uint64_t seed = 1;
    uint64_t blocks = 20;
    uint64_t z = 5;
    bool double_fork = false;
    uint64_t second_z = 9;
};

struct ReplayDemoReport {
    ReplayDemoSpec spec;
    struct Row {
        uint64_t height;
        bool root_changed;
        bool pointer_stable; // h'(B'_j) == h(B_j)
        bool bytes_identical;
    };
    std::vector<Row> rows;
    size_t swizzled_pairs = 0;
    bool all_stable = false;
    bool anchors_survive = false; // leash anchored inside [z, n] still passes
    std::vector<Row> second_rows; // double-fork variant
    bool second_all_stable = false;

    std::string to_text() const;
    /// Chain fixture dump: `leashsim-chain 1` header plus one hex block per
    /// line (original chain, then a blank line, then the forked chain).
    std::string chain_dump() const;

    std::vector<Block> original_chain;
    std::vector<Block> forked_chain;
};

ReplayDemoReport run_replay_demo(const ReplayDemoSpec& spec);

/// Parses a chain fixture dump back into block lists.
std::pair<std::vector<Block>, std::vector<Block>> parse_chain_dump(const std::string& text);

} // namespace leashsim
