// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include "leashsim/scenario.hpp"

#include <cassert>
#include <cstring>
#include <sstream>

#include "leashsim/contracts.hpp"
#include "leashsim/errors.hpp"
#include "leashsim/rng.hpp"

namespace leashsim {

const char* scenario_kind_name(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::CanonicalLra: return "canonical-lra";
        case ScenarioKind::StaleTruncation: return "stale-truncation";
        case ScenarioKind::SkippedVerification: return "skipped-verification";
        case ScenarioKind::HardForkHidden: return "hard-fork-hidden";
        case ScenarioKind::HardForkBogus: return "hard-fork-bogus";
    }
    return "?";
}

const char* victim_mode_name(VictimMode m) {
    switch (m) {
        case VictimMode::Metadata: return "metadata";
        case VictimMode::Wrapper: return "wrapper";
        case VictimMode::WrapperWindowed: return "wrapper-windowed";
        case VictimMode::Gateway: return "gateway";
        case VictimMode::Unleashed: return "unleashed";
    }
    return "?";
}

namespace {

Hash256 derived_fork_id(uint64_t seed, const char* label) {
    Encoder enc;
    enc.u8(0xf0);
    enc.u64(seed);
    enc.raw(ByteView(reinterpret_cast<const uint8_t*>(label), std::strlen(label)));
    return sha256(enc.bytes());
}

struct EpochSet {
    std::vector<Keypair> keys;
    Committee committee;

    static EpochSet fresh(uint64_t seed, uint64_t epoch, uint64_t size, uint32_t threshold) {
        EpochSet es;
        for (uint64_t i = 0; i < size; ++i)
            es.keys.push_back(Keypair::derive(
                seed, "validator-e" + std::to_string(epoch) + "-" + std::to_string(i)));
        es.committee.epoch = epoch;
        es.committee.threshold = threshold;
        for (const Keypair& k : es.keys) es.committee.members.push_back(k.pub);
        return es;
    }
};

/// The honest world: chain, per-height states, committees, and the standing
/// contracts (vault, gateway).
struct World {
    const ScenarioSpec& spec;
    Hash256 fork1, fork2, fork_bogus;
    BlockTree tree;
    std::vector<EpochSet> epochs;
    std::vector<BlockId> chain;
    std::vector<Block> bodies;            // bodies of chain[1..], index h-1
    std::vector<DbState> states;          // states[h] = state after block h
    std::vector<uint64_t> epoch_at;       // epoch of block h
    std::vector<uint64_t> committee_after; // committee epoch governing children of h
    Keypair alice, cobb, trader;
    AccountId alice_id, cobb_id, cobb_front, vault_id, gateway_id;
    VmConfig vm;

    explicit World(const ScenarioSpec& s) : spec(s) {
        fork1 = derived_fork_id(s.seed, "fork-main");
        fork2 = derived_fork_id(s.seed, "fork-upgrade");
        fork_bogus = derived_fork_id(s.seed, "fork-bogus");

        alice = Keypair::derive(s.seed, "alice");
        cobb = Keypair::derive(s.seed, "cobb");
        trader = Keypair::derive(s.seed, "trader");
        alice_id = eoa_account_id(alice.pub);
        cobb_id = eoa_account_id(cobb.pub);
        cobb_front = account_from_u256(U256(0xC0BBF407));
        vault_id = account_from_u256(U256(0x7A017));
        gateway_id = account_from_u256(U256(0x6A7E1));

        DbState db;
        db.accounts[alice_id].balance = 10'000;
        db.accounts[cobb_id].balance = 1'000;
        db.accounts[trader_id()].balance = 1'000'000;
        AccountState vault;
        vault.balance = 5'000;
        vault.code = std::make_shared<const Script>(vault_pay_script());
        vault.storage[u256_from_account(alice_id)] = 5'000;
        db.accounts[vault_id] = std::move(vault);
        AccountState gw;
        gw.code = std::make_shared<const Script>(gateway_contract());
        db.accounts[gateway_id] = std::move(gw);

        epochs.push_back(EpochSet::fresh(s.seed, 0, s.committee_size, s.threshold));
        if (!epochs[0].committee.well_formed())
            raise(Errc::ConfigError, "committee size/threshold violate the quorum bound");

        Block genesis;
        genesis.fork_id = fork1;
        genesis.state_root = state_root(db);
        chain.push_back(tree.insert_block(genesis));
        states.push_back(db);
        epoch_at.push_back(0);
        committee_after.push_back(0);

        uint64_t epoch = 0;
        U256 trader_nonce = 0;
        for (uint64_t h = 1; h <= spec.honest_blocks; ++h) {
            Hash256 fork = block_fork(h);
            std::vector<SignedTxn> txs;
            txs.push_back(sign_txn(trader, {trader_nonce, TransferBody{filler_account(h), 1},
                                            fork, vm.base_fee}));
            trader_nonce += 1;

            BlockCtx ctx = BlockCtx::for_child_of(tree, chain.back(), fork, spec.blockhash_window);
            SequenceResult seq = apply_sequence(db, txs, ctx, vm);
            if (seq.halted_at) raise(Errc::ConfigError, "honest schedule produced a bad txn");
            db = std::move(seq.state);

            std::optional<TransitionRecord> transition;
            if (h % spec.epoch_length == 0) {
                EpochSet next = EpochSet::fresh(spec.seed, epoch + 1, spec.committee_size,
                                                spec.threshold);
                transition =
                    register_transition(epochs[epoch].committee, next.committee, epochs[epoch].keys);
                epochs.push_back(std::move(next));
            }
            Block b = mint_block(epochs[epoch].keys, tree, chain.back(), std::move(txs),
                                 state_root(db), fork, epoch, transition);
            bodies.push_back(b);
            chain.push_back(tree.insert_block(b));
            states.push_back(db);
            epoch_at.push_back(epoch);
            if (transition) ++epoch;
            committee_after.push_back(epoch);
        }
    }

    AccountId trader_id() const { return eoa_account_id(trader.pub); }
    AccountId filler_account(uint64_t h) const {
        return account_from_u256(U256(0xAAAA0000) + U256(h));
    }

    Hash256 block_fork(uint64_t h) const {
        if (spec.kind == ScenarioKind::HardForkHidden && h >= spec.gov_fork_height) return fork2;
        return fork1;
    }
    Hash256 tip_fork() const { return block_fork(spec.honest_blocks); }

    uint64_t tip_epoch() const { return epoch_at.back(); }
    bool epoch_leaked(uint64_t e) const { return e + spec.recent_window <= tip_epoch(); }

    LightClientState client_at(uint64_t h) const {
        LightClientState c;
        c.trusted_block = chain[h];
        c.trusted_height = h;
        c.trusted_committee = epochs[committee_after[h]].committee;
        c.recent_window = spec.recent_window;
        return c;
    }

    U256 adversary_holdings(const DbState& db) const {
        return db.balance_of(cobb_id) + db.balance_of(cobb_front);
    }
};

Bytes vault_calldata(const AccountId& dest, const U256& amount) {
    Encoder enc;
    enc.word(u256_from_account(dest));
    enc.word(amount);
    return enc.take();
}

std::string receipt_note(const Receipt& r) {
    std::ostringstream s;
    if (r.committed()) {
        s << "Committed";
    } else {
        s << "Reverted(";
        if (r.leash_reason) s << leash_reason_name(*r.leash_reason);
        else s << r.revert_cause;
        s << ")";
    }
    s << " leash=" << (r.leash_outcome == LeashOutcome::NotLeashed    ? "none"
                       : r.leash_outcome == LeashOutcome::Passed      ? "passed"
                                                                      : "reverted");
    return s.str();
}

} // namespace

void ScenarioSpec::validate() const {
    if (honest_blocks < 2 || honest_blocks > 100'000)
        raise(Errc::ConfigError, "honest-blocks out of range");
    if (sleep_height == 0 || sleep_height >= honest_blocks)
        raise(Errc::ConfigError, "sleep-height must be inside the honest chain");
    if (epoch_length == 0) raise(Errc::ConfigError, "epoch-length must be positive");
    if (committee_size == 0 || threshold == 0)
        raise(Errc::ConfigError, "committee size and threshold must be positive");
    if (rounds == 0 || rounds > 16) raise(Errc::ConfigError, "rounds out of range");
    if ((kind == ScenarioKind::HardForkHidden) &&
        (gov_fork_height <= sleep_height || gov_fork_height > honest_blocks))
        raise(Errc::ConfigError, "gov-fork-height must lie after sleep and inside the chain");
    if (side_length == 0 && kind != ScenarioKind::StaleTruncation &&
        kind != ScenarioKind::SkippedVerification)
        raise(Errc::ConfigError, "side-length must be positive for forged-chain scenarios");
}

Victim::Victim(Keypair key, LightClientState trust, Block trusted_tip, VictimPolicy policy)
    : key_(std::move(key)), view_(std::move(trust)), view_tip_(std::move(trusted_tip)),
      policy_(std::move(policy)) {}

bool Victim::receive_segment(std::span<const Block> segment) {
    LightVerifyResult r = light_verify(view_, segment);
    if (!r.accepted()) return false;
    view_ = r.state;
    view_tip_ = segment.empty() ? view_tip_ : segment.back();
    return true;
}

Bytes Victim::inspect(const InspectionOffer& offer) {
    if (offer.claimed_root != view_tip_.state_root)
        raise(Errc::ProofRejected, "offer root does not match the view tip");
    if (policy_.verify_proofs &&
        !verify(view_tip_.state_root, offer.account, offer.address, offer.value, offer.proof))
        raise(Errc::ProofRejected, "merkle proof does not bind the value to the state root");
    return offer.value;
}

std::vector<SignedTxn> Victim::propose(bool leashed, const U256& first_nonce) {
    Bytes inner = vault_calldata(policy_.pay_dest, policy_.transfer_amount);
    Hash256 fork = view_tip_.fork_id;

    if (!leashed || policy_.mode == VictimMode::Unleashed) {
        return {sign_txn(key_, {first_nonce, CallBody{policy_.vault, inner}, fork,
                                policy_.max_fee})};
    }

    LeashParams params = make_leash(view_.trusted_height, view_.trusted_block.digest,
                                    policy_.leash_length, fork);
    switch (policy_.mode) {
        case VictimMode::Metadata:
            return {wrap_metadata(key_, {first_nonce, CallBody{policy_.vault, inner}, fork,
                                         policy_.max_fee},
                                  params)};
        case VictimMode::Gateway:
            return {sign_txn(key_, {first_nonce,
                                    CallBody{policy_.gateway,
                                             gateway_encode(params, policy_.vault, inner)},
                                    fork, policy_.max_fee})};
        case VictimMode::Wrapper:
        case VictimMode::WrapperWindowed: {
            bool full_domain = policy_.mode == VictimMode::Wrapper;
            Script wrapper = wrap_script(policy_.vault, params, full_domain);
            AccountId wrapper_id = contract_account_id(account(), first_nonce);
            std::vector<SignedTxn> txns;
            txns.push_back(
                sign_txn(key_, {first_nonce, DeployBody{std::move(wrapper), 0}, fork,
                                policy_.max_fee}));
            txns.push_back(sign_txn(key_, {first_nonce + 1, CallBody{wrapper_id, inner}, fork,
                                           policy_.max_fee}));
            return txns;
        }
        default:
            raise(Errc::ConfigError, "unhandled victim mode");
    }
}

std::vector<Block> build_side_chain(BlockTree& tree, const BlockId& fork_point,
                                    std::span<const Keypair> leaked_keys,
                                    const Committee& forged_committee, const SideChainPlan& plan) {
    size_t member_keys = 0;
    for (const Keypair& k : leaked_keys)
        if (forged_committee.is_member(k.pub)) ++member_keys;
    if (member_keys < forged_committee.threshold)
        raise(Errc::InsufficientKeys, "leaked keys below the forged committee's quorum");

    std::vector<Block> side;
    BlockId parent = fork_point;
    for (size_t i = 0; i < plan.state_roots.size(); ++i) {
        std::vector<SignedTxn> txs = i < plan.txs.size() ? plan.txs[i] : std::vector<SignedTxn>{};
        Block b = mint_block(leaked_keys, tree, parent, std::move(txs), plan.state_roots[i],
                             plan.fork_id, plan.epoch);
        parent = tree.insert_block(b);
        side.push_back(std::move(b));
    }
    return side;
}

namespace {

struct ArmRun {
    ArmOutcome outcome;
    std::vector<std::string> log;
    Hash256 arm_block_root;
};

ArmRun apply_arm(World& world, const std::vector<SignedTxn>& txns, const char* label) {
    ArmRun run;
    if (txns.empty()) {
        run.outcome.proposed = false;
        run.log.push_back(std::string("arm ") + label + ": no proposal signed");
        return run;
    }
    run.outcome.proposed = true;

    const DbState& before = world.states.back();
    BlockCtx ctx = BlockCtx::for_child_of(world.tree, world.chain.back(), world.tip_fork(),
                                          world.spec.blockhash_window);
    SequenceResult seq = apply_sequence(before, txns, ctx, world.vm);

    for (size_t i = 0; i < seq.results.size(); ++i) {
        if (const auto* applied = std::get_if<Applied>(&seq.results[i])) {
            run.log.push_back(std::string("arm ") + label + " txn " + std::to_string(i) + ": " +
                              receipt_note(applied->receipt));
        } else {
            run.log.push_back(std::string("arm ") + label + " txn " + std::to_string(i) +
                              ": not sequenced (" +
                              sequencing_error_name(std::get<SequencingError>(seq.results[i])) +
                              ")");
        }
    }

    // the value-moving transaction is the last one (wrapper mode deploys first)
    const ApplyResult& final_result = seq.results.back();
    if (const auto* applied = std::get_if<Applied>(&final_result)) {
        run.outcome.status = applied->receipt.status;
        run.outcome.leash_reason = applied->receipt.leash_reason;
        if (!applied->receipt.leash_reason && !applied->receipt.committed() &&
            applied->receipt.return_data.size() >= kGatewayReturnPrefixBytes) {
            // surface the gateway's status word as a reason when present
            if (auto st = gateway_status_of(applied->receipt.return_data)) {
                switch (*st) {
                    case GatewayStatus::ForkMismatch:
                        run.outcome.leash_reason = LeashReason::ForkMismatch;
                        break;
                    case GatewayStatus::AnchorInFuture:
                        run.outcome.leash_reason = LeashReason::AnchorInFuture;
                        break;
                    case GatewayStatus::LeashExpired:
                        run.outcome.leash_reason = LeashReason::LeashExpired;
                        break;
                    case GatewayStatus::AnchorHashMismatch:
                        run.outcome.leash_reason = LeashReason::AnchorHashMismatch;
                        break;
                    default: break;
                }
            }
        }
        run.outcome.receipt_note = receipt_note(applied->receipt);
    } else {
        run.outcome.receipt_note =
            std::string("NotSequenced(") +
            sequencing_error_name(std::get<SequencingError>(final_result)) + ")";
    }

    run.outcome.adversary_gain =
        world.adversary_holdings(seq.state) - world.adversary_holdings(before);
    run.outcome.victim_fee_loss = before.balance_of(world.alice_id) -
                                  seq.state.balance_of(world.alice_id);
    U256 deposit_before = before.accounts.at(world.vault_id).storage_at(
        u256_from_account(world.alice_id));
    U256 deposit_after = seq.state.accounts.at(world.vault_id).storage_at(
        u256_from_account(world.alice_id));
    run.outcome.victim_value_loss = deposit_before - deposit_after;

    // the arm's alternative future as a block tree sibling
    Block arm_block = mint_block(world.epochs[world.committee_after.back()].keys, world.tree,
                                 world.chain.back(), txns, state_root(seq.state),
                                 world.tip_fork(), world.committee_after.back());
    world.tree.insert_block(arm_block);
    run.arm_block_root = arm_block.state_root;
    return run;
}

ScenarioReport run_common(const ScenarioSpec& spec) {
    spec.validate();
    World world(spec);

    ScenarioReport report;
    report.kind = spec.kind;
    report.mode = spec.victim_mode;
    report.seed = spec.seed;
    for (const DbState& st : world.states) report.consensus_roots.push_back(state_root(st));

    // Safety assertion: the designated consensus chain light-verifies.
    {
        LightVerifyResult honest = light_verify(world.client_at(0), world.bodies);
        if (!honest.accepted()) raise(Errc::ConfigError, "honest chain failed light verification");
        report.log.push_back("honest chain: light-verified, tip epoch " +
                             std::to_string(world.tip_epoch()));
    }

    // Alice sleeps. From here her inputs are exclusively adversary-supplied.
    VictimPolicy policy;
    policy.mode = spec.victim_mode;
    policy.leash_length = spec.leash_length;
    policy.verify_proofs = spec.verify_proofs;
    policy.transfer_amount = spec.transfer_amount;
    policy.max_fee = world.vm.base_fee;
    policy.pay_dest = world.cobb_front;
    policy.vault = world.vault_id;
    policy.gateway = world.gateway_id;
    Victim victim(world.alice, world.client_at(spec.sleep_height),
                  spec.sleep_height == 0 ? world.tree.block(world.chain[0])
                                         : world.bodies[spec.sleep_height - 1],
                  policy);
    report.log.push_back("victim sleeps at height " + std::to_string(spec.sleep_height));

    report.actual_balance =
        static_cast<uint64_t>(world.states.back().balance_of(world.alice_id));

    // --- the adversary's presentation phase --------------------------------
    DbState bogus_db = world.states[spec.sleep_height];
    bool offer_is_bogus_value = false;
    std::vector<Block> shown;

    switch (spec.kind) {
        case ScenarioKind::CanonicalLra:
        case ScenarioKind::HardForkHidden:
        case ScenarioKind::HardForkBogus: {
            uint64_t side_epoch = world.committee_after[spec.sleep_height];
            if (!world.epoch_leaked(side_epoch))
                raise(Errc::ConfigError,
                      "scenario needs leaked keys for the sleep-point committee");
            bogus_db.upsert(world.alice_id).balance += spec.balance_bonus;

            SideChainPlan plan;
            plan.epoch = side_epoch;
            plan.fork_id = spec.kind == ScenarioKind::HardForkBogus ? world.fork_bogus
                                                                    : world.fork1;
            DbState rolling = bogus_db;
            for (uint64_t i = 0; i < spec.side_length * spec.rounds; ++i) {
                rolling.upsert(world.filler_account(0xb000 + i)).balance = i + 1;
                plan.state_roots.push_back(state_root(rolling));
                plan.txs.emplace_back();
                // the inspection happens at the first round's tip
                if (i + 1 == spec.side_length) bogus_db = rolling;
            }
            shown = build_side_chain(world.tree, world.chain[spec.sleep_height],
                                     world.epochs[side_epoch].keys,
                                     world.epochs[side_epoch].committee, plan);
            report.log.push_back("adversary forged " + std::to_string(shown.size()) +
                                 " side blocks at epoch " + std::to_string(side_epoch));
            break;
        }
        case ScenarioKind::StaleTruncation:
            report.log.push_back("adversary shows the truncated real chain only");
            break;
        case ScenarioKind::SkippedVerification:
            // relay the real chain, lie about the values inside it
            shown.assign(world.bodies.begin() + spec.sleep_height, world.bodies.end());
            bogus_db = world.states.back();
            offer_is_bogus_value = true;
            report.log.push_back("adversary relays the real chain and forges displayed values");
            break;
    }

    // --- the victim's verification phase ------------------------------------
    size_t per_round = spec.kind == ScenarioKind::SkippedVerification
                           ? shown.size()
                           : (shown.empty() ? 0 : spec.side_length);
    auto feed_round = [&](uint64_t round) {
        if (shown.empty()) return true;
        size_t from = round * per_round;
        size_t to = std::min(shown.size(), from + per_round);
        if (from >= to) return true;
        bool ok = victim.receive_segment(
            std::span<const Block>(shown.data() + from, to - from));
        report.side_chain_accepted = ok;
        report.log.push_back(std::string("victim light-verify of shown segment: ") +
                             (ok ? "accepted" : "rejected"));
        return ok;
    };

    if (!feed_round(0)) {
        report.log.push_back("victim rejected the shown chain; scenario ends harmlessly");
    }
    if (shown.empty()) report.side_chain_accepted = false;

    InspectionOffer offer;
    offer.account = world.alice_id;
    offer.claimed_root = victim.view_tip().state_root;
    {
        DbState& source = bogus_db;
        StateCommitment commit(source);
        auto [value, proof] = commit.prove(world.alice_id);
        if (offer_is_bogus_value) {
            // bogus value, real root: only a skipped-verification victim bites
            AccountState forged = source.accounts.at(world.alice_id);
            forged.balance += spec.balance_bonus;
            offer.value = account_leaf_value(forged);
            offer.proof = proof; // proves the *real* tuple, not the forged one
        } else {
            offer.value = value;
            offer.proof = proof;
        }
    }

    bool inspection_ok = false;
    try {
        Bytes value = victim.inspect(offer);
        Decoder dec(value);
        dec.word(); // nonce
        report.displayed_balance = static_cast<uint64_t>(dec.word());
        inspection_ok = true;
        report.inspection_verified = policy.verify_proofs;
        report.log.push_back("victim inspected her balance: displayed " +
                             std::to_string(report.displayed_balance) + ", actual " +
                             std::to_string(report.actual_balance));
    } catch (const Error& e) {
        report.log.push_back(std::string("victim inspection aborted: ") + e.what());
    }

    // --- proposals and their fate on the consensus chain --------------------
    std::vector<SignedTxn> leashed_txns;
    std::vector<SignedTxn> control_txns;
    if (inspection_ok) {
        U256 nonce = 0;
        for (uint64_t round = 0; round < spec.rounds; ++round) {
            if (round > 0 && !feed_round(round)) break;
            auto batch = victim.propose(/*leashed=*/true, nonce);
            nonce += batch.size();
            LeashParams anchor{victim.view().trusted_height, victim.view().trusted_block.digest,
                               spec.leash_length, victim.view_tip().fork_id};
            report.log.push_back(
                "round " + std::to_string(round) + ": victim signs " +
                victim_mode_name(spec.victim_mode) + " proposal, anchor height " +
                std::to_string(anchor.anchor_height) + ", anchor " +
                anchor.anchor_hash.hex8() + ", l " + std::to_string(spec.leash_length));
            for (SignedTxn& t : batch) leashed_txns.push_back(std::move(t));
        }
        control_txns = victim.propose(/*leashed=*/false, 0);
        report.log.push_back("control arm: victim signs the unleashed twin");
    }

    ArmRun leashed = apply_arm(world, leashed_txns, "leashed");
    ArmRun control = apply_arm(world, control_txns, "control");
    for (const std::string& line : leashed.log) report.log.push_back(line);
    for (const std::string& line : control.log) report.log.push_back(line);
    report.leashed = leashed.outcome;
    report.control = control.outcome;

    report.harm_dominance_ok =
        report.leashed.adversary_gain < report.control.adversary_gain ||
        (report.leashed.adversary_gain == 0 && report.control.adversary_gain == 0);
    return report;
}

} // namespace

ScenarioReport run_scenario(const ScenarioSpec& spec) { return run_common(spec); }

ScenarioReport run_hard_fork_scenario(const ScenarioSpec& spec) {
    if (spec.kind != ScenarioKind::HardForkHidden && spec.kind != ScenarioKind::HardForkBogus)
        raise(Errc::ConfigError, "run_hard_fork_scenario needs a hard-fork scenario kind");
    return run_common(spec);
}

std::string ScenarioReport::to_text() const {
    std::ostringstream s;
    s << "leashsim-report 1\n";
    s << "kind " << scenario_kind_name(kind) << "\n";
    s << "victim-mode " << victim_mode_name(mode) << "\n";
    s << "seed " << seed << "\n\n[trail]\n";
    for (const std::string& line : log) s << line << "\n";
    s << "\n[consensus-roots]\n";
    for (size_t h = 0; h < consensus_roots.size(); ++h)
        s << "height " << h << " root " << consensus_roots[h].hex8() << "\n";
    s << "\n[outcome]\n";
    s << "side-chain-accepted " << (side_chain_accepted ? "yes" : "no") << "\n";
    s << "displayed-balance " << displayed_balance << "\n";
    s << "actual-balance " << actual_balance << "\n";
    auto arm = [&](const char* name, const ArmOutcome& a) {
        s << name << "-proposed " << (a.proposed ? "yes" : "no") << "\n";
        if (a.proposed) {
            s << name << "-receipt " << a.receipt_note << "\n";
            s << name << "-adversary-gain " << u256_dec(a.adversary_gain) << "\n";
            s << name << "-victim-fee-loss " << u256_dec(a.victim_fee_loss) << "\n";
            s << name << "-victim-value-loss " << u256_dec(a.victim_value_loss) << "\n";
        }
    };
    arm("leashed", leashed);
    arm("control", control);
    s << "harm-dominance " << (harm_dominance_ok ? "ok" : "VIOLATED") << "\n";
    return s.str();
}

// --- replay demonstration ---------------------------------------------------

namespace {

struct DemoChain {
    BlockTree tree;
    std::vector<BlockId> chain;
    std::vector<DbState> states;
    Keypair alice, validator0, validator1, validator2;
    AccountId contract;
    Hash256 fork;
    VmConfig buggy;
    std::vector<Keypair> validators;

    DemoChain(uint64_t seed, uint64_t blocks, uint64_t exploit_a, uint64_t exploit_b) {
        buggy.div_mod_zero_yields_zero = true;
        fork = derived_fork_id(seed, "replay-demo");
        alice = Keypair::derive(seed, "demo-alice");
        validators = {Keypair::derive(seed, "demo-v0"), Keypair::derive(seed, "demo-v1"),
                      Keypair::derive(seed, "demo-v2")};

        DbState db;
        db.accounts[eoa_account_id(alice.pub)].balance = 100'000'000;
        contract = account_from_u256(U256(0xD340));
        AccountState cs;
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
        for (uint64_t h = 1; h <= blocks; ++h) {
            uint64_t divisor = (h == exploit_a || h == exploit_b) ? 0 : h + 2;
            Encoder calldata;
            calldata.word(U256(100 + h));
            calldata.word(U256(divisor));
            std::vector<SignedTxn> txs;
            txs.push_back(sign_txn(alice, {nonce, CallBody{contract, calldata.take()}, fork,
                                           buggy.base_fee}));
            nonce += 1;
            BlockCtx ctx = BlockCtx::for_child_of(tree, chain.back(), fork);
            SequenceResult seq = apply_sequence(states.back(), txs, ctx, buggy);
            Block b = mint_block(validators, tree, chain.back(), std::move(txs),
                                 state_root(seq.state), fork, 0);
            chain.push_back(tree.insert_block(b));
            states.push_back(std::move(seq.state));
        }
    }
};

} // namespace

ReplayDemoReport run_replay_demo(const ReplayDemoSpec& spec) {
    if (spec.z == 0 || spec.z >= spec.blocks)
        raise(Errc::IndexOutOfRange, "replay z must satisfy 0 < z < blocks");
    if (spec.double_fork && (spec.second_z <= spec.z || spec.second_z + 1 >= spec.blocks))
        raise(Errc::IndexOutOfRange, "second-z must lie strictly inside (z, blocks-1)");

    uint64_t exploit_b = spec.double_fork ? spec.second_z + 1 : spec.z;
    DemoChain demo(spec.seed, spec.blocks, spec.z, exploit_b);

    ReplayDemoReport report;
    report.spec = spec;
    for (const BlockId& id : demo.chain) report.original_chain.push_back(demo.tree.block(id));

    ReplayInput input;
    input.tree = &demo.tree;
    input.chain = demo.chain;
    input.state_before_z = demo.states[spec.z - 1];
    input.amended_vm = {}; // checked div/mod semantics
    std::vector<Keypair> validators = demo.validators;
    input.signers = [validators](uint64_t) { return validators; };

    ReplayResult first = replay_from(input, spec.z);
    report.forked_chain = first.forked_chain;
    report.swizzled_pairs = first.swizzle.pair_count();

    report.all_stable = true;
    for (uint64_t j = 0; j < demo.chain.size(); ++j) {
        const Block& original = demo.tree.block(demo.chain[j]);
        const Block& forked = first.forked_chain[j];
        ReplayDemoReport::Row row;
        row.height = j;
        row.bytes_identical = original.serialize() == forked.serialize();
        row.root_changed = original.state_root != forked.state_root;
        row.pointer_stable =
            first.forked_hasher->hash(forked.serialize()) == demo.chain[j].digest;
        report.all_stable = report.all_stable && row.pointer_stable;
        report.rows.push_back(row);
    }

    // a leash anchored inside the replayed range still passes with the
    // original (i, v)
    {
        uint64_t anchor_h = std::min<uint64_t>(spec.z + 2, spec.blocks - 1);
        LeashParams params = make_leash(anchor_h, demo.chain[anchor_h].digest,
                                        spec.blocks, demo.fork);
        BlockCtx ctx = BlockCtx::for_child_of(
            first.forked_tree, first.forked_tree.id_for(first.forked_chain.back()), demo.fork);
        report.anchors_survive = !leash_check(params, ctx).has_value();
    }

    if (spec.double_fork) {
        ReplayInput second_in;
        second_in.tree = &first.forked_tree;
        for (const Block& b : first.forked_chain)
            second_in.chain.push_back(first.forked_tree.id_for(b));
        DbState db = demo.states[spec.z - 1];
        for (uint64_t j = spec.z; j < spec.second_z; ++j) {
            BlockCtx ctx = BlockCtx::for_child_of(demo.tree, demo.chain[j - 1], demo.fork);
            db = apply_sequence(db, demo.tree.block(demo.chain[j]).txs, ctx, VmConfig{}).state;
        }
        second_in.state_before_z = db;
        second_in.amended_vm = demo.buggy; // semantics change again
        second_in.signers = input.signers;

        ReplayResult second = replay_from(second_in, spec.second_z);
        SwizzleChain h2_chain = compose_swizzles(second.swizzle, first.swizzle);
        ForkedHash h2(demo.tree.hasher_ptr(), h2_chain);
        report.second_all_stable = true;
        for (uint64_t j = 0; j < demo.chain.size(); ++j) {
            ReplayDemoReport::Row row;
            row.height = j;
            row.bytes_identical =
                second.forked_chain[j].serialize() == first.forked_chain[j].serialize();
            row.root_changed =
                second.forked_chain[j].state_root != first.forked_chain[j].state_root;
            row.pointer_stable = h2.hash(second.forked_chain[j].serialize()) ==
                                 demo.chain[j].digest;
            report.second_all_stable = report.second_all_stable && row.pointer_stable;
            report.second_rows.push_back(row);
        }
    }
    return report;
}

std::string ReplayDemoReport::to_text() const {
    std::ostringstream s;
    s << "leashsim-report 1\n";
    s << "kind replay-demo\n";
    s << "seed " << spec.seed << "\n";
    s << "blocks " << spec.blocks << " z " << spec.z;
    if (spec.double_fork) s << " second-z " << spec.second_z;
    s << "\nswizzled-pairs " << swizzled_pairs << "\n\n[pointer-stability]\n";
    auto table = [&](const std::vector<Row>& rows) {
        for (const Row& r : rows)
            s << "height " << r.height << " root " << (r.root_changed ? "changed " : "same    ")
              << "bytes " << (r.bytes_identical ? "identical " : "differ    ") << "pointer "
              << (r.pointer_stable ? "stable" : "BROKEN") << "\n";
    };
    table(rows);
    s << "all-stable " << (all_stable ? "yes" : "NO") << "\n";
    s << "anchors-survive " << (anchors_survive ? "yes" : "NO") << "\n";
    if (spec.double_fork) {
        s << "\n[second-fork]\n";
        table(second_rows);
        s << "second-all-stable " << (second_all_stable ? "yes" : "NO") << "\n";
    }
    return s.str();
}

std::string ReplayDemoReport::chain_dump() const {
    std::ostringstream s;
    s << "leashsim-chain 1\n";
    for (const Block& b : original_chain) s << to_hex(b.serialize()) << "\n";
    s << "\n";
    for (const Block& b : forked_chain) s << to_hex(b.serialize()) << "\n";
    return s.str();
}

std::pair<std::vector<Block>, std::vector<Block>> parse_chain_dump(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "leashsim-chain 1")
        raise(Errc::Malformed, "missing chain dump header");
    std::vector<Block> first, second;
    bool in_second = false;
    while (std::getline(in, line)) {
        if (line.empty()) {
            in_second = true;
            continue;
        }
        Bytes raw = from_hex(line);
        (in_second ? second : first).push_back(Block::deserialize(raw));
    }
    return {std::move(first), std::move(second)};
}

} // namespace leashsim
