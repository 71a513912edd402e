// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include "leashsim/vm.hpp"

#include <cassert>

#include "leashsim/leash.hpp"

namespace leashsim {

namespace {

constexpr size_t kStackLimit = 1024;

// Whole-transaction abort: out-of-gas, checked-arithmetic failure. Not
// catchable by an enclosing call frame.
struct TxnAbort {
    std::string cause;
};

// Frame-level revert: explicit revert instruction or a frame fault. The
// enclosing CALL observes status 0; at the top level the transaction reverts.
struct FrameRevert {
    Bytes data;
    std::string cause;
};

struct Machine {
    const BlockCtx& ctx;
    const VmConfig& config;
    DbState state;
    uint64_t steps = 0;
    std::vector<TransferEvent> transfers;

    void charge() {
        if (++steps > config.step_budget) throw TxnAbort{"out_of_gas"};
    }

    U256 blockhash_value(const U256& number, bool windowed) const {
        if (number >= ctx.height) return 0;
        uint64_t k = static_cast<uint64_t>(number);
        if (windowed && ctx.height - k > ctx.blockhash_window) return 0;
        BlockId id = ctx.tree->up(ctx.parent, (ctx.height - 1) - k);
        return u256_from_hash(id.digest);
    }

    Bytes run_frame(const AccountId& self, const AccountId& caller, ByteView calldata,
                    uint32_t depth);
};

U256 calldata_word(ByteView calldata, const U256& offset) {
    if (offset >= calldata.size()) return 0;
    size_t off = static_cast<size_t>(offset);
    std::array<uint8_t, 32> word{};
    size_t n = std::min<size_t>(32, calldata.size() - off);
    std::copy_n(calldata.begin() + off, n, word.begin());
    return u256_from_be(word);
}

Bytes Machine::run_frame(const AccountId& self, const AccountId& caller, ByteView calldata,
                         uint32_t depth) {
    const AccountState* acct = state.find(self);
    if (!acct || !acct->code) throw FrameRevert{{}, "no_code"};
    ScriptRef code = acct->code; // keep alive across state mutation

    std::vector<U256> stack;
    Bytes out;
    Bytes last_ret;
    size_t pc = 0;

    auto pop = [&]() -> U256 {
        if (stack.empty()) throw FrameRevert{{}, "stack_underflow"};
        U256 v = stack.back();
        stack.pop_back();
        return v;
    };
    auto push = [&](U256 v) {
        if (stack.size() >= kStackLimit) throw FrameRevert{{}, "stack_overflow"};
        stack.push_back(std::move(v));
    };
    auto checked = [&](std::optional<U256> v, const char* cause) -> U256 {
        if (!v) throw TxnAbort{cause};
        return *v;
    };

    while (pc < code->code.size()) {
        charge();
        const Instr& in = code->code[pc];
        ++pc;
        switch (in.op) {
            case Op::Push: push(in.imm); break;
            case Op::Pop: pop(); break;
            case Op::Dup: {
                U256 v = pop();
                push(v);
                push(v);
                break;
            }
            case Op::Swap: {
                U256 a = pop();
                U256 b = pop();
                push(a);
                push(b);
                break;
            }
            case Op::Add: {
                U256 a = pop(), b = pop();
                push(checked(checked_add(a, b), "arithmetic_overflow"));
                break;
            }
            case Op::Sub: {
                U256 a = pop(), b = pop();
                push(checked(checked_sub(a, b), "arithmetic_overflow"));
                break;
            }
            case Op::Mul: {
                U256 a = pop(), b = pop();
                push(checked(checked_mul(a, b), "arithmetic_overflow"));
                break;
            }
            case Op::Div: {
                U256 a = pop(), b = pop();
                if (b == 0) {
                    if (!config.div_mod_zero_yields_zero) throw TxnAbort{"division_by_zero"};
                    push(0);
                } else {
                    push(a / b);
                }
                break;
            }
            case Op::Mod: {
                U256 a = pop(), b = pop();
                if (b == 0) {
                    if (!config.div_mod_zero_yields_zero) throw TxnAbort{"division_by_zero"};
                    push(0);
                } else {
                    push(a % b);
                }
                break;
            }
            case Op::Lt: {
                U256 a = pop(), b = pop();
                push(a < b ? 1 : 0);
                break;
            }
            case Op::Gt: {
                U256 a = pop(), b = pop();
                push(a > b ? 1 : 0);
                break;
            }
            case Op::Eq: {
                U256 a = pop(), b = pop();
                push(a == b ? 1 : 0);
                break;
            }
            case Op::IsZero: push(pop() == 0 ? 1 : 0); break;
            case Op::Jumpi: {
                U256 dest = pop();
                U256 cond = pop();
                if (cond != 0) {
                    if (dest >= code->code.size()) throw FrameRevert{{}, "bad_jump"};
                    pc = static_cast<size_t>(dest);
                }
                break;
            }
            case Op::Caller: push(u256_from_account(caller)); break;
            case Op::SelfBalance: push(state.balance_of(self)); break;
            case Op::Balance: push(state.balance_of(account_from_u256(pop()))); break;
            case Op::ChainId: push(u256_from_hash(ctx.fork_id)); break;
            case Op::BlockNumber: push(ctx.height); break;
            case Op::BlockHash: push(blockhash_value(pop(), /*windowed=*/true)); break;
            case Op::BlockHashFd: push(blockhash_value(pop(), /*windowed=*/false)); break;
            case Op::CalldataSize: push(calldata.size()); break;
            case Op::CalldataWord: push(calldata_word(calldata, pop())); break;
            case Op::SLoad: {
                U256 addr = pop();
                const AccountState* cur = state.find(self);
                push(cur ? cur->storage_at(addr) : U256(0));
                break;
            }
            case Op::SStore: {
                U256 addr = pop();
                U256 val = pop();
                AccountState& cur = state.upsert(self);
                if (val == 0)
                    cur.storage.erase(addr);
                else
                    cur.storage[addr] = val;
                break;
            }
            case Op::Transfer: {
                AccountId to = account_from_u256(pop());
                U256 amount = pop();
                AccountState& from = state.upsert(self);
                if (from.balance < amount) throw TxnAbort{"insufficient_balance"};
                from.balance -= amount;
                state.upsert(to).balance += amount;
                transfers.push_back({self, to, amount});
                break;
            }
            case Op::HasCode: {
                const AccountState* target = state.find(account_from_u256(pop()));
                push(target && target->is_contract() ? 1 : 0);
                break;
            }
            case Op::Call: {
                AccountId target = account_from_u256(pop());
                U256 off = pop();
                U256 len = pop();
                if (off > calldata.size() || len > calldata.size() ||
                    static_cast<size_t>(off) + static_cast<size_t>(len) > calldata.size())
                    throw FrameRevert{{}, "bad_slice"};
                const AccountState* tgt = state.find(target);
                if (depth + 1 > config.max_call_depth || !tgt || !tgt->is_contract()) {
                    last_ret.clear();
                    push(0);
                    break;
                }
                ByteView inner =
                    calldata.subspan(static_cast<size_t>(off), static_cast<size_t>(len));
                DbState snapshot = state;
                size_t transfer_mark = transfers.size();
                try {
                    last_ret = run_frame(target, self, inner, depth + 1);
                    push(1);
                } catch (FrameRevert& fr) {
                    state = std::move(snapshot);
                    transfers.resize(transfer_mark);
                    last_ret = std::move(fr.data);
                    push(0);
                }
                break;
            }
            case Op::ReturnDataSize: push(last_ret.size()); break;
            case Op::OutWord: {
                auto be = u256_to_be(pop());
                append(out, be);
                break;
            }
            case Op::OutRetData: append(out, last_ret); break;
            case Op::ReturnOut: return out;
            case Op::Revert: throw FrameRevert{std::move(out), "script_revert"};
            case Op::Stop: return {};
        }
    }
    return {}; // fell off the end: stop with empty return data
}

Receipt reverted_receipt(uint64_t steps, Bytes data, std::string cause, LeashOutcome lo,
                         std::optional<LeashReason> reason = std::nullopt) {
    Receipt r;
    r.status = TxnStatus::Reverted;
    r.gas_used = steps;
    r.return_data = std::move(data);
    r.leash_outcome = lo;
    r.leash_reason = reason;
    r.revert_cause = std::move(cause);
    return r;
}

} // namespace

BlockCtx BlockCtx::for_child_of(const BlockTree& tree, const BlockId& parent,
                                const Hash256& fork_id, uint32_t window) {
    BlockCtx ctx;
    ctx.tree = &tree;
    ctx.parent = parent;
    ctx.height = tree.depth(parent) + 1;
    ctx.fork_id = fork_id;
    ctx.blockhash_window = window;
    return ctx;
}

AccountId fee_sink_account() {
    AccountId id;
    id.bytes[0] = 0xfe;
    id.bytes[1] = 0xe5;
    return id;
}

AccountId contract_account_id(const AccountId& creator, const U256& nonce) {
    Encoder enc;
    enc.u8(0xc0);
    enc.account(creator);
    enc.word(nonce);
    return AccountId{sha256(enc.bytes()).bytes};
}

const char* leash_reason_name(LeashReason r) {
    switch (r) {
        case LeashReason::ForkMismatch: return "ForkMismatch";
        case LeashReason::AnchorInFuture: return "AnchorInFuture";
        case LeashReason::LeashExpired: return "LeashExpired";
        case LeashReason::AnchorHashMismatch: return "AnchorHashMismatch";
    }
    return "?";
}

const char* sequencing_error_name(SequencingError e) {
    switch (e) {
        case SequencingError::BadSignature: return "BadSignature";
        case SequencingError::BadNonce: return "BadNonce";
        case SequencingError::InsufficientFee: return "InsufficientFee";
    }
    return "?";
}

ScriptResult execute_script(const DbState& db, const AccountId& contract, ByteView calldata,
                            const BlockCtx& ctx, const AccountId& caller,
                            const VmConfig& config) {
    assert(ctx.tree != nullptr);
    Machine m{ctx, config, db};
    ScriptResult result;
    try {
        result.data = m.run_frame(contract, caller, calldata, 0);
        result.state = std::move(m.state);
        result.transfers = std::move(m.transfers);
    } catch (FrameRevert& fr) {
        result.reverted = true;
        result.data = std::move(fr.data);
        result.revert_cause = std::move(fr.cause);
        result.state = db;
    } catch (TxnAbort& abort) {
        result.reverted = true;
        result.revert_cause = std::move(abort.cause);
        result.state = db;
    }
    result.steps = m.steps;
    return result;
}

ApplyResult apply_txn(const DbState& db, const SignedTxn& txn, const BlockCtx& ctx,
                      const VmConfig& config) {
    assert(ctx.tree != nullptr);
    if (!txn.verify()) return SequencingError::BadSignature;

    const AccountState* sender = db.find(txn.sender);
    U256 sender_nonce = sender ? sender->nonce : U256(0);
    if (txn.nonce != sender_nonce) return SequencingError::BadNonce;

    U256 fee = config.base_fee;
    if (txn.max_fee < fee) return SequencingError::InsufficientFee;
    if (!sender || sender->balance < fee) return SequencingError::InsufficientFee;

    // Sequenced from here on: the nonce advances and the fee is charged no
    // matter what the body does.
    DbState sequenced = db;
    {
        AccountState& s = sequenced.upsert(txn.sender);
        s.nonce += 1;
        s.balance -= fee;
        sequenced.upsert(fee_sink_account()).balance += fee;
    }

    LeashOutcome leash_outcome = LeashOutcome::NotLeashed;
    if (txn.leash) {
        // Metadata mode: validated first, before any contract code is loaded.
        if (auto reason = leash_check(*txn.leash, ctx)) {
            return Applied{std::move(sequenced),
                           reverted_receipt(0, {}, "leash_revert", LeashOutcome::RevertedByLeash,
                                            *reason)};
        }
        leash_outcome = LeashOutcome::Passed;
    }

    Receipt receipt;
    receipt.leash_outcome = leash_outcome;

    if (const auto* transfer = std::get_if<TransferBody>(&txn.body)) {
        AccountState& s = sequenced.upsert(txn.sender);
        if (s.balance < transfer->amount)
            return Applied{std::move(sequenced),
                           reverted_receipt(0, {}, "insufficient_balance", leash_outcome)};
        s.balance -= transfer->amount;
        sequenced.upsert(transfer->to).balance += transfer->amount;
        receipt.transfers.push_back({txn.sender, transfer->to, transfer->amount});
        return Applied{std::move(sequenced), std::move(receipt)};
    }

    if (const auto* call = std::get_if<CallBody>(&txn.body)) {
        if (call->calldata.size() > config.max_calldata)
            return Applied{std::move(sequenced),
                           reverted_receipt(0, {}, "calldata_too_long", leash_outcome)};
        const AccountState* target = sequenced.find(call->contract);
        if (!target || !target->is_contract())
            return Applied{std::move(sequenced), reverted_receipt(0, {}, "no_code", leash_outcome)};
        ScriptResult run =
            execute_script(sequenced, call->contract, call->calldata, ctx, txn.sender, config);
        if (run.reverted) {
            return Applied{std::move(sequenced),
                           reverted_receipt(run.steps, std::move(run.data),
                                            std::move(run.revert_cause), leash_outcome)};
        }
        receipt.gas_used = run.steps;
        receipt.return_data = std::move(run.data);
        receipt.transfers = std::move(run.transfers);
        return Applied{std::move(run.state), std::move(receipt)};
    }

    const auto& deploy = std::get<DeployBody>(txn.body);
    AccountState& s = sequenced.upsert(txn.sender);
    if (s.balance < deploy.endowment)
        return Applied{std::move(sequenced),
                       reverted_receipt(0, {}, "insufficient_balance", leash_outcome)};
    AccountId contract = contract_account_id(txn.sender, txn.nonce);
    if (sequenced.find(contract))
        return Applied{std::move(sequenced),
                       reverted_receipt(0, {}, "deploy_collision", leash_outcome)};
    s.balance -= deploy.endowment;
    AccountState fresh;
    fresh.balance = deploy.endowment;
    fresh.code = std::make_shared<const Script>(deploy.script);
    sequenced.accounts.emplace(contract, std::move(fresh));
    if (deploy.endowment != 0) receipt.transfers.push_back({txn.sender, contract, deploy.endowment});
    Bytes addr(contract.bytes.begin(), contract.bytes.end());
    receipt.return_data = std::move(addr); // deployed account id
    return Applied{std::move(sequenced), std::move(receipt)};
}

SequenceResult apply_sequence(const DbState& db, const std::vector<SignedTxn>& txns,
                              const BlockCtx& ctx, const VmConfig& config) {
    SequenceResult seq;
    seq.state = db;
    seq.results.reserve(txns.size());
    for (size_t i = 0; i < txns.size(); ++i) {
        ApplyResult r = apply_txn(seq.state, txns[i], ctx, config);
        if (auto* applied = std::get_if<Applied>(&r)) {
            seq.state = applied->state;
            seq.results.push_back(std::move(r));
        } else {
            seq.results.push_back(std::move(r));
            seq.halted_at = i;
            break;
        }
    }
    return seq;
}

} // namespace leashsim
