// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <map>
#include <optional>

#include "leashsim/merkle.hpp"
#include "leashsim/script.hpp"

namespace leashsim {

struct AccountState {
    U256 nonce = 0;
    U256 balance = 0;
    ScriptRef code;               // null for EOAs
    std::map<U256, U256> storage; // per-contract key-value store

    bool is_contract() const { return code != nullptr; }
    U256 storage_at(const U256& address) const {
        auto it = storage.find(address);
        return it == storage.end() ? U256(0) : it->second;
    }

    bool operator==(const AccountState& other) const;
};

/// Ledger state snapshot. Value semantics: transaction application copies
/// and mutates, so snapshots can be kept and compared freely.
struct DbState {
    std::map<AccountId, AccountState> accounts;

    bool operator==(const DbState&) const = default;

    const AccountState* find(const AccountId& id) const;
    AccountState& upsert(const AccountId& id) { return accounts[id]; }
    U256 balance_of(const AccountId& id) const;
    /// Sum of every balance (the fee sink is an ordinary account, so this is
    /// the conserved quantity).
    U256 total_supply() const;

    Bytes serialize() const;
    static DbState deserialize(ByteView data);
};

/// Inclusion proof for one committed (key, value) leaf.
struct StateProof {
    MerkleProof path;

    bool operator==(const StateProof&) const = default;
    Bytes serialize() const;
    static StateProof deserialize(ByteView data);
};

/// Commitment over the state: a sorted binary Merkle tree of domain-tagged
/// account and storage leaves, with boundary sentinels so any absent key has
/// adjacent committed neighbors.
class StateCommitment {
  public:
    explicit StateCommitment(const DbState& db, const Hasher& hasher = *default_hasher());

    const Hash256& root() const { return tree_.root(); }

    /// Account-tuple leaf value (nonce, balance, code hash) or storage value.
    /// Throws UnknownAccount / NotAContract / UnknownAddress.
    std::pair<Bytes, StateProof> prove(const AccountId& account,
                                       std::optional<U256> address = std::nullopt) const;

    struct Absence {
        Bytes pred_key, pred_value;
        StateProof pred;
        Bytes succ_key, succ_value;
        StateProof succ;
    };
    /// Adjacent-leaf range proof that the key is not committed.
    Absence prove_absent(const AccountId& account, std::optional<U256> address = std::nullopt) const;

  private:
    std::pair<Bytes, StateProof> prove_key(const Bytes& key) const;

    std::vector<Bytes> keys_;
    std::vector<Bytes> values_;
    MerkleTree tree_;
};

Hash256 state_root(const DbState& db, const Hasher& hasher = *default_hasher());

std::pair<Bytes, StateProof> prove(const DbState& db, const AccountId& account,
                                   std::optional<U256> address = std::nullopt,
                                   const Hasher& hasher = *default_hasher());

/// True iff the proof binds (account, address, value) to the root.
/// Malformed proofs return false.
bool verify(const Hash256& root, const AccountId& account, std::optional<U256> address,
            ByteView value, const StateProof& proof, const Hasher& hasher = *default_hasher());

bool verify_absent(const Hash256& root, const AccountId& account, std::optional<U256> address,
                   const StateCommitment::Absence& proof,
                   const Hasher& hasher = *default_hasher());

/// Canonical byte encoding of the account tuple committed at account leaves.
Bytes account_leaf_value(const AccountState& st, const Hasher& hasher = *default_hasher());

} // namespace leashsim
