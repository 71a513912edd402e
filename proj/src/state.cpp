// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include "leashsim/state.hpp"

#include <algorithm>

#include "leashsim/errors.hpp"

namespace leashsim {

namespace {

constexpr uint8_t kStateVersion = 1;

// Leaf key domain tags. Sentinels bracket every real key so absence proofs
// always have two committed neighbors.
constexpr uint8_t kKeyMin = 0x00;
constexpr uint8_t kKeyAccount = 0x10;
constexpr uint8_t kKeyStorage = 0x20;
constexpr uint8_t kKeyMax = 0xff;

Bytes account_key(const AccountId& id) {
    Bytes key;
    key.reserve(33);
    key.push_back(kKeyAccount);
    append(key, id.bytes);
    return key;
}

Bytes storage_key(const AccountId& id, const U256& address) {
    Bytes key;
    key.reserve(65);
    key.push_back(kKeyStorage);
    append(key, id.bytes);
    append(key, u256_to_be(address));
    return key;
}

Bytes leaf_bytes(const Bytes& key, const Bytes& value) {
    Encoder enc;
    enc.blob(key);
    enc.blob(value);
    return enc.take();
}

} // namespace

bool AccountState::operator==(const AccountState& other) const {
    if (nonce != other.nonce || balance != other.balance || storage != other.storage)
        return false;
    if ((code == nullptr) != (other.code == nullptr)) return false;
    return code == nullptr || *code == *other.code;
}

const AccountState* DbState::find(const AccountId& id) const {
    auto it = accounts.find(id);
    return it == accounts.end() ? nullptr : &it->second;
}

U256 DbState::balance_of(const AccountId& id) const {
    const AccountState* st = find(id);
    return st ? st->balance : U256(0);
}

U256 DbState::total_supply() const {
    U256 sum = 0;
    for (const auto& [_, st] : accounts) sum += st.balance;
    return sum;
}

Bytes DbState::serialize() const {
    Encoder enc;
    enc.u8(kStateVersion);
    enc.u32(static_cast<uint32_t>(accounts.size()));
    for (const auto& [id, st] : accounts) {
        enc.account(id);
        enc.word(st.nonce);
        enc.word(st.balance);
        if (st.code) {
            enc.u8(1);
            st.code->encode(enc);
        } else {
            enc.u8(0);
        }
        enc.u32(static_cast<uint32_t>(st.storage.size()));
        for (const auto& [addr, val] : st.storage) {
            enc.word(addr);
            enc.word(val);
        }
    }
    return enc.take();
}

DbState DbState::deserialize(ByteView data) {
    Decoder dec(data);
    if (dec.u8() != kStateVersion) raise(Errc::Malformed, "unsupported state version");
    DbState db;
    uint32_t n = dec.u32();
    for (uint32_t i = 0; i < n; ++i) {
        AccountId id = dec.account();
        AccountState st;
        st.nonce = dec.word();
        st.balance = dec.word();
        if (dec.has_optional()) st.code = std::make_shared<const Script>(Script::decode(dec));
        uint32_t nslots = dec.u32();
        for (uint32_t j = 0; j < nslots; ++j) {
            U256 addr = dec.word();
            U256 val = dec.word();
            st.storage.emplace(addr, val);
        }
        db.accounts.emplace(id, std::move(st));
    }
    dec.expect_end();
    return db;
}

Bytes account_leaf_value(const AccountState& st, const Hasher& hasher) {
    Encoder enc;
    enc.word(st.nonce);
    enc.word(st.balance);
    if (st.code) {
        enc.u8(1);
        Encoder code;
        st.code->encode(code);
        enc.hash(hasher.hash(code.bytes()));
    } else {
        enc.u8(0);
    }
    return enc.take();
}

Bytes StateProof::serialize() const {
    Encoder enc;
    path.encode(enc);
    return enc.take();
}

StateProof StateProof::deserialize(ByteView data) {
    Decoder dec(data);
    StateProof p{MerkleProof::decode(dec)};
    dec.expect_end();
    return p;
}

StateCommitment::StateCommitment(const DbState& db, const Hasher& hasher)
    : tree_([&] {
          keys_.push_back(Bytes{kKeyMin});
          values_.push_back(Bytes{});
          // std::map iteration keeps keys sorted, and tag bytes keep the three
          // key classes in disjoint ranges, so the leaf list is sorted overall.
          for (const auto& [id, st] : db.accounts) {
              keys_.push_back(account_key(id));
              values_.push_back(account_leaf_value(st, hasher));
          }
          for (const auto& [id, st] : db.accounts) {
              for (const auto& [addr, val] : st.storage) {
                  keys_.push_back(storage_key(id, addr));
                  auto be = u256_to_be(val);
                  values_.push_back(Bytes(be.begin(), be.end()));
              }
          }
          keys_.push_back(Bytes{kKeyMax});
          values_.push_back(Bytes{});
          std::vector<Bytes> leaves;
          leaves.reserve(keys_.size());
          for (size_t i = 0; i < keys_.size(); ++i)
              leaves.push_back(leaf_bytes(keys_[i], values_[i]));
          return MerkleTree(leaves, hasher);
      }()) {}

std::pair<Bytes, StateProof> StateCommitment::prove_key(const Bytes& key) const {
    auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
    if (it == keys_.end() || *it != key) raise(Errc::UnknownAddress, "key not committed");
    size_t index = static_cast<size_t>(it - keys_.begin());
    return {values_[index], StateProof{tree_.prove(index)}};
}

std::pair<Bytes, StateProof> StateCommitment::prove(const AccountId& account,
                                                    std::optional<U256> address) const {
    Bytes akey = account_key(account);
    auto it = std::lower_bound(keys_.begin(), keys_.end(), akey);
    if (it == keys_.end() || *it != akey) raise(Errc::UnknownAccount, account.hex8());
    if (!address) return prove_key(akey);
    return prove_key(storage_key(account, *address));
}

StateCommitment::Absence StateCommitment::prove_absent(const AccountId& account,
                                                       std::optional<U256> address) const {
    Bytes key = address ? storage_key(account, *address) : account_key(account);
    auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
    if (it != keys_.end() && *it == key) raise(Errc::Malformed, "key is committed");
    size_t succ = static_cast<size_t>(it - keys_.begin());
    size_t pred = succ - 1; // sentinels guarantee both neighbors exist
    Absence out;
    out.pred_key = keys_[pred];
    out.pred_value = values_[pred];
    out.pred = StateProof{tree_.prove(pred)};
    out.succ_key = keys_[succ];
    out.succ_value = values_[succ];
    out.succ = StateProof{tree_.prove(succ)};
    return out;
}

Hash256 state_root(const DbState& db, const Hasher& hasher) {
    return StateCommitment(db, hasher).root();
}

std::pair<Bytes, StateProof> prove(const DbState& db, const AccountId& account,
                                   std::optional<U256> address, const Hasher& hasher) {
    if (address) {
        const AccountState* st = db.find(account);
        if (!st) raise(Errc::UnknownAccount, account.hex8());
        if (!st->is_contract()) raise(Errc::NotAContract, account.hex8());
    }
    return StateCommitment(db, hasher).prove(account, address);
}

bool verify(const Hash256& root, const AccountId& account, std::optional<U256> address,
            ByteView value, const StateProof& proof, const Hasher& hasher) {
    Bytes key = address ? storage_key(account, *address) : account_key(account);
    Bytes leaf = leaf_bytes(key, Bytes(value.begin(), value.end()));
    return MerkleTree::verify_leaf(hasher, root, leaf, proof.path);
}

bool verify_absent(const Hash256& root, const AccountId& account, std::optional<U256> address,
                   const StateCommitment::Absence& proof, const Hasher& hasher) {
    Bytes key = address ? storage_key(account, *address) : account_key(account);
    if (!(proof.pred_key < key && key < proof.succ_key)) return false;
    if (proof.pred.path.leaf_index() + 1 != proof.succ.path.leaf_index()) return false;
    if (!MerkleTree::verify_leaf(hasher, root, leaf_bytes(proof.pred_key, proof.pred_value),
                                 proof.pred.path))
        return false;
    return MerkleTree::verify_leaf(hasher, root, leaf_bytes(proof.succ_key, proof.succ_value),
                                   proof.succ.path);
}

} // namespace leashsim
