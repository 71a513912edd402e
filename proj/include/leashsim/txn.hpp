// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <optional>
#include <variant>

#include "leashsim/keys.hpp"
#include "leashsim/leash_params.hpp"
#include "leashsim/script.hpp"

namespace leashsim {

struct TransferBody {
    AccountId to;
    U256 amount;
    bool operator==(const TransferBody&) const = default;
};

struct CallBody {
    AccountId contract;
    Bytes calldata;
    bool operator==(const CallBody&) const = default;
};

struct DeployBody {
    Script script;
    U256 endowment;
    bool operator==(const DeployBody&) const = default;
};

using TxnBody = std::variant<TransferBody, CallBody, DeployBody>;

/// Unsigned transaction fields; signing binds them all, including the leash
/// and the fork identity, so none can be stripped or replayed under another
/// context.
struct TxnDraft {
    U256 nonce;
    TxnBody body;
    Hash256 fork_id;
    U256 max_fee;
};

struct SignedTxn {
    AccountId sender;
    U256 nonce;
    TxnBody body;
    std::optional<LeashParams> leash;
    Hash256 fork_id;
    U256 max_fee;
    PubKey sender_pub;
    Signature signature;

    bool operator==(const SignedTxn&) const = default;

    /// Canonical serialization of every field except the signature; this is
    /// what gets signed.
    Bytes signed_payload() const;
    Bytes serialize() const;
    static SignedTxn deserialize(ByteView data);

    void encode(Encoder& enc) const;
    static SignedTxn decode(Decoder& dec);

    /// Signature valid and sender id matches the embedded public key.
    bool verify() const;
};

SignedTxn sign_txn(const Keypair& key, const TxnDraft& draft,
                   std::optional<LeashParams> leash = std::nullopt);

} // namespace leashsim
