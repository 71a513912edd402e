// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <array>
#include <compare>
#include <string>

#include "leashsim/bytes.hpp"
#include "leashsim/hasher.hpp"

namespace leashsim {

struct PubKey {
    std::array<uint8_t, 32> bytes{};
    auto operator<=>(const PubKey&) const = default;
    std::string hex() const { return to_hex(bytes); }
    std::string hex8() const { return hex().substr(0, 8); }
};

struct Signature {
    std::array<uint8_t, 64> bytes{};
    auto operator<=>(const Signature&) const = default;
};

/// Ed25519 keypair. Signing is deterministic, so identical inputs always
/// yield identical block and transaction bytes.
struct Keypair {
    PubKey pub;
    std::array<uint8_t, 64> secret{};

    /// Deterministic keypair from a 32-byte seed.
    static Keypair from_seed(const Hash256& seed);
    /// Named keypair derived from (scenario seed, name); the scenario key
    /// store leaks these seeds to the adversary wholesale.
    static Keypair derive(uint64_t seed, std::string_view name);

    Signature sign(ByteView message) const;
};

bool verify_signature(const PubKey& pub, ByteView message, const Signature& sig);

/// EOA account ids are hashes of the controlling public key.
AccountId eoa_account_id(const PubKey& pub);

} // namespace leashsim
