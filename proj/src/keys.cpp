// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include "leashsim/keys.hpp"

#include <sodium.h>

#include <cassert>
#include <mutex>

#include "leashsim/codec.hpp"

namespace leashsim {

namespace {

void ensure_sodium() {
    static std::once_flag once;
    std::call_once(once, [] {
        int rc = sodium_init();
        assert(rc >= 0);
        (void)rc;
    });
}

} // namespace

Keypair Keypair::from_seed(const Hash256& seed) {
    ensure_sodium();
    Keypair kp;
    crypto_sign_seed_keypair(kp.pub.bytes.data(), kp.secret.data(), seed.bytes.data());
    return kp;
}

Keypair Keypair::derive(uint64_t seed, std::string_view name) {
    Encoder enc;
    enc.u8(0x4b); // key-derivation domain tag
    enc.u64(seed);
    enc.raw(ByteView(reinterpret_cast<const uint8_t*>(name.data()), name.size()));
    return from_seed(sha256(enc.bytes()));
}

Signature Keypair::sign(ByteView message) const {
    ensure_sodium();
    Signature sig;
    crypto_sign_detached(sig.bytes.data(), nullptr, message.data(), message.size(), secret.data());
    return sig;
}

bool verify_signature(const PubKey& pub, ByteView message, const Signature& sig) {
    ensure_sodium();
    return crypto_sign_verify_detached(sig.bytes.data(), message.data(), message.size(),
                                       pub.bytes.data()) == 0;
}

AccountId eoa_account_id(const PubKey& pub) {
    Bytes tagged;
    tagged.push_back(0xea);
    append(tagged, pub.bytes);
    return AccountId{sha256(tagged).bytes};
}

} // namespace leashsim
