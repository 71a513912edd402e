// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include "leashsim/hasher.hpp"

#include <openssl/sha.h>

namespace leashsim {

Hash256 Sha256Hasher::hash(ByteView data) const { return sha256(data); }

Hash256 sha256(ByteView data) {
    Hash256 out;
    SHA256(data.data(), data.size(), out.bytes.data());
    return out;
}

std::shared_ptr<const Hasher> default_hasher() {
    static const auto instance = std::make_shared<const Sha256Hasher>();
    return instance;
}

} // namespace leashsim
