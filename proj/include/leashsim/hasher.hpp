// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <memory>

#include "leashsim/bytes.hpp"

namespace leashsim {

/// The single hashing interface point. Everything that hashes block or state
/// bytes goes through a Hasher, so a replay fork can substitute a swizzled
/// variant without any other module noticing.
class Hasher {
  public:
    virtual ~Hasher() = default;
    virtual Hash256 hash(ByteView data) const = 0;
};

/// SHA-256.
class Sha256Hasher final : public Hasher {
  public:
    Hash256 hash(ByteView data) const override;
};

/// Process-wide default hasher (plain SHA-256).
std::shared_ptr<const Hasher> default_hasher();

Hash256 sha256(ByteView data);

} // namespace leashsim
