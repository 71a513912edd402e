// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace leashsim {

enum class Errc {
    // block tree
    MissingParent,
    HeightMismatch,
    GenesisConflict,
    UnknownBlock,
    PastRoot,
    // state
    UnknownAccount,
    NotAContract,
    UnknownAddress,
    // leash
    MalformedParams,
    CalldataTooLong,
    // consensus / adversary
    BadQuorum,
    InsufficientKeys,
    ProofRejected,
    // replay
    IndexOutOfRange,
    CollisionFound,
    // winkle analysis
    NonceGap,
    TooLarge,
    Overflow,
    // serialization / config
    Malformed,
    ConfigError,
};

const char* errc_name(Errc c);

/// Caller-contract violations and malformed inputs throw; domain outcomes
/// (receipts, leash verdicts, light-client rejects) are values, not errors.
class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) {
    throw Error(code, what);
}

} // namespace leashsim
