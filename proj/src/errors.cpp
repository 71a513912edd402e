// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include "leashsim/errors.hpp"

namespace leashsim {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::MissingParent: return "MissingParent";
        case Errc::HeightMismatch: return "HeightMismatch";
        case Errc::GenesisConflict: return "GenesisConflict";
        case Errc::UnknownBlock: return "UnknownBlock";
        case Errc::PastRoot: return "PastRoot";
        case Errc::UnknownAccount: return "UnknownAccount";
        case Errc::NotAContract: return "NotAContract";
        case Errc::UnknownAddress: return "UnknownAddress";
        case Errc::MalformedParams: return "MalformedParams";
        case Errc::CalldataTooLong: return "CalldataTooLong";
        case Errc::BadQuorum: return "BadQuorum";
        case Errc::InsufficientKeys: return "InsufficientKeys";
        case Errc::ProofRejected: return "ProofRejected";
        case Errc::IndexOutOfRange: return "IndexOutOfRange";
        case Errc::CollisionFound: return "CollisionFound";
        case Errc::NonceGap: return "NonceGap";
        case Errc::TooLarge: return "TooLarge";
        case Errc::Overflow: return "Overflow";
        case Errc::Malformed: return "Malformed";
        case Errc::ConfigError: return "ConfigError";
    }
    return "UnknownError";
}

} // namespace leashsim
