// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include "leashsim/contracts.hpp"

#include <sstream>

#include "leashsim/bytes.hpp"
#include "leashsim/u256.hpp"

namespace leashsim {

Script parity_payout_script(const AccountId& owner) {
    std::ostringstream s;
    s << "; owner-gated payout, amount depends on balance parity\n"
      << "caller\n"
      << "push 0x" << owner.hex() << "\n"
      << "eq\niszero\npush :bad\njumpi\n"
      << "push 2\nselfbalance\nmod\n"
      << "push :odd\njumpi\n"
      << "push " << kParityPayoutEven << "\n"
      << "push 1\npush :pay\njumpi\n"
      << "label odd\n"
      << "push " << kParityPayoutOdd << "\n"
      << "label pay\n"
      << "push 0\ncalldataword\n" // destination
      << "transfer\nstop\n"
      << "label bad\nrevert\n";
    return assemble(s.str());
}

Script counter_script() {
    return assemble(R"(
push 0
sload
push 1
add
push 0
sstore
stop
)");
}

Script echo_caller_script() {
    return assemble(R"(
caller
outword
returnout
)");
}

Script store_script() {
    return assemble(R"(
push 0
calldataword
push 32
calldataword
sstore
stop
)");
}

Script vault_pay_script() {
    return assemble(R"(
; pay(dest = word0, amount = word1) out of the caller's deposit
caller
sload
push 32
calldataword
gt
push :bad
jumpi
; storage[caller] = deposit - amount
push 32
calldataword
caller
sload
sub
caller
sstore
; move the tokens
push 32
calldataword
push 0
calldataword
transfer
stop
label bad
revert
)");
}

} // namespace leashsim
