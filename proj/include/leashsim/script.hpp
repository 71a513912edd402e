// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "leashsim/codec.hpp"
#include "leashsim/u256.hpp"

namespace leashsim {

/// Stack-machine instruction set. Words are 256-bit; arithmetic is checked
/// (no wraparound — overflow aborts the transaction). Jump targets are
/// instruction indices.
enum class Op : uint8_t {
    Push = 0x01, // imm word
    Pop = 0x02,
    Dup = 0x03,  // duplicate top
    Swap = 0x04, // swap top two

    Add = 0x10,
    Sub = 0x11,
    Mul = 0x12,
    Div = 0x13,
    Mod = 0x14,

    Lt = 0x20, // pops a, b; pushes a < b
    Gt = 0x21,
    Eq = 0x22,
    IsZero = 0x23,

    Jumpi = 0x30, // pops dest, cond; jumps to instruction index dest if cond != 0

    Caller = 0x40,
    SelfBalance = 0x41,
    Balance = 0x42, // pops account word
    ChainId = 0x43,
    BlockNumber = 0x44,
    BlockHash = 0x45,   // pops block number; zero word outside the W window
    BlockHashFd = 0x46, // full-domain variant: any ancestor height
    CalldataSize = 0x47,
    CalldataWord = 0x48, // pops byte offset; pushes 32-byte word, zero-padded

    SLoad = 0x50,  // pops address
    SStore = 0x51, // pops address, value

    Transfer = 0x60,       // pops to, amount; moves from the executing account
    HasCode = 0x61,        // pops account word; pushes 0/1
    Call = 0x62,           // pops target, calldata byte offset, byte length; pushes status
    ReturnDataSize = 0x63, // size of the last call's return data

    OutWord = 0x70,    // pops word; appends 32 bytes to the output buffer
    OutRetData = 0x71, // appends the last call's return data to the output buffer

    ReturnOut = 0x80, // halt frame, returning the output buffer
    Revert = 0x81,    // halt frame and roll back, output buffer as revert data
    Stop = 0x82,      // halt frame with empty return data
};

bool op_has_immediate(Op op);
const char* op_mnemonic(Op op);

struct Instr {
    Op op;
    U256 imm{}; // Push only

    bool operator==(const Instr& other) const { return op == other.op && imm == other.imm; }
};

struct Script {
    std::vector<Instr> code;

    bool operator==(const Script& other) const = default;

    void encode(Encoder& enc) const;
    static Script decode(Decoder& dec);
};

using ScriptRef = std::shared_ptr<const Script>;

/// Fixture format: one instruction per line, `;`/`#` comments, decimal or
/// 0x-hex push operands, and `label name` / `push :name` for jump targets.
Script assemble(std::string_view text);
std::string disassemble(const Script& script);

} // namespace leashsim
