// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include "leashsim/script.hpp"

#include <map>
#include <sstream>

#include "leashsim/errors.hpp"

namespace leashsim {

namespace {

const std::map<std::string, Op, std::less<>>& mnemonic_table() {
    static const std::map<std::string, Op, std::less<>> table = {
        {"push", Op::Push},
        {"pop", Op::Pop},
        {"dup", Op::Dup},
        {"swap", Op::Swap},
        {"add", Op::Add},
        {"sub", Op::Sub},
        {"mul", Op::Mul},
        {"div", Op::Div},
        {"mod", Op::Mod},
        {"lt", Op::Lt},
        {"gt", Op::Gt},
        {"eq", Op::Eq},
        {"iszero", Op::IsZero},
        {"jumpi", Op::Jumpi},
        {"caller", Op::Caller},
        {"selfbalance", Op::SelfBalance},
        {"balance", Op::Balance},
        {"chainid", Op::ChainId},
        {"blocknumber", Op::BlockNumber},
        {"blockhash", Op::BlockHash},
        {"blockhash_fd", Op::BlockHashFd},
        {"calldatasize", Op::CalldataSize},
        {"calldataword", Op::CalldataWord},
        {"sload", Op::SLoad},
        {"sstore", Op::SStore},
        {"transfer", Op::Transfer},
        {"hascode", Op::HasCode},
        {"call", Op::Call},
        {"returndatasize", Op::ReturnDataSize},
        {"outword", Op::OutWord},
        {"outretdata", Op::OutRetData},
        {"returnout", Op::ReturnOut},
        {"revert", Op::Revert},
        {"stop", Op::Stop},
    };
    return table;
}

bool valid_opcode(uint8_t raw) {
    for (const auto& [name, op] : mnemonic_table())
        if (static_cast<uint8_t>(op) == raw) return true;
    return false;
}

U256 parse_operand(std::string_view tok) {
    try {
        if (tok.size() > 2 && tok[0] == '0' && (tok[1] == 'x' || tok[1] == 'X')) {
            U256 v = 0;
            for (char c : tok.substr(2)) {
                int d;
                if (c >= '0' && c <= '9') d = c - '0';
                else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
                else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
                else raise(Errc::Malformed, "bad hex operand");
                v = (v << 4) | d;
            }
            return v;
        }
        return U256(std::string(tok));
    } catch (const std::exception&) {
        raise(Errc::Malformed, "bad push operand: " + std::string(tok));
    }
}

} // namespace

bool op_has_immediate(Op op) { return op == Op::Push; }

const char* op_mnemonic(Op op) {
    for (const auto& [name, candidate] : mnemonic_table())
        if (candidate == op) return name.c_str();
    return "?";
}

void Script::encode(Encoder& enc) const {
    enc.u32(static_cast<uint32_t>(code.size()));
    for (const Instr& in : code) {
        enc.u8(static_cast<uint8_t>(in.op));
        if (op_has_immediate(in.op)) enc.word(in.imm);
    }
}

Script Script::decode(Decoder& dec) {
    Script s;
    uint32_t n = dec.u32();
    s.code.reserve(n);
    for (uint32_t i = 0; i < n; ++i) {
        uint8_t raw = dec.u8();
        if (!valid_opcode(raw)) raise(Errc::Malformed, "unknown opcode byte");
        Instr in{static_cast<Op>(raw)};
        if (op_has_immediate(in.op)) in.imm = dec.word();
        s.code.push_back(in);
    }
    return s;
}

Script assemble(std::string_view text) {
    struct Pending {
        size_t instr;
        std::string label;
    };
    Script script;
    std::map<std::string, size_t> labels;
    std::vector<Pending> fixups;

    std::istringstream lines{std::string(text)};
    std::string line;
    while (std::getline(lines, line)) {
        if (auto cut = line.find_first_of(";#"); cut != std::string::npos) line.resize(cut);
        std::istringstream words(line);
        std::string mnemonic;
        if (!(words >> mnemonic)) continue;

        if (mnemonic == "label") {
            std::string name;
            if (!(words >> name)) raise(Errc::Malformed, "label without a name");
            if (!labels.emplace(name, script.code.size()).second)
                raise(Errc::Malformed, "duplicate label " + name);
            continue;
        }

        auto it = mnemonic_table().find(mnemonic);
        if (it == mnemonic_table().end())
            raise(Errc::Malformed, "unknown mnemonic: " + mnemonic);

        Instr in{it->second};
        if (op_has_immediate(in.op)) {
            std::string tok;
            if (!(words >> tok)) raise(Errc::Malformed, "push needs an operand");
            if (tok[0] == ':') {
                fixups.push_back({script.code.size(), tok.substr(1)});
            } else {
                in.imm = parse_operand(tok);
            }
        }
        std::string extra;
        if (words >> extra) raise(Errc::Malformed, "trailing token: " + extra);
        script.code.push_back(in);
    }

    for (const Pending& fix : fixups) {
        auto it = labels.find(fix.label);
        if (it == labels.end()) raise(Errc::Malformed, "undefined label " + fix.label);
        script.code[fix.instr].imm = U256(it->second);
    }
    return script;
}

std::string disassemble(const Script& script) {
    std::ostringstream out;
    for (const Instr& in : script.code) {
        out << op_mnemonic(in.op);
        if (op_has_immediate(in.op)) out << ' ' << in.imm.str();
        out << '\n';
    }
    return out.str();
}

} // namespace leashsim
