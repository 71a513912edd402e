// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#include "leashsim/config.hpp"

#include <fstream>
#include <sstream>

#include "leashsim/errors.hpp"

namespace leashsim {

ConfigDoc ConfigDoc::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "leashsim-config 1")
        raise(Errc::ConfigError, "first line must be 'leashsim-config 1'");
    ConfigDoc doc;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto cut = line.find('#'); cut != std::string::npos) line.resize(cut);
        std::istringstream words(line);
        std::string key, value, extra;
        if (!(words >> key)) continue;
        if (!(words >> value) || (words >> extra))
            raise(Errc::ConfigError,
                  "line " + std::to_string(lineno) + ": expected 'key value'");
        if (!doc.values_.emplace(key, value).second)
            raise(Errc::ConfigError, "duplicate key " + key);
    }
    return doc;
}

ConfigDoc ConfigDoc::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::ConfigError, "cannot open config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string ConfigDoc::kind() const { return get_str("kind", ""); }

std::string ConfigDoc::get_str(const std::string& key, const std::string& fallback) const {
    consumed_.insert(key);
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

uint64_t ConfigDoc::get_u64(const std::string& key, uint64_t fallback) const {
    consumed_.insert(key);
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        size_t used = 0;
        uint64_t v = std::stoull(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        raise(Errc::ConfigError, "key " + key + " needs an unsigned integer");
    }
}

bool ConfigDoc::get_bool(const std::string& key, bool fallback) const {
    consumed_.insert(key);
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second == "true") return true;
    if (it->second == "false") return false;
    raise(Errc::ConfigError, "key " + key + " needs true or false");
}

void ConfigDoc::finish() const {
    for (const auto& [key, _] : values_)
        if (!consumed_.count(key)) raise(Errc::ConfigError, "unknown key " + key);
}

namespace {

ScenarioKind parse_kind(const std::string& name) {
    for (ScenarioKind k : {ScenarioKind::CanonicalLra, ScenarioKind::StaleTruncation,
                           ScenarioKind::SkippedVerification, ScenarioKind::HardForkHidden,
                           ScenarioKind::HardForkBogus})
        if (name == scenario_kind_name(k)) return k;
    raise(Errc::ConfigError, "unknown scenario kind " + name);
}

VictimMode parse_mode(const std::string& name) {
    for (VictimMode m : {VictimMode::Metadata, VictimMode::Wrapper, VictimMode::WrapperWindowed,
                         VictimMode::Gateway, VictimMode::Unleashed})
        if (name == victim_mode_name(m)) return m;
    raise(Errc::ConfigError, "unknown victim mode " + name);
}

} // namespace

ScenarioSpec scenario_spec_from_config(const ConfigDoc& doc) {
    ScenarioSpec spec;
    spec.kind = parse_kind(doc.get_str("kind", "canonical-lra"));
    spec.seed = doc.get_u64("seed", spec.seed);
    spec.honest_blocks = doc.get_u64("honest-blocks", spec.honest_blocks);
    spec.epoch_length = doc.get_u64("epoch-length", spec.epoch_length);
    spec.committee_size = doc.get_u64("committee-size", spec.committee_size);
    spec.threshold = static_cast<uint32_t>(doc.get_u64("threshold", spec.threshold));
    spec.sleep_height = doc.get_u64("sleep-height", spec.sleep_height);
    spec.side_length = doc.get_u64("side-length", spec.side_length);
    spec.balance_bonus = doc.get_u64("balance-bonus", spec.balance_bonus);
    spec.gov_fork_height = doc.get_u64("gov-fork-height", spec.gov_fork_height);
    spec.victim_mode = parse_mode(doc.get_str("victim-mode", victim_mode_name(spec.victim_mode)));
    spec.leash_length = doc.get_u64("leash-length", spec.leash_length);
    spec.verify_proofs = doc.get_bool("verify-proofs", spec.verify_proofs);
    spec.transfer_amount = doc.get_u64("transfer-amount", spec.transfer_amount);
    spec.rounds = doc.get_u64("rounds", spec.rounds);
    spec.blockhash_window =
        static_cast<uint32_t>(doc.get_u64("blockhash-window", spec.blockhash_window));
    spec.recent_window = static_cast<uint32_t>(doc.get_u64("recent-window", spec.recent_window));
    doc.finish();
    return spec;
}

ReplayDemoSpec replay_spec_from_config(const ConfigDoc& doc) {
    if (doc.kind() != "replay-demo") raise(Errc::ConfigError, "config kind must be replay-demo");
    ReplayDemoSpec spec;
    spec.seed = doc.get_u64("seed", spec.seed);
    spec.blocks = doc.get_u64("blocks", spec.blocks);
    spec.z = doc.get_u64("replay-z", spec.z);
    spec.double_fork = doc.get_bool("double-fork", spec.double_fork);
    spec.second_z = doc.get_u64("second-z", spec.second_z);
    doc.finish();
    return spec;
}

WinkleAmountsSpec winkle_spec_from_config(const ConfigDoc& doc) {
    if (doc.kind() != "winkle-counterexample")
        raise(Errc::ConfigError, "config kind must be winkle-counterexample");
    WinkleAmountsSpec spec;
    spec.seed = doc.get_u64("seed", spec.seed);
    spec.k_limit = doc.get_u64("k-limit", spec.k_limit);
    doc.finish();
    return spec;
}

} // namespace leashsim
