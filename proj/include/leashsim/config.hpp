// Copyright 2026 the leashsim contributors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <map>
#include <set>
#include <string>

#include "leashsim/scenario.hpp"

namespace leashsim {

/// Key-value config document: `leashsim-config 1` header, one `key value`
/// pair per line, `#` comments. Unknown keys are errors, so typos surface
/// instead of silently running defaults.
class ConfigDoc {
  public:
    static ConfigDoc parse(const std::string& text);
    static ConfigDoc load(const std::string& path);

    std::string kind() const;
    uint64_t get_u64(const std::string& key, uint64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::string get_str(const std::string& key, const std::string& fallback) const;

    /// Throws Errc::ConfigError when any key was never read.
    void finish() const;

  private:
    std::map<std::string, std::string> values_;
    mutable std::set<std::string> consumed_;
};

ScenarioSpec scenario_spec_from_config(const ConfigDoc& doc);
ReplayDemoSpec replay_spec_from_config(const ConfigDoc& doc);

struct WinkleAmountsSpec {
    uint64_t seed = 1;
    uint64_t k_limit = 7;
};
WinkleAmountsSpec winkle_spec_from_config(const ConfigDoc& doc);

} // namespace leashsim
