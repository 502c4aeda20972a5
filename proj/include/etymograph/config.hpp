#pragma once

#include <stdexcept>
#include <string>

#include "etymograph/linter.hpp"

namespace etymograph::config {

class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Tool configuration. JSON schema:
//   {"rules": {"severity": {"RULE-ID": "error|warning|info"},
//              "disabled": ["RULE-ID"],
//              "max_chain_length": 1024,
//              "check_registry": true},
//    "registry": "path", "abbrev_table": "path",
//    "notations": ["ipa", "xsampa", "private"]}
// Severity overrides must reference catalogued rule ids.
struct Config {
    lint::RuleConfig rules;
    std::string registry_path;
    std::string abbrev_path;
};

Config load_file(const std::string& path);
Config load_json(const std::string& text, const std::string& name);

// Later sources win field-by-field (defaults < config file < env < flags).
void merge(Config& base, const Config& over);

}  // namespace etymograph::config
