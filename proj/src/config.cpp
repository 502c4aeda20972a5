#include "etymograph/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace etymograph::config {

namespace {

Severity parse_severity(const std::string& s, const std::string& name) {
    if (s == "error") return Severity::Error;
    if (s == "warning") return Severity::Warning;
    if (s == "info") return Severity::Info;
    throw config_error(name + ": unknown severity \"" + s + "\"");
}

}  // namespace

Config load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw config_error("cannot open config: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_json(buf.str(), path);
}

Config load_json(const std::string& text, const std::string& name) {
    Config cfg;
    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw config_error(name + ": " + e.what());
    }
    if (!parsed.is_object()) {
        throw config_error(name + ": config must be a JSON object");
    }

    if (parsed.contains("rules")) {
        const auto& rules = parsed["rules"];
        if (rules.contains("severity")) {
            for (const auto& [rule, sev] : rules["severity"].items()) {
                if (!lint::known_rule(rule)) {
                    throw config_error(name + ": severity override for unknown rule \"" +
                                       rule + "\"");
                }
                cfg.rules.severity_overrides[rule] =
                    parse_severity(sev.get<std::string>(), name);
            }
        }
        if (rules.contains("disabled")) {
            for (const auto& rule : rules["disabled"]) {
                const std::string id = rule.get<std::string>();
                if (!lint::known_rule(id)) {
                    throw config_error(name + ": disabling unknown rule \"" + id + "\"");
                }
                cfg.rules.disabled_rules.insert(id);
            }
        }
        if (rules.contains("max_chain_length")) {
            cfg.rules.max_chain_length = rules["max_chain_length"].get<int>();
        }
        if (rules.contains("check_registry")) {
            cfg.rules.check_registry = rules["check_registry"].get<bool>();
        }
    }
    if (parsed.contains("registry")) {
        cfg.registry_path = parsed["registry"].get<std::string>();
    }
    if (parsed.contains("abbrev_table")) {
        cfg.abbrev_path = parsed["abbrev_table"].get<std::string>();
    }
    if (parsed.contains("notations")) {
        for (const auto& n : parsed["notations"]) {
            cfg.rules.known_notations.insert(n.get<std::string>());
        }
    }
    return cfg;
}

void merge(Config& base, const Config& over) {
    for (const auto& [k, v] : over.rules.severity_overrides) {
        base.rules.severity_overrides[k] = v;
    }
    for (const auto& r : over.rules.disabled_rules) {
        base.rules.disabled_rules.insert(r);
    }
    if (over.rules.max_chain_length != lint::RuleConfig{}.max_chain_length) {
        base.rules.max_chain_length = over.rules.max_chain_length;
    }
    if (over.rules.check_registry != lint::RuleConfig{}.check_registry) {
        base.rules.check_registry = over.rules.check_registry;
    }
    for (const auto& n : over.rules.known_notations) {
        base.rules.known_notations.insert(n);
    }
    if (!over.registry_path.empty()) {
        base.registry_path = over.registry_path;
    }
    if (!over.abbrev_path.empty()) {
        base.abbrev_path = over.abbrev_path;
    }
    return;
}

}  // namespace etymograph::config
