#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "etymograph/langtag.hpp"
#include "etymograph/model.hpp"

namespace etymograph::lint {

struct RuleInfo {
    std::string id;
    Severity default_severity;
    std::string summary;
};

// The published rule catalogue, including parse-stage rules that surface in
// lint output. Severity overrides must reference ids from this list.
const std::vector<RuleInfo>& rule_catalogue();
bool known_rule(const std::string& id);

struct RuleConfig {
    std::map<std::string, Severity> severity_overrides;
    std::set<std::string> disabled_rules;
    int max_chain_length = 1024;
    bool check_registry = true;
    const bcp47::RegistrySnapshot* registry = nullptr;  // needed for registry checks
    std::set<std::string> known_notations = {"ipa", "xsampa", "private"};
    // ids resolvable outside this document (cross-file linking)
    std::set<std::string> extra_ids;
};

struct ChainReport {
    // id (or path, for id-less citations) of each sequencing participant,
    // in document order.
    std::vector<std::string> members;
    // Present iff defects holds no Error-severity chain defect. Concatenated
    // per-component linear orders; segment_starts marks component beginnings.
    std::optional<std::vector<std::string>> order;
    std::vector<size_t> segment_starts;
    // Paths of members implicated in an Error-severity chain defect.
    std::set<std::string> defective_members;
    // Paths of chain heads (no resolvable in-block prev), document order.
    std::vector<std::string> heads;
    std::vector<Diagnostic> defects;
};

// Sequencing analysis of one block's direct etymon citations.
ChainReport check_chain(const EtymologyBlock& block, const Document& doc);

// All catalogue findings for the document, deterministic: sorted by
// (entry index, element path, rule id). Includes the parse-stage findings
// recorded on the Document.
std::vector<Diagnostic> lint_document(const Document& doc, const RuleConfig& cfg);

bool has_errors(const std::vector<Diagnostic>& findings);

// One JSON object per finding: {rule, severity, file, entry, path, line, col,
// message, related}, in that key order.
std::string to_json_line(const Diagnostic& d, const std::string& file);
std::string to_text_line(const Diagnostic& d, const std::string& file);

}  // namespace etymograph::lint
