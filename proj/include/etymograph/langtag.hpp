#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

#include "etymograph/model.hpp"

namespace etymograph::bcp47 {

// Structural (well-formedness) parse only; never consults a registry, so
// registry_status is always NotChecked on the result.
//
// Grammar: primary 2-8 alpha, optional script 4 alpha, optional region
// (2 alpha | 3 digit), variants (5-8 alphanum | digit + 3 alphanum), private
// use introduced by "x". A tag may also be private-use only ("x-...") or one
// of the fixed grandfathered tags from RFC 5646, which predate the grammar.
LangTag parse_tag(const std::string& raw);

enum class SubtagType { Language, Script, Region, Variant };

struct RegistryEntry {
    SubtagType type{};
    std::string description;  // first Description field
    bool deprecated = false;
};

class not_well_formed_error : public std::runtime_error {
public:
    explicit not_well_formed_error(const std::string& tag)
        : std::runtime_error("tag is not well-formed: " + tag) {}
};

class registry_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Immutable snapshot of the IANA language-subtag-registry, loaded from the
// native record-jar text format.
class RegistrySnapshot {
public:
    static RegistrySnapshot load_file(const std::string& path);
    static RegistrySnapshot load_text(const std::string& text, const std::string& name);

    const std::string& snapshot_date() const { return snapshot_date_; }

    const RegistryEntry* find(SubtagType type, const std::string& subtag) const;
    bool has_grandfathered(const std::string& tag) const;
    size_t size() const { return entries_.size() + grandfathered_.size(); }

    std::vector<std::string> subtags(SubtagType type) const;

    // Registered iff the primary subtag and each script/region/variant subtag
    // appears with matching type. Precondition: tag.well_formed.
    RegistryStatus lookup(const LangTag& tag) const;

private:
    std::string snapshot_date_;
    std::map<std::pair<int, std::string>, RegistryEntry> entries_;
    std::set<std::string> grandfathered_;  // case-folded full tags
};

// Legacy label -> language tag table ("mhd." -> "gmh"). Keys are compared
// after trimming and ASCII case-folding; values are validated well-formed at
// load time.
class AbbrevTable {
public:
    static AbbrevTable load_file(const std::string& path);
    static AbbrevTable load_json(const std::string& json_text, const std::string& name);

    void insert(const std::string& label, const std::string& tag);
    std::optional<LangTag> expand(const std::string& label) const;
    size_t size() const { return rows_.size(); }

    // Every tag value in the table (for the lift invariant checks).
    std::set<std::string> value_set() const;

private:
    std::map<std::string, std::string> rows_;
};

std::string fold_label(std::string_view label);

}  // namespace etymograph::bcp47
