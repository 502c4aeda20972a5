#include "etymograph/langtag.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace etymograph::bcp47 {

namespace {

bool is_alpha(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isalpha(c) != 0;
    });
}

bool is_digit(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isdigit(c) != 0;
    });
}

bool is_alnum(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isalnum(c) != 0;
    });
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string title_case(std::string_view s) {
    std::string out = lower(s);
    if (!out.empty()) {
        out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    }
    return out;
}

std::string upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

bool is_variant_subtag(std::string_view s) {
    if (s.size() >= 5 && s.size() <= 8 && is_alnum(s)) {
        return true;
    }
    return s.size() == 4 && std::isdigit(static_cast<unsigned char>(s[0])) != 0 &&
           is_alnum(s.substr(1));
}

// The grandfathered production of RFC 5646: a closed list, part of the
// grammar itself rather than registry data.
constexpr std::array<std::string_view, 26> kGrandfathered = {
    "en-gb-oed",  "i-ami",      "i-bnn",     "i-default", "i-enochian", "i-hak",
    "i-klingon",  "i-lux",      "i-mingo",   "i-navajo",  "i-pwn",      "i-tao",
    "i-tay",      "i-tsu",      "sgn-be-fr", "sgn-be-nl", "sgn-ch-de",  "art-lojban",
    "cel-gaulish", "no-bok",    "no-nyn",    "zh-guoyu",  "zh-hakka",   "zh-min",
    "zh-min-nan", "zh-xiang",
};

std::vector<std::string> split_dash(std::string_view s) {
    std::vector<std::string> out;
    size_t pos = 0;
    while (true) {
        const size_t dash = s.find('-', pos);
        if (dash == std::string_view::npos) {
            out.emplace_back(s.substr(pos));
            break;
        }
        out.emplace_back(s.substr(pos, dash - pos));
        pos = dash + 1;
    }
    return out;
}

}  // namespace

LangTag parse_tag(const std::string& raw) {
    LangTag tag;
    tag.raw = raw;
    tag.registry_status = RegistryStatus::NotChecked;

    if (raw.empty()) {
        return tag;
    }
    const std::string folded = lower(raw);
    if (std::find(kGrandfathered.begin(), kGrandfathered.end(), folded) !=
        kGrandfathered.end()) {
        tag.primary_subtag = folded;
        tag.grandfathered = true;
        tag.well_formed = true;
        return tag;
    }

    const auto parts = split_dash(raw);
    for (const auto& p : parts) {
        if (p.empty() || !is_alnum(p)) {
            return tag;  // empty subtag or stray character
        }
    }

    size_t i = 0;
    const std::string first = lower(parts[0]);
    if (first == "x") {
        // Private-use-only tag.
        i = 1;
    } else if (parts[0].size() >= 2 && parts[0].size() <= 8 && is_alpha(parts[0])) {
        tag.primary_subtag = first;
        i = 1;
        if (i < parts.size() && parts[i].size() == 4 && is_alpha(parts[i])) {
            tag.script = title_case(parts[i]);
            i++;
        }
        if (i < parts.size() &&
            ((parts[i].size() == 2 && is_alpha(parts[i])) ||
             (parts[i].size() == 3 && is_digit(parts[i])))) {
            tag.region = upper(parts[i]);
            i++;
        }
        while (i < parts.size() && is_variant_subtag(parts[i])) {
            tag.variants.push_back(lower(parts[i]));
            i++;
        }
        if (i < parts.size() && lower(parts[i]) == "x") {
            i++;
        } else if (i < parts.size()) {
            return tag;  // unrecognized subtag (extensions are not modeled)
        } else {
            tag.well_formed = true;
            return tag;
        }
    } else {
        return tag;
    }

    // Private-use remainder: "x" already consumed, need 1+ subtags of 1-8.
    if (i >= parts.size()) {
        return tag;
    }
    std::string priv = "x";
    for (; i < parts.size(); i++) {
        if (parts[i].empty() || parts[i].size() > 8) {
            return tag;
        }
        priv += "-" + lower(parts[i]);
    }
    tag.private_use = priv;
    tag.well_formed = true;
    return tag;
}

RegistrySnapshot RegistrySnapshot::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw registry_error("cannot open registry snapshot: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_text(buf.str(), path);
}

RegistrySnapshot RegistrySnapshot::load_text(const std::string& text,
                                             const std::string& name) {
    RegistrySnapshot snap;

    // record-jar: records separated by "%%", "Field: value" lines,
    // continuation lines start with whitespace.
    std::vector<std::pair<std::string, std::string>> record;
    auto flush = [&snap](std::vector<std::pair<std::string, std::string>>& rec) {
        if (rec.empty()) {
            return;
        }
        std::string type;
        std::string subtag;
        std::string full_tag;
        std::string description;
        bool deprecated = false;
        for (const auto& [k, v] : rec) {
            if (k == "Type") type = v;
            else if (k == "Subtag") subtag = v;
            else if (k == "Tag") full_tag = v;
            else if (k == "Description" && description.empty()) description = v;
            else if (k == "Deprecated") deprecated = true;
            else if (k == "File-Date") snap.snapshot_date_ = v;
        }
        rec.clear();
        if (type == "grandfathered" || type == "redundant") {
            if (!full_tag.empty()) {
                snap.grandfathered_.insert(lower(full_tag));
            }
            return;
        }
        SubtagType st;
        if (type == "language") st = SubtagType::Language;
        else if (type == "script") st = SubtagType::Script;
        else if (type == "region") st = SubtagType::Region;
        else if (type == "variant") st = SubtagType::Variant;
        else return;  // extlang and friends are outside the modeled grammar
        if (subtag.empty()) {
            return;
        }
        // Ranges like "qaa..qtz" mark private-use space; not registered names.
        if (subtag.find("..") != std::string::npos) {
            return;
        }
        snap.entries_[{static_cast<int>(st), lower(subtag)}] =
            RegistryEntry{st, description, deprecated};
    };

    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line == "%%") {
            flush(record);
            continue;
        }
        if (!line.empty() && (line[0] == ' ' || line[0] == '\t')) {
            if (!record.empty()) {
                record.back().second += " " + line.substr(line.find_first_not_of(" \t"));
            }
            continue;
        }
        const size_t colon = line.find(": ");
        if (colon == std::string::npos) {
            continue;
        }
        record.emplace_back(line.substr(0, colon), line.substr(colon + 2));
    }
    flush(record);

    if (snap.snapshot_date_.empty()) {
        throw registry_error(name + ": missing File-Date header");
    }
    return snap;
}

const RegistryEntry* RegistrySnapshot::find(SubtagType type, const std::string& subtag) const {
    const auto it = entries_.find({static_cast<int>(type), lower(subtag)});
    return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> RegistrySnapshot::subtags(SubtagType type) const {
    std::vector<std::string> out;
    for (const auto& [key, entry] : entries_) {
        if (key.first == static_cast<int>(type)) {
            out.push_back(key.second);
        }
    }
    return out;
}

bool RegistrySnapshot::has_grandfathered(const std::string& tag) const {
    return grandfathered_.contains(lower(tag));
}

RegistryStatus RegistrySnapshot::lookup(const LangTag& tag) const {
    if (!tag.well_formed) {
        throw not_well_formed_error(tag.raw);
    }
    if (tag.grandfathered) {
        return has_grandfathered(tag.primary_subtag) ? RegistryStatus::Registered
                                                     : RegistryStatus::Unregistered;
    }
    if (tag.primary_subtag.empty()) {
        // Private-use-only tags have nothing the registry can check.
        return RegistryStatus::Registered;
    }
    if (find(SubtagType::Language, tag.primary_subtag) == nullptr) {
        return RegistryStatus::Unregistered;
    }
    if (tag.script && find(SubtagType::Script, *tag.script) == nullptr) {
        return RegistryStatus::Unregistered;
    }
    if (tag.region && find(SubtagType::Region, *tag.region) == nullptr) {
        return RegistryStatus::Unregistered;
    }
    for (const auto& v : tag.variants) {
        if (find(SubtagType::Variant, v) == nullptr) {
            return RegistryStatus::Unregistered;
        }
    }
    return RegistryStatus::Registered;
}

std::string fold_label(std::string_view label) {
    size_t begin = 0;
    size_t end = label.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(label[begin]))) begin++;
    while (end > begin && std::isspace(static_cast<unsigned char>(label[end - 1]))) end--;
    return lower(label.substr(begin, end - begin));
}

AbbrevTable AbbrevTable::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw registry_error("cannot open abbreviation table: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_json(buf.str(), path);
}

AbbrevTable AbbrevTable::load_json(const std::string& json_text, const std::string& name) {
    AbbrevTable table;
    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw registry_error(name + ": " + e.what());
    }
    if (!parsed.is_object()) {
        throw registry_error(name + ": abbreviation table must be a JSON object");
    }
    for (const auto& [k, v] : parsed.items()) {
        if (!v.is_string()) {
            throw registry_error(name + ": value for \"" + k + "\" must be a string");
        }
        table.insert(k, v.get<std::string>());
    }
    return table;
}

void AbbrevTable::insert(const std::string& label, const std::string& tag) {
    if (!parse_tag(tag).well_formed) {
        throw registry_error("abbreviation \"" + label + "\" maps to a tag that is not"
                             " well-formed: \"" + tag + "\"");
    }
    rows_[fold_label(label)] = tag;
}

std::optional<LangTag> AbbrevTable::expand(const std::string& label) const {
    const auto it = rows_.find(fold_label(label));
    if (it == rows_.end()) {
        return std::nullopt;
    }
    return parse_tag(it->second);
}

std::set<std::string> AbbrevTable::value_set() const {
    std::set<std::string> out;
    for (const auto& [k, v] : rows_) {
        out.insert(v);
    }
    return out;
}

}  // namespace etymograph::bcp47
