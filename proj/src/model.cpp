#include "etymograph/model.hpp"

#include <algorithm>
#include <cctype>

namespace etymograph {

std::string_view severity_name(Severity s) {
    switch (s) {
        case Severity::Error: return "error";
        case Severity::Warning: return "warning";
        case Severity::Info: return "info";
    }
    return "error";
}

int compare_paths(std::string_view a, std::string_view b) {
    size_t i = 0;
    size_t j = 0;
    while (i < a.size() && j < b.size()) {
        const bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
        const bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
        if (da && db) {
            size_t ia = i;
            size_t jb = j;
            while (ia < a.size() && std::isdigit(static_cast<unsigned char>(a[ia]))) ia++;
            while (jb < b.size() && std::isdigit(static_cast<unsigned char>(b[jb]))) jb++;
            const auto na = a.substr(i, ia - i);
            const auto nb = b.substr(j, jb - j);
            // Compare as numbers: longer digit run wins, then lexicographic.
            if (na.size() != nb.size()) {
                return na.size() < nb.size() ? -1 : 1;
            }
            if (na != nb) {
                return na < nb ? -1 : 1;
            }
            i = ia;
            j = jb;
            continue;
        }
        if (a[i] != b[j]) {
            return static_cast<unsigned char>(a[i]) < static_cast<unsigned char>(b[j]) ? -1 : 1;
        }
        i++;
        j++;
    }
    if (i < a.size()) return 1;
    if (j < b.size()) return -1;
    return 0;
}

bool diagnostic_less(const Diagnostic& a, const Diagnostic& b) {
    if (a.entry_index != b.entry_index) {
        return a.entry_index < b.entry_index;
    }
    if (const int c = compare_paths(a.path, b.path); c != 0) {
        return c < 0;
    }
    if (a.rule != b.rule) {
        return a.rule < b.rule;
    }
    if (a.message != b.message) {
        return a.message < b.message;
    }
    return a.related < b.related;
}

std::string SegmentedForm::surface() const {
    std::string out;
    for (const auto& seg : segments) {
        out += seg.text;
    }
    return out;
}

std::string QuoteNode::plain_text() const {
    if (kind == Kind::Text) {
        return text;
    }
    std::string out;
    for (const auto& c : children) {
        out += c.plain_text();
    }
    return out;
}

std::string Quote::plain_text() const {
    std::string out;
    for (const auto& r : runs) {
        out += r.plain_text();
    }
    return out;
}

std::string_view etym_type_name(EtymType t) {
    switch (t) {
        case EtymType::Inheritance: return "inheritance";
        case EtymType::Borrowing: return "borrowing";
        case EtymType::Metaphor: return "metaphor";
        case EtymType::Metonymy: return "metonymy";
        case EtymType::Compounding: return "compounding";
        case EtymType::Grammaticalization: return "grammaticalization";
        case EtymType::Other: return "other";
    }
    return "other";
}

std::string EtymologyBlock::type_string() const {
    if (etym_type == EtymType::Other) {
        return other_type;
    }
    return std::string(etym_type_name(etym_type));
}

namespace {

struct PathSegment {
    std::string name;
    std::optional<size_t> index;
};

std::vector<PathSegment> split_path(const std::string& path) {
    std::vector<PathSegment> out;
    size_t pos = 0;
    while (pos < path.size()) {
        size_t end = path.find('/', pos);
        if (end == std::string::npos) {
            end = path.size();
        }
        std::string piece = path.substr(pos, end - pos);
        PathSegment seg;
        const size_t br = piece.find('[');
        if (br != std::string::npos && piece.back() == ']') {
            seg.name = piece.substr(0, br);
            seg.index = static_cast<size_t>(
                std::stoul(piece.substr(br + 1, piece.size() - br - 2)));
        } else {
            seg.name = piece;
        }
        out.push_back(std::move(seg));
        pos = end + 1;
    }
    return out;
}

// Walks one path step below an etymology block, collecting explicit language
// tags along the way. Returns false if the step does not resolve.
bool descend_etym(const EtymologyBlock& block, const std::vector<PathSegment>& segs,
                  size_t at, std::optional<LangTag>& lang);

bool descend_citation(const Citation& cit, const std::vector<PathSegment>& segs, size_t at,
                      std::optional<LangTag>& lang) {
    if (cit.lang) {
        lang = cit.lang;
    }
    if (at == segs.size()) {
        return true;
    }
    const auto& s = segs[at];
    if (s.name == "cit") {
        if (!s.index || *s.index >= cit.nested.size()) {
            return false;
        }
        return descend_citation(cit.nested[*s.index], segs, at + 1, lang);
    }
    if (s.name == "oRef" || s.name == "pRef") {
        const auto& form = s.name == "oRef" ? cit.oref : cit.pref;
        if (!form) {
            return false;
        }
        if (form->lang) {
            lang = form->lang;
        }
        return at + 1 == segs.size();
    }
    // Leaf children (date, gloss, gramGrp, ...) carry no language of their own.
    return at + 1 == segs.size();
}

bool descend_etym(const EtymologyBlock& block, const std::vector<PathSegment>& segs,
                  size_t at, std::optional<LangTag>& lang) {
    if (at == segs.size()) {
        return true;
    }
    const auto& s = segs[at];
    if (s.name == "cit") {
        if (!s.index || *s.index >= block.citations.size()) {
            return false;
        }
        return descend_citation(block.citations[*s.index], segs, at + 1, lang);
    }
    if (s.name == "etym") {
        if (!s.index || *s.index >= block.nested.size()) {
            return false;
        }
        return descend_etym(block.nested[*s.index], segs, at + 1, lang);
    }
    return at + 1 == segs.size();
}

bool descend_form(const FormBlock& form, const std::vector<PathSegment>& segs, size_t at,
                  std::optional<LangTag>& lang) {
    if (at == segs.size()) {
        return true;
    }
    const auto& s = segs[at];
    if (s.name == "form") {
        if (!s.index || *s.index >= form.nested.size()) {
            return false;
        }
        return descend_form(form.nested[*s.index], segs, at + 1, lang);
    }
    if (s.name == "orth" || s.name == "pron") {
        const auto& list = s.name == "orth" ? form.orths : form.prons;
        const size_t idx = s.index.value_or(0);
        if (idx >= list.size()) {
            return false;
        }
        if (list[idx].lang) {
            lang = list[idx].lang;
        }
        return at + 1 == segs.size();
    }
    return at + 1 == segs.size();
}

}  // namespace

std::optional<LangTag> effective_language(const std::string& node_path, const Document& doc) {
    const auto segs = split_path(node_path);
    if (segs.empty() || segs[0].name != "entry" || !segs[0].index ||
        *segs[0].index >= doc.entries.size()) {
        throw unknown_node_error(node_path);
    }
    const LexicalEntry& entry = doc.entries[*segs[0].index];
    std::optional<LangTag> lang = entry.lang;

    bool ok = false;
    if (segs.size() == 1) {
        ok = true;
    } else {
        const auto& s = segs[1];
        if (s.name == "etym" && s.index && *s.index < entry.etymologies.size()) {
            ok = descend_etym(entry.etymologies[*s.index], segs, 2, lang);
        } else if (s.name == "form" && s.index && *s.index < entry.forms.size()) {
            ok = descend_form(entry.forms[*s.index], segs, 2, lang);
        } else if (s.name == "sense" && s.index && *s.index < entry.senses.size()) {
            const SenseBlock& sense = entry.senses[*s.index];
            if (segs.size() == 2) {
                ok = true;
            } else if (segs[2].name == "etym" && segs[2].index &&
                       *segs[2].index < sense.etymologies.size()) {
                ok = descend_etym(sense.etymologies[*segs[2].index], segs, 3, lang);
            } else if (segs[2].name == "cit" && segs[2].index &&
                       *segs[2].index < sense.translations.size()) {
                ok = descend_citation(sense.translations[*segs[2].index], segs, 3, lang);
            } else {
                ok = segs.size() == 3;
            }
        } else {
            ok = false;
        }
    }
    if (!ok) {
        throw unknown_node_error(node_path);
    }
    return lang;
}

RefResolution resolve_ref(const CrossRef& ref, const Document& doc) {
    if (!ref.internal()) {
        return External{ref.raw};
    }
    const std::string id = ref.fragment();
    if (id.empty()) {
        return Unresolved{};
    }
    const auto it = doc.id_index.find(id);
    if (it == doc.id_index.end()) {
        return Unresolved{};
    }
    return Resolved{it->second};
}

}  // namespace etymograph
