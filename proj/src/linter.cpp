#include "etymograph/linter.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "json.hpp"

namespace etymograph::lint {

const std::vector<RuleInfo>& rule_catalogue() {
    static const std::vector<RuleInfo> catalogue = {
        {"E-XML-SYNTAX", Severity::Error, "input is not well-formed XML (fatal)"},
        {"E-ENCODING", Severity::Error, "input encoding cannot be decoded (fatal)"},
        {"I-PARSE-SKIP", Severity::Info, "non-entry content skipped by the parser"},
        {"W-PARSE-OPAQUE", Severity::Warning, "content outside the model kept opaque"},
        {"W-CIT-UNKNOWN-TYPE", Severity::Warning, "unknown <cit> @type treated as etymon"},
        {"E-LANG-MISSING", Severity::Error, "entry has no @xml:lang"},
        {"E-LANG-MALFORMED", Severity::Error, "xml:lang is not well-formed BCP 47"},
        {"W-LANG-UNREGISTERED", Severity::Warning, "language tag not in the registry snapshot"},
        {"E-ETYM-PLACE", Severity::Error, "top-level etym type at the wrong level"},
        {"E-ID-DUP", Severity::Error, "duplicate xml:id in document"},
        {"E-CHAIN-DANGLING", Severity::Error, "prev/next does not resolve"},
        {"E-CHAIN-SELF", Severity::Error, "prev/next references its own citation"},
        {"E-CHAIN-ASYM", Severity::Error, "prev/next not mutually consistent"},
        {"E-CHAIN-CYCLE", Severity::Error, "prev/next sequence forms a cycle"},
        {"W-CHAIN-BRANCH", Severity::Warning, "etym block holds more than one chain"},
        {"E-DATE-FORMAT", Severity::Error, "date attribute is not a four-digit year"},
        {"E-DATE-INVERTED", Severity::Error, "notBefore is later than notAfter"},
        {"E-REF-UNRESOLVED", Severity::Error, "corresp/target does not resolve"},
        {"E-REF-KIND", Severity::Info, "etym @corresp target is not a form"},
        {"E-COMP-SEG", Severity::Error, "component corresp is not a seg of its etymon"},
        {"W-COMPOUND-DECOMP", Severity::Warning, "compound entry without decomposition"},
        {"W-ETYM-UNTYPED", Severity::Warning, "etym carries no @type"},
        {"I-ETYM-OPENTYPE", Severity::Info, "etym @type outside the named taxonomy"},
        {"E-ETYMON-EMPTY", Severity::Error, "etymon citation without oRef or pRef"},
        {"W-PRON-NOTATION", Severity::Warning, "pron/pRef notation missing or unknown"},
        {"W-CIT-REDUNDANT", Severity::Warning, "etymon wraps a single nested etymon"},
        {"W-FORM-MISSING", Severity::Warning, "entry has no form"},
        {"W-LIFT-NOLANG", Severity::Warning, "lifted etymon label has no tag mapping"},
        {"I-NORM-UNWRAP", Severity::Info, "redundant etymon wrapper collapsed"},
        {"I-NORM-DUPCIT", Severity::Info, "identical consecutive etymon citations"},
        {"I-NORM-DUPID", Severity::Info, "duplicate xml:id kept as-is"},
        {"I-NORM-REF-OREF", Severity::Info, "legacy ref rewritten into oRef"},
    };
    return catalogue;
}

bool known_rule(const std::string& id) {
    const auto& cat = rule_catalogue();
    return std::any_of(cat.begin(), cat.end(),
                       [&](const RuleInfo& r) { return r.id == id; });
}

namespace {

size_t entry_index_of(const std::string& path) {
    // paths start "entry[N]..."
    if (path.rfind("entry[", 0) != 0) {
        return static_cast<size_t>(-1);
    }
    return std::stoul(path.substr(6));
}

struct Sink {
    std::vector<Diagnostic> out;
    const Document* doc = nullptr;

    void add(std::string rule, Severity sev, const SourceLoc& loc, std::string message,
             std::vector<std::string> related = {}) {
        add(std::move(rule), sev, loc.path, loc.line, loc.column, std::move(message),
            std::move(related));
    }

    void add(std::string rule, Severity sev, const std::string& path, int line, int col,
             std::string message, std::vector<std::string> related = {}) {
        Diagnostic d;
        d.rule = std::move(rule);
        d.severity = sev;
        const size_t idx = entry_index_of(path);
        if (idx != static_cast<size_t>(-1) && idx < doc->entries.size()) {
            d.entry_index = static_cast<int>(idx);
            d.entry_id = doc->entries[idx].id.value_or("");
        }
        d.path = path;
        d.line = line;
        d.column = col;
        d.message = std::move(message);
        d.related = std::move(related);
        out.push_back(std::move(d));
    }
};

bool uri_has_scheme(const std::string& s) {
    if (s.empty() || std::isalpha(static_cast<unsigned char>(s[0])) == 0) {
        return false;
    }
    for (size_t i = 1; i < s.size(); i++) {
        const char c = s[i];
        if (c == ':') {
            return true;
        }
        if (std::isalnum(static_cast<unsigned char>(c)) == 0 && c != '+' && c != '.' &&
            c != '-') {
            return false;
        }
    }
    return false;
}

// --- chain analysis ------------------------------------------------------

struct ChainMember {
    const Citation* cit;
    std::string key;       // id, or path for id-less citations
    std::string id;        // empty when absent
    size_t order;          // document order within the block
};

}  // namespace

ChainReport check_chain(const EtymologyBlock& block, const Document& doc) {
    ChainReport report;
    Sink sink;
    sink.doc = &doc;

    std::vector<ChainMember> members;
    for (const auto& cit : block.citations) {
        if (cit.kind != Citation::Kind::Etymon) {
            continue;
        }
        if (!cit.id && !cit.prev && !cit.next) {
            continue;
        }
        ChainMember m;
        m.cit = &cit;
        m.id = cit.id.value_or("");
        m.key = cit.id.value_or(cit.loc.path);
        m.order = members.size();
        members.push_back(std::move(m));
    }
    for (const auto& m : members) {
        report.members.push_back(m.key);
    }

    // First binding wins, matching the document id index.
    std::map<std::string, size_t> by_id;
    for (size_t i = 0; i < members.size(); i++) {
        if (!members[i].id.empty()) {
            by_id.emplace(members[i].id, i);
        }
    }

    bool any_sequencing = std::any_of(members.begin(), members.end(), [](const ChainMember& m) {
        return m.cit->prev.has_value() || m.cit->next.has_value();
    });
    if (!any_sequencing) {
        // Nothing sequenced: every member is its own trivial component.
        report.order = std::vector<std::string>{};
        for (size_t i = 0; i < members.size(); i++) {
            report.segment_starts.push_back(report.order->size());
            report.order->push_back(members[i].key);
            report.heads.push_back(members[i].cit->loc.path);
        }
        report.defects = std::move(sink.out);
        return report;
    }

    auto flag = [&](size_t i) {
        report.defective_members.insert(members[i].cit->loc.path);
    };

    // next-edges and undirected adjacency from resolvable in-block links
    std::vector<std::optional<size_t>> next_edge(members.size());
    std::vector<std::vector<size_t>> adj(members.size());
    std::vector<bool> has_prev_link(members.size(), false);

    for (size_t i = 0; i < members.size(); i++) {
        const ChainMember& m = members[i];
        for (const bool is_next : {false, true}) {
            const auto& ref = is_next ? m.cit->next : m.cit->prev;
            if (!ref) {
                continue;
            }
            const char* attr = is_next ? "next" : "prev";
            const std::string frag = ref->fragment();
            const SourceLoc& loc = m.cit->loc;
            if (!ref->internal() || frag.empty()) {
                sink.add("E-CHAIN-DANGLING", Severity::Error, loc,
                         std::string("@") + attr + "=\"" + ref->raw +
                             "\" is not an internal fragment",
                         {ref->raw});
                flag(i);
                continue;
            }
            if (!m.id.empty() && frag == m.id) {
                sink.add("E-CHAIN-SELF", Severity::Error, loc,
                         std::string("@") + attr + "=\"" + ref->raw +
                             "\" points at its own citation",
                         {frag});
                flag(i);
                continue;
            }
            if (!doc.id_index.contains(frag)) {
                sink.add("E-CHAIN-DANGLING", Severity::Error, loc,
                         std::string("@") + attr + "=\"" + ref->raw +
                             "\" does not resolve in the document",
                         {frag});
                flag(i);
                continue;
            }
            const auto local = by_id.find(frag);
            if (local == by_id.end()) {
                sink.add("E-CHAIN-ASYM", Severity::Error, loc,
                         std::string("@") + attr + "=\"" + ref->raw +
                             "\" resolves outside this etymology block",
                         {frag});
                flag(i);
                continue;
            }
            const size_t j = local->second;
            const ChainMember& other = members[j];
            const auto& counter = is_next ? other.cit->prev : other.cit->next;
            if (!counter || counter->fragment() != m.id || m.id.empty()) {
                sink.add("E-CHAIN-ASYM", Severity::Error, loc,
                         std::string("@") + attr + "=\"" + ref->raw + "\" is not"
                             " reciprocated by \"" + other.key + "\"",
                         {other.key});
                flag(i);
            }
            if (is_next) {
                next_edge[i] = j;
            } else {
                has_prev_link[i] = true;
            }
            adj[i].push_back(j);
            adj[j].push_back(i);
        }
    }

    // cycle detection along next-edges
    std::vector<int> color(members.size(), 0);
    for (size_t start = 0; start < members.size(); start++) {
        if (color[start] != 0) {
            continue;
        }
        std::vector<size_t> trail;
        size_t cur = start;
        while (true) {
            if (color[cur] == 1) {
                // found a cycle within the current walk
                std::vector<std::string> cycle;
                bool in_cycle = false;
                for (size_t t : trail) {
                    if (t == cur) {
                        in_cycle = true;
                    }
                    if (in_cycle) {
                        cycle.push_back(members[t].key);
                        report.defective_members.insert(members[t].key);
                    }
                }
                sink.add("E-CHAIN-CYCLE", Severity::Error, members[cur].cit->loc,
                         "prev/next sequence forms a cycle", cycle);
                break;
            }
            if (color[cur] == 2) {
                break;
            }
            color[cur] = 1;
            trail.push_back(cur);
            if (!next_edge[cur] ||
                trail.size() > static_cast<size_t>(members.size())) {
                break;
            }
            cur = *next_edge[cur];
        }
        for (size_t t : trail) {
            color[t] = 2;
        }
    }

    // connected components over the undirected linkage
    std::vector<size_t> comp(members.size(), static_cast<size_t>(-1));
    std::vector<std::vector<size_t>> components;
    for (size_t i = 0; i < members.size(); i++) {
        if (comp[i] != static_cast<size_t>(-1)) {
            continue;
        }
        std::vector<size_t> stack{i};
        std::vector<size_t> found;
        comp[i] = components.size();
        while (!stack.empty()) {
            const size_t cur = stack.back();
            stack.pop_back();
            found.push_back(cur);
            for (size_t n : adj[cur]) {
                if (comp[n] == static_cast<size_t>(-1)) {
                    comp[n] = components.size();
                    stack.push_back(n);
                }
            }
        }
        std::sort(found.begin(), found.end());
        components.push_back(std::move(found));
    }
    if (components.size() > 1) {
        for (size_t c = 0; c < components.size(); c++) {
            std::vector<std::string> keys;
            for (size_t i : components[c]) {
                keys.push_back(members[i].key);
            }
            sink.add("W-CHAIN-BRANCH", Severity::Warning,
                     members[components[c].front()].cit->loc,
                     "chain component " + std::to_string(c + 1) + " of " +
                         std::to_string(components.size()) + " in one etym block",
                     keys);
        }
    }

    // heads: no resolvable in-block prev
    for (const auto& component : components) {
        for (size_t i : component) {
            if (!has_prev_link[i]) {
                report.heads.push_back(members[i].cit->loc.path);
                break;
            }
        }
    }

    const bool has_error = std::any_of(sink.out.begin(), sink.out.end(), [](const Diagnostic& d) {
        return d.severity == Severity::Error;
    });
    if (!has_error) {
        report.order = std::vector<std::string>{};
        for (const auto& component : components) {
            size_t head = component.front();
            for (size_t i : component) {
                if (!has_prev_link[i]) {
                    head = i;
                    break;
                }
            }
            report.segment_starts.push_back(report.order->size());
            std::optional<size_t> cur = head;
            size_t guard = 0;
            while (cur && guard++ <= members.size()) {
                report.order->push_back(members[*cur].key);
                cur = next_edge[*cur];
            }
        }
    }

    report.defects = std::move(sink.out);
    return report;
}

namespace {

// --- whole-document rules -------------------------------------------------

struct Linter {
    const Document& doc;
    const RuleConfig& cfg;
    Sink sink;

    explicit Linter(const Document& d, const RuleConfig& c) : doc(d), cfg(c) {
        sink.doc = &d;
    }

    void lang_tag(const LangTag& tag, const SourceLoc& loc, const std::string& sub) {
        const std::string path = sub.empty() ? loc.path : loc.path + "/" + sub;
        if (!tag.well_formed) {
            sink.add("E-LANG-MALFORMED", Severity::Error, path, loc.line, loc.column,
                     "xml:lang \"" + tag.raw + "\" is not well-formed BCP 47");
            return;
        }
        if (cfg.check_registry && cfg.registry != nullptr &&
            cfg.registry->lookup(tag) == RegistryStatus::Unregistered) {
            sink.add("W-LANG-UNREGISTERED", Severity::Warning, path, loc.line, loc.column,
                     "xml:lang \"" + tag.raw + "\" is well-formed but not registered (snapshot " +
                         cfg.registry->snapshot_date() + ")");
        }
    }

    void cross_ref(const CrossRef& ref, const SourceLoc& loc, const std::string& sub) {
        const std::string path = sub.empty() ? loc.path : loc.path + "/" + sub;
        if (ref.internal()) {
            const std::string frag = ref.fragment();
            if (frag.empty() ||
                (!doc.id_index.contains(frag) && !cfg.extra_ids.contains(frag))) {
                sink.add("E-REF-UNRESOLVED", Severity::Error, path, loc.line, loc.column,
                         "\"" + ref.raw + "\" does not resolve to an xml:id in this document",
                         {frag});
            }
            return;
        }
        if (!uri_has_scheme(ref.raw)) {
            sink.add("E-REF-UNRESOLVED", Severity::Error, path, loc.line, loc.column,
                     "\"" + ref.raw + "\" is neither an internal fragment nor a URI with a"
                     " scheme");
        }
    }

    void segform(const SegmentedForm& form, bool is_pron_like) {
        if (form.lang) {
            lang_tag(*form.lang, form.loc, "");
        }
        if (form.corresp) {
            cross_ref(*form.corresp, form.loc, "");
        }
        for (const auto& seg : form.segments) {
            if (seg.corresp) {
                cross_ref(*seg.corresp, seg.loc, "");
            }
        }
        if (is_pron_like) {
            if (!form.notation) {
                sink.add("W-PRON-NOTATION", Severity::Warning, form.loc,
                         "pronunciation without @notation");
            } else if (!cfg.known_notations.contains(*form.notation)) {
                sink.add("W-PRON-NOTATION", Severity::Info, form.loc,
                         "notation \"" + *form.notation + "\" is not a known system");
            }
        }
    }

    void form(const FormBlock& f) {
        for (const auto& o : f.orths) segform(o, false);
        for (const auto& p : f.prons) segform(p, true);
        for (const auto& n : f.nested) form(n);
    }

    // Collects seg ids of a citation's own reference forms.
    static void own_seg_ids(const Citation& cit, std::set<std::string>& out) {
        for (const auto* sf : {cit.oref ? &*cit.oref : nullptr, cit.pref ? &*cit.pref : nullptr}) {
            if (sf == nullptr) continue;
            for (const auto& seg : sf->segments) {
                if (seg.id) out.insert(*seg.id);
            }
        }
    }

    void citation(const Citation& cit, const Citation* parent) {
        if (cit.lang) lang_tag(*cit.lang, cit.loc, "");
        if (cit.oref) segform(*cit.oref, false);
        if (cit.pref) segform(*cit.pref, true);
        for (const auto& g : cit.glosses) {
            if (g.lang) lang_tag(*g.lang, cit.loc, "gloss");
        }
        for (const auto& u : cit.usages) {
            if (u.corresp) cross_ref(*u.corresp, u.loc, "");
        }
        for (const auto& r : cit.sense_refs) {
            cross_ref(r, cit.loc, "ref");
        }
        for (const auto& r : cit.refs) {
            if (r.target) cross_ref(*r.target, r.loc, "");
        }

        if (cit.kind == Citation::Kind::Etymon) {
            const bool wraps_single_etymon =
                cit.nested.size() == 1 && cit.nested[0].kind == Citation::Kind::Etymon &&
                !cit.oref && !cit.pref && !cit.date && !cit.grammar && cit.glosses.empty() &&
                cit.usages.empty() && cit.sense_refs.empty() && !cit.quote &&
                cit.refs.empty() && cit.notes.empty() && cit.bibls.empty() && !cit.label &&
                !cit.lang_label && cit.opaque.empty() && !cit.id && !cit.prev && !cit.next;
            if (wraps_single_etymon) {
                sink.add("W-CIT-REDUNDANT", Severity::Warning, cit.loc,
                         "etymon citation whose only content is one nested etymon citation");
            } else if (!cit.oref && !cit.pref) {
                const bool nested_etymon = std::any_of(
                    cit.nested.begin(), cit.nested.end(),
                    [](const Citation& n) { return n.kind == Citation::Kind::Etymon; });
                if (!nested_etymon) {
                    sink.add("E-ETYMON-EMPTY", Severity::Error, cit.loc,
                             "etymon citation carries neither oRef nor pRef");
                }
            }
        }

        if (cit.kind == Citation::Kind::Component && cit.component_corresp) {
            const auto& ref = *cit.component_corresp;
            if (ref.internal() && doc.id_index.contains(ref.fragment())) {
                std::set<std::string> ids;
                if (parent != nullptr) {
                    own_seg_ids(*parent, ids);
                }
                if (!ids.contains(ref.fragment())) {
                    sink.add("E-COMP-SEG", Severity::Error, cit.loc,
                             "component @corresp=\"" + ref.raw + "\" is not a <seg> of the"
                             " owning etymon's oRef/pRef",
                             {ref.fragment()});
                }
            } else {
                cross_ref(ref, cit.loc, "");
            }
        }

        for (const auto& nested : cit.nested) {
            citation(nested, &cit);
        }
    }

    // returns true if any block in the subtree is Compounding-typed
    bool etym_block(const EtymologyBlock& block) {
        bool compounding = block.etym_type == EtymType::Compounding;
        if (block.etym_type == EtymType::Other && !block.other_type.empty()) {
            sink.add("I-ETYM-OPENTYPE", Severity::Info, block.loc,
                     "etym @type \"" + block.other_type + "\" is outside the named taxonomy");
        }
        if (block.corresp) {
            cross_ref(*block.corresp, block.loc, "");
            if (block.corresp->internal()) {
                const auto it = doc.id_index.find(block.corresp->fragment());
                if (it != doc.id_index.end() && it->second.kind != IdTarget::Kind::Form) {
                    sink.add("E-REF-KIND", Severity::Info, block.loc,
                             "etym @corresp=\"" + block.corresp->raw +
                                 "\" resolves to something other than a form");
                }
            }
        }
        for (const auto& label : block.lang_labels) {
            if (label.corresp) cross_ref(*label.corresp, block.loc, "lang");
        }
        for (const auto& cit : block.citations) {
            citation(cit, nullptr);
        }
        if (block.citations.size() <= static_cast<size_t>(cfg.max_chain_length)) {
            auto chain = check_chain(block, doc);
            for (auto& d : chain.defects) {
                sink.out.push_back(std::move(d));
            }
        }
        for (const auto& nested : block.nested) {
            compounding = etym_block(nested) || compounding;
        }
        return compounding;
    }

    static bool has_seg_decomposition(const FormBlock& f) {
        for (const auto& o : f.orths) {
            for (const auto& seg : o.segments) {
                if (seg.kind == FormSegment::Kind::Seg) return true;
            }
        }
        for (const auto& p : f.prons) {
            for (const auto& seg : p.segments) {
                if (seg.kind == FormSegment::Kind::Seg) return true;
            }
        }
        return std::any_of(f.nested.begin(), f.nested.end(), has_seg_decomposition);
    }

    void entry(const LexicalEntry& e) {
        if (!e.lang) {
            sink.add("E-LANG-MISSING", Severity::Error, e.loc, "entry has no @xml:lang");
        } else {
            lang_tag(*e.lang, e.loc, "");
        }
        if (e.forms.empty()) {
            sink.add("W-FORM-MISSING", Severity::Warning, e.loc, "entry has no <form>");
        }
        for (const auto& f : e.forms) {
            form(f);
        }

        bool compounding = false;
        for (const auto& block : e.etymologies) {
            if (block.etym_type == EtymType::Metaphor ||
                block.etym_type == EtymType::Metonymy ||
                block.etym_type == EtymType::Grammaticalization) {
                sink.add("E-ETYM-PLACE", Severity::Error, block.loc,
                         "top-level <etym type=\"" + block.type_string() +
                             "\"> belongs under <sense>, not <entry>");
            }
            compounding = etym_block(block) || compounding;
        }
        for (const auto& s : e.senses) {
            if (s.corresp) cross_ref(*s.corresp, s.loc, "");
            for (const auto& u : s.usages) {
                if (u.corresp) cross_ref(*u.corresp, u.loc, "");
            }
            for (const auto& g : s.definitions) {
                if (g.lang) lang_tag(*g.lang, s.loc, "def");
            }
            for (const auto& block : s.etymologies) {
                if (block.etym_type == EtymType::Inheritance ||
                    block.etym_type == EtymType::Borrowing ||
                    block.etym_type == EtymType::Compounding) {
                    sink.add("E-ETYM-PLACE", Severity::Error, block.loc,
                             "top-level <etym type=\"" + block.type_string() +
                                 "\"> belongs under <entry>, not <sense>");
                }
                compounding = etym_block(block) || compounding;
            }
            for (const auto& t : s.translations) {
                citation(t, nullptr);
            }
        }

        if (e.entry_type && *e.entry_type == "compound") {
            const bool decomposed =
                std::any_of(e.forms.begin(), e.forms.end(), has_seg_decomposition);
            if (!decomposed && !compounding) {
                sink.add("W-COMPOUND-DECOMP", Severity::Warning, e.loc,
                         "compound entry has neither <seg>-decomposed forms nor a"
                         " compounding etymology");
            }
        }
    }

    void run() {
        for (const auto& dup : doc.duplicate_ids) {
            std::vector<std::string> related;
            for (const auto& t : dup.duplicates) {
                related.push_back(t.path);
            }
            sink.add("E-ID-DUP", Severity::Error, dup.first.path, dup.first.line,
                     dup.first.column,
                     "xml:id \"" + dup.id + "\" is bound " +
                         std::to_string(dup.duplicates.size() + 1) + " times; first wins",
                     related);
        }
        for (const auto& e : doc.entries) {
            entry(e);
        }
    }
};

}  // namespace

std::vector<Diagnostic> lint_document(const Document& doc, const RuleConfig& cfg) {
    Linter linter(doc, cfg);
    linter.run();

    std::vector<Diagnostic> findings = doc.findings;
    for (auto& d : linter.sink.out) {
        findings.push_back(std::move(d));
    }

    std::vector<Diagnostic> kept;
    kept.reserve(findings.size());
    for (auto& d : findings) {
        if (cfg.disabled_rules.contains(d.rule)) {
            continue;
        }
        const auto it = cfg.severity_overrides.find(d.rule);
        if (it != cfg.severity_overrides.end()) {
            d.severity = it->second;
        }
        kept.push_back(std::move(d));
    }
    std::stable_sort(kept.begin(), kept.end(), diagnostic_less);
    return kept;
}

bool has_errors(const std::vector<Diagnostic>& findings) {
    return std::any_of(findings.begin(), findings.end(), [](const Diagnostic& d) {
        return d.severity == Severity::Error;
    });
}

std::string to_json_line(const Diagnostic& d, const std::string& file) {
    nlohmann::ordered_json j;
    j["rule"] = d.rule;
    j["severity"] = std::string(severity_name(d.severity));
    j["file"] = file;
    j["entry"] = d.entry_id.empty()
                     ? (d.entry_index >= 0 ? "#" + std::to_string(d.entry_index) : "")
                     : d.entry_id;
    j["path"] = d.path;
    if (d.line > 0) {
        j["line"] = d.line;
        j["col"] = d.column;
    } else {
        j["line"] = nullptr;
        j["col"] = nullptr;
    }
    j["message"] = d.message;
    j["related"] = d.related;
    return j.dump();
}

std::string to_text_line(const Diagnostic& d, const std::string& file) {
    std::string out = file;
    if (d.line > 0) {
        out += ":" + std::to_string(d.line) + ":" + std::to_string(d.column);
    }
    out += ": ";
    out += severity_name(d.severity);
    out += " " + d.rule;
    if (!d.path.empty()) {
        out += " [" + d.path + "]";
    }
    out += ": " + d.message;
    if (!d.related.empty()) {
        out += " (";
        for (size_t i = 0; i < d.related.size(); i++) {
            if (i > 0) out += ", ";
            out += d.related[i];
        }
        out += ")";
    }
    return out;
}

}  // namespace etymograph::lint
