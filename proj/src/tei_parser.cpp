#include "etymograph/tei_parser.hpp"

#include <algorithm>
#include <cctype>

#include "etymograph/langtag.hpp"

namespace etymograph::tei {

namespace {

std::string local_name(const std::string& raw) {
    const auto pos = raw.find(':');
    return pos == std::string::npos ? raw : raw.substr(pos + 1);
}

bool is_ws(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

}  // namespace

std::string collapse_text(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool in_space = false;
    for (char c : raw) {
        if (is_ws(c)) {
            if (!in_space && !out.empty()) {
                out.push_back(' ');
            }
            in_space = true;
        } else {
            out.push_back(c);
            in_space = false;
        }
    }
    while (!out.empty() && out.back() == ' ') {
        out.pop_back();
    }
    return out;
}

std::string DateError::message() const {
    if (kind == Kind::Inverted) {
        return "notBefore " + value + " is later than notAfter " + attr;
    }
    if (attr.empty()) {
        return "date carries none of notBefore/notAfter/when";
    }
    return "@" + attr + "=\"" + value + "\" is not a four-digit year";
}

std::variant<DateSpan, DateError> parse_date_attrs(
    const std::vector<std::pair<std::string, std::string>>& attrs,
    const std::string& element_text) {
    DateSpan span;
    span.original_text = collapse_text(element_text);

    bool any = false;
    for (const auto& [k, v] : attrs) {
        std::optional<int>* slot = nullptr;
        if (k == "notBefore") slot = &span.not_before;
        else if (k == "notAfter") slot = &span.not_after;
        else if (k == "when") slot = &span.when;
        else continue;
        any = true;
        if (v.size() != 4 ||
            !std::all_of(v.begin(), v.end(),
                         [](unsigned char c) { return std::isdigit(c) != 0; })) {
            return DateError{DateError::Kind::BadFormat, k, v};
        }
        *slot = std::stoi(v);
    }
    if (!any) {
        return DateError{DateError::Kind::BadFormat, "", ""};
    }
    if (span.not_before && span.not_after && *span.not_before > *span.not_after) {
        // attr/value double as the two offending years in the message
        return DateError{DateError::Kind::Inverted, std::to_string(*span.not_after),
                         std::to_string(*span.not_before)};
    }
    return span;
}

namespace {

struct Context {
    std::vector<Diagnostic>* findings = nullptr;
    int entry_index = -1;
    std::string entry_id;

    void add(std::string rule, Severity sev, const std::string& path, int line, int col,
             std::string message, std::vector<std::string> related = {}) {
        if (findings == nullptr) {
            return;
        }
        Diagnostic d;
        d.rule = std::move(rule);
        d.severity = sev;
        d.entry_index = entry_index;
        d.entry_id = entry_id;
        d.path = path;
        d.line = line;
        d.column = col;
        d.message = std::move(message);
        d.related = std::move(related);
        findings->push_back(std::move(d));
    }

    void opaque_warning(const xml::Node& node, const std::string& parent_path,
                        const std::string& why) {
        add("W-PARSE-OPAQUE", Severity::Warning, parent_path + "/" + local_name(node.name),
            node.line, node.column,
            "<" + local_name(node.name) + "> " + why + "; kept as opaque content");
    }
};

SourceLoc make_loc(const std::string& path, const xml::Node& node) {
    return SourceLoc{path, node.line, node.column};
}

LangTag parse_lang(const std::string& value) { return bcp47::parse_tag(value); }

// Returns the collapsed direct text of an element (markup children flattened).
std::string element_text(const xml::Node& node) { return collapse_text(node.all_text()); }

GrammarGroup parse_gramgrp(const xml::Node& node, const std::string& path, Context& ctx) {
    GrammarGroup g;
    for (const auto& child : node.children) {
        if (child.type == xml::Node::Type::Text) {
            continue;
        }
        const std::string name = local_name(child.name);
        const std::string text = element_text(child);
        if (text.empty()) {
            continue;
        }
        if (name == "pos") g.pos = text;
        else if (name == "gen") g.gender = text;
        else if (name == "number" || name == "num") g.number = text;
        else if (name == "case") g.grammatical_case = text;
        else if (name == "per") g.person = text;
        else if (name == "tns") g.tense = text;
        else if (name == "mood") g.mood = text;
        else if (name == "iType") g.inflection_type = text;
        else if (name == "gram") {
            const std::string* type = child.attr("type");
            g.extra.emplace_back(type ? *type : "", text);
        } else {
            ctx.opaque_warning(child, path, "is not grammatical vocabulary");
        }
    }
    return g;
}

SegmentedForm parse_segform(const xml::Node& node, SegmentedForm::Kind kind,
                            const std::string& path, Context& ctx) {
    SegmentedForm form;
    form.kind = kind;
    form.loc = make_loc(path, node);
    for (const auto& [k, v] : node.attrs) {
        if (k == "notation") form.notation = v;
        else if (k == "xml:lang") form.lang = parse_lang(v);
        else if (k == "corresp") form.corresp = CrossRef{v};
        else form.extra_attrs.emplace_back(k, v);
    }
    size_t seg_index = 0;
    for (const auto& child : node.children) {
        if (child.type == xml::Node::Type::Text) {
            const std::string text = collapse_text(child.text);
            if (!text.empty()) {
                FormSegment seg;
                seg.kind = FormSegment::Kind::Plain;
                seg.text = text;
                seg.loc = make_loc(path, child);
                form.segments.push_back(std::move(seg));
            }
            continue;
        }
        const std::string name = local_name(child.name);
        if (name == "seg") {
            FormSegment seg;
            seg.kind = FormSegment::Kind::Seg;
            seg.text = element_text(child);
            if (const auto* id = child.attr("xml:id")) seg.id = *id;
            if (const auto* corresp = child.attr("corresp")) seg.corresp = CrossRef{*corresp};
            if (const auto* ana = child.attr("ana")) seg.ana = *ana;
            seg.loc = make_loc(path + "/seg[" + std::to_string(seg_index++) + "]", child);
            form.segments.push_back(std::move(seg));
        } else if (name == "pc") {
            FormSegment seg;
            seg.kind = FormSegment::Kind::Punct;
            seg.text = element_text(child);
            seg.loc = make_loc(path, child);
            form.segments.push_back(std::move(seg));
        } else {
            ctx.opaque_warning(child, path, "cannot occur inside a form");
        }
    }
    return form;
}

UsageDomain parse_usg(const xml::Node& node, const std::string& path, Context& ctx) {
    UsageDomain usg;
    usg.loc = make_loc(path, node);
    if (const auto* type = node.attr("type")) usg.usage_type = *type;
    if (const auto* corresp = node.attr("corresp")) usg.corresp = CrossRef{*corresp};
    usg.text = element_text(node);
    (void)ctx;
    return usg;
}

Gloss parse_gloss(const xml::Node& node) {
    Gloss g;
    g.text = element_text(node);
    if (const auto* lang = node.attr("xml:lang")) g.lang = parse_lang(*lang);
    return g;
}

QuoteNode parse_quote_node(const xml::Node& node, Context& ctx, const std::string& path);

std::vector<QuoteNode> parse_quote_children(const xml::Node& node, Context& ctx,
                                            const std::string& path) {
    std::vector<QuoteNode> runs;
    for (const auto& child : node.children) {
        if (child.type == xml::Node::Type::Text) {
            std::string text;
            bool in_space = false;  // collapse but keep boundary spaces
            for (char c : child.text) {
                if (is_ws(c)) {
                    if (!in_space) text.push_back(' ');
                    in_space = true;
                } else {
                    text.push_back(c);
                    in_space = false;
                }
            }
            if (!text.empty()) {
                QuoteNode run;
                run.kind = QuoteNode::Kind::Text;
                run.text = std::move(text);
                runs.push_back(std::move(run));
            }
            continue;
        }
        const std::string name = local_name(child.name);
        if (name == "oRef" || name == "seg") {
            runs.push_back(parse_quote_node(child, ctx, path));
        } else {
            // Flatten anything else into its visible text.
            QuoteNode run;
            run.kind = QuoteNode::Kind::Text;
            run.text = collapse_text(child.all_text());
            ctx.opaque_warning(child, path, "inside <quote> is not modeled");
            runs.push_back(std::move(run));
        }
    }
    return runs;
}

QuoteNode parse_quote_node(const xml::Node& node, Context& ctx, const std::string& path) {
    QuoteNode out;
    out.kind = local_name(node.name) == "oRef" ? QuoteNode::Kind::ORef : QuoteNode::Kind::Seg;
    if (const auto* id = node.attr("xml:id")) out.id = *id;
    if (const auto* ana = node.attr("ana")) out.ana = *ana;
    out.children = parse_quote_children(node, ctx, path);
    return out;
}

Quote parse_quote(const xml::Node& node, Context& ctx, const std::string& path) {
    Quote quote;
    quote.runs = parse_quote_children(node, ctx, path);
    // Trim the outer edges only; interior spaces join prose across markup.
    if (!quote.runs.empty() && quote.runs.front().kind == QuoteNode::Kind::Text) {
        auto& t = quote.runs.front().text;
        while (!t.empty() && t.front() == ' ') t.erase(t.begin());
        if (t.empty()) quote.runs.erase(quote.runs.begin());
    }
    if (!quote.runs.empty() && quote.runs.back().kind == QuoteNode::Kind::Text) {
        auto& t = quote.runs.back().text;
        while (!t.empty() && t.back() == ' ') t.pop_back();
        if (t.empty()) quote.runs.pop_back();
    }
    return quote;
}

Citation parse_citation_impl(const xml::Node& node, const std::string& path, Context& ctx);
EtymologyBlock parse_etym_impl(const xml::Node& node, int depth, const std::string& path,
                               Context& ctx);

Citation parse_citation_impl(const xml::Node& node, const std::string& path, Context& ctx) {
    Citation cit;
    cit.loc = make_loc(path, node);

    std::string type;
    std::optional<CrossRef> corresp;
    for (const auto& [k, v] : node.attrs) {
        if (k == "type") type = v;
        else if (k == "xml:id") cit.id = v;
        else if (k == "prev") cit.prev = CrossRef{v};
        else if (k == "next") cit.next = CrossRef{v};
        else if (k == "corresp") corresp = CrossRef{v};
        else if (k == "ana") cit.ana = v;
        else if (k == "xml:lang") cit.lang = parse_lang(v);
        else if (k == "cert") cit.notes.push_back("cert: " + v);
        else {
            ctx.add("W-PARSE-OPAQUE", Severity::Warning, path, node.line, node.column,
                    "attribute @" + k + " on <cit> is not modeled and was dropped");
        }
    }

    if (type == "etymon") cit.kind = Citation::Kind::Etymon;
    else if (type == "attestation") cit.kind = Citation::Kind::Attestation;
    else if (type == "translation") cit.kind = Citation::Kind::Translation;
    else if (type == "component") cit.kind = Citation::Kind::Component;
    else {
        cit.kind = Citation::Kind::Etymon;
        ctx.add("W-CIT-UNKNOWN-TYPE", Severity::Warning, path, node.line, node.column,
                type.empty() ? "<cit> has no @type; treated as etymon"
                             : "<cit type=\"" + type + "\"> is not a known citation type;"
                               " treated as etymon");
    }
    if (cit.kind == Citation::Kind::Component) {
        cit.component_corresp = corresp;
    } else if (corresp) {
        ctx.add("W-PARSE-OPAQUE", Severity::Warning, path, node.line, node.column,
                "@corresp on a non-component <cit> is not modeled and was dropped");
    }

    size_t nested_index = 0;
    size_t usg_index = 0;
    size_t ref_index = 0;
    for (const auto& child : node.children) {
        if (child.type == xml::Node::Type::Text) {
            const std::string text = collapse_text(child.text);
            if (!text.empty()) {
                xml::Node t;
                t.type = xml::Node::Type::Text;
                t.text = text;
                cit.opaque.push_back(OpaqueNode{std::move(t)});
            }
            continue;
        }
        const std::string name = local_name(child.name);
        if (name == "oRef" || name == "pRef") {
            auto form = parse_segform(
                child, name == "oRef" ? SegmentedForm::Kind::Orth : SegmentedForm::Kind::Pron,
                path + "/" + name, ctx);
            auto& slot = name == "oRef" ? cit.oref : cit.pref;
            if (slot) {
                ctx.opaque_warning(child, path, "repeats an already-present reference form");
                cit.opaque.push_back(OpaqueNode{child});
            } else {
                slot = std::move(form);
            }
        } else if (name == "date") {
            auto parsed = parse_date_attrs(child.attrs, child.all_text());
            if (auto* err = std::get_if<DateError>(&parsed)) {
                ctx.add(err->kind == DateError::Kind::Inverted ? "E-DATE-INVERTED"
                                                               : "E-DATE-FORMAT",
                        Severity::Error, path + "/date", child.line, child.column,
                        err->message());
                cit.opaque.push_back(OpaqueNode{child});
            } else if (cit.date) {
                ctx.opaque_warning(child, path, "repeats an already-present date");
                cit.opaque.push_back(OpaqueNode{child});
            } else {
                cit.date = std::get<DateSpan>(parsed);
            }
        } else if (name == "gramGrp") {
            GrammarGroup g = parse_gramgrp(child, path + "/gramGrp", ctx);
            if (cit.grammar) {
                // merge rather than drop; printed entries occasionally split it
                for (auto& e : g.extra) cit.grammar->extra.push_back(std::move(e));
            } else {
                cit.grammar = std::move(g);
            }
        } else if (name == "gram") {
            // stray <gram> outside gramGrp (Example 6's print layout)
            const std::string* gtype = child.attr("type");
            if (!cit.grammar) cit.grammar = GrammarGroup{};
            cit.grammar->extra.emplace_back(gtype ? *gtype : "", element_text(child));
        } else if (name == "gloss") {
            cit.glosses.push_back(parse_gloss(child));
        } else if (name == "usg") {
            cit.usages.push_back(
                parse_usg(child, path + "/usg[" + std::to_string(usg_index++) + "]", ctx));
        } else if (name == "ref") {
            const std::string* rtype = child.attr("type");
            const std::string* rcorresp = child.attr("corresp");
            const std::string* rtarget = child.attr("target");
            if (rtype && *rtype == "sense" && rcorresp) {
                cit.sense_refs.push_back(CrossRef{*rcorresp});
            } else {
                Ref ref;
                if (rtarget) ref.target = CrossRef{*rtarget};
                else if (rcorresp) ref.target = CrossRef{*rcorresp};
                ref.text = element_text(child);
                ref.loc = make_loc(path + "/ref[" + std::to_string(ref_index) + "]", child);
                cit.refs.push_back(std::move(ref));
            }
            ref_index++;
        } else if (name == "quote") {
            if (cit.quote) {
                ctx.opaque_warning(child, path, "repeats an already-present quote");
                cit.opaque.push_back(OpaqueNode{child});
            } else {
                cit.quote = parse_quote(child, ctx, path + "/quote");
            }
        } else if (name == "cit") {
            cit.nested.push_back(parse_citation_impl(
                child, path + "/cit[" + std::to_string(nested_index++) + "]", ctx));
        } else if (name == "note") {
            cit.notes.push_back(element_text(child));
        } else if (name == "bibl") {
            cit.bibls.push_back(element_text(child));
        } else if (name == "lbl") {
            if (cit.label) {
                ctx.opaque_warning(child, path, "repeats an already-present label");
                cit.opaque.push_back(OpaqueNode{child});
            } else {
                cit.label = element_text(child);
            }
        } else if (name == "lang") {
            if (cit.lang_label) {
                ctx.opaque_warning(child, path, "repeats an already-present language label");
                cit.opaque.push_back(OpaqueNode{child});
            } else {
                cit.lang_label = element_text(child);
            }
        } else {
            ctx.opaque_warning(child, path, "cannot occur inside <cit>");
            cit.opaque.push_back(OpaqueNode{child});
        }
    }
    return cit;
}

EtymologyBlock parse_etym_impl(const xml::Node& node, int depth, const std::string& path,
                               Context& ctx) {
    EtymologyBlock block;
    block.loc = make_loc(path, node);

    const std::string* type = node.attr("type");
    if (type) {
        std::string folded;
        for (char c : *type) folded.push_back(static_cast<char>(std::tolower(
            static_cast<unsigned char>(c))));
        if (folded == "inheritance") block.etym_type = EtymType::Inheritance;
        else if (folded == "borrowing") block.etym_type = EtymType::Borrowing;
        else if (folded == "metaphor") block.etym_type = EtymType::Metaphor;
        else if (folded == "metonymy") block.etym_type = EtymType::Metonymy;
        else if (folded == "compounding") block.etym_type = EtymType::Compounding;
        else if (folded == "grammaticalization") block.etym_type = EtymType::Grammaticalization;
        else {
            block.etym_type = EtymType::Other;
            block.other_type = *type;
        }
    } else {
        block.etym_type = EtymType::Other;
        block.other_type.clear();
    }
    if (block.etym_type == EtymType::Other && block.other_type.empty()) {
        ctx.add("W-ETYM-UNTYPED", Severity::Warning, path, node.line, node.column,
                "<etym> carries no @type");
    }
    if (const auto* corresp = node.attr("corresp")) {
        block.corresp = CrossRef{*corresp};
    }

    using CL = EtymologyBlock::ChildList;
    for (const auto& child : node.children) {
        if (child.type == xml::Node::Type::Text) {
            const std::string text = collapse_text(child.text);
            if (!text.empty()) {
                xml::Node t;
                t.type = xml::Node::Type::Text;
                t.text = text;
                block.opaque.push_back(OpaqueNode{std::move(t)});
                block.child_order.push_back({CL::Opaque, block.opaque.size() - 1});
            }
            continue;
        }
        const std::string name = local_name(child.name);
        if (name == "cit") {
            block.citations.push_back(parse_citation_impl(
                child, path + "/cit[" + std::to_string(block.citations.size()) + "]", ctx));
            block.child_order.push_back({CL::Citation, block.citations.size() - 1});
        } else if (name == "etym") {
            if (depth + 1 > kMaxEtymDepth) {
                ctx.add("W-PARSE-OPAQUE", Severity::Warning, path + "/etym", child.line,
                        child.column,
                        "etym nesting deeper than " + std::to_string(kMaxEtymDepth) +
                            "; subtree kept as opaque content");
                block.opaque.push_back(OpaqueNode{child});
                block.child_order.push_back({CL::Opaque, block.opaque.size() - 1});
            } else {
                block.nested.push_back(parse_etym_impl(
                    child, depth + 1,
                    path + "/etym[" + std::to_string(block.nested.size()) + "]", ctx));
                block.child_order.push_back({CL::Nested, block.nested.size() - 1});
            }
        } else if (name == "lbl") {
            block.labels.push_back(element_text(child));
            block.child_order.push_back({CL::Label, block.labels.size() - 1});
        } else if (name == "lang") {
            LangLabel label;
            label.text = element_text(child);
            if (const auto* corresp = child.attr("corresp")) label.corresp = CrossRef{*corresp};
            block.lang_labels.push_back(std::move(label));
            block.child_order.push_back({CL::LangLabel, block.lang_labels.size() - 1});
        } else if (name == "note") {
            block.notes.push_back(element_text(child));
            block.child_order.push_back({CL::Note, block.notes.size() - 1});
        } else if (name == "bibl") {
            block.bibls.push_back(element_text(child));
            block.child_order.push_back({CL::Bibl, block.bibls.size() - 1});
        } else if (name == "date") {
            auto parsed = parse_date_attrs(child.attrs, child.all_text());
            if (auto* err = std::get_if<DateError>(&parsed)) {
                ctx.add(err->kind == DateError::Kind::Inverted ? "E-DATE-INVERTED"
                                                               : "E-DATE-FORMAT",
                        Severity::Error, path + "/date", child.line, child.column,
                        err->message());
                block.opaque.push_back(OpaqueNode{child});
                block.child_order.push_back({CL::Opaque, block.opaque.size() - 1});
            } else if (block.date) {
                ctx.opaque_warning(child, path, "repeats an already-present date");
                block.opaque.push_back(OpaqueNode{child});
                block.child_order.push_back({CL::Opaque, block.opaque.size() - 1});
            } else {
                block.date = std::get<DateSpan>(parsed);
                block.child_order.push_back({CL::Date, 0});
            }
        } else {
            // <mentioned>, bare <oRef>/<pRef>, <ref>, and anything else the
            // block does not model stays opaque for round-trips and lifting.
            ctx.opaque_warning(child, path, "is not part of the structured etym vocabulary");
            block.opaque.push_back(OpaqueNode{child});
            block.child_order.push_back({CL::Opaque, block.opaque.size() - 1});
        }
    }
    return block;
}

FormBlock parse_form_impl(const xml::Node& node, const std::string& path, Context& ctx) {
    FormBlock form;
    form.loc = make_loc(path, node);
    for (const auto& [k, v] : node.attrs) {
        if (k == "xml:id") form.id = v;
        else if (k == "type") form.form_type = v;
        else {
            ctx.add("W-PARSE-OPAQUE", Severity::Warning, path, node.line, node.column,
                    "attribute @" + k + " on <form> is not modeled and was dropped");
        }
    }
    for (const auto& child : node.children) {
        if (child.type == xml::Node::Type::Text) {
            const std::string text = collapse_text(child.text);
            if (!text.empty()) {
                xml::Node t;
                t.type = xml::Node::Type::Text;
                t.text = text;
                form.opaque.push_back(OpaqueNode{std::move(t)});
            }
            continue;
        }
        const std::string name = local_name(child.name);
        if (name == "orth") {
            form.orths.push_back(parse_segform(
                child, SegmentedForm::Kind::Orth,
                path + "/orth[" + std::to_string(form.orths.size()) + "]", ctx));
        } else if (name == "pron") {
            form.prons.push_back(parse_segform(
                child, SegmentedForm::Kind::Pron,
                path + "/pron[" + std::to_string(form.prons.size()) + "]", ctx));
        } else if (name == "gramGrp") {
            GrammarGroup g = parse_gramgrp(child, path + "/gramGrp", ctx);
            if (form.grammar) {
                for (auto& e : g.extra) form.grammar->extra.push_back(std::move(e));
            } else {
                form.grammar = std::move(g);
            }
        } else if (name == "form") {
            form.nested.push_back(parse_form_impl(
                child, path + "/form[" + std::to_string(form.nested.size()) + "]", ctx));
        } else {
            ctx.opaque_warning(child, path, "cannot occur inside <form>");
            form.opaque.push_back(OpaqueNode{child});
        }
    }
    return form;
}

SenseBlock parse_sense_impl(const xml::Node& node, const std::string& path, Context& ctx) {
    SenseBlock sense;
    sense.loc = make_loc(path, node);
    if (const auto* id = node.attr("xml:id")) sense.id = *id;
    if (const auto* corresp = node.attr("corresp")) sense.corresp = CrossRef{*corresp};

    size_t usg_index = 0;
    for (const auto& child : node.children) {
        if (child.type == xml::Node::Type::Text) {
            const std::string text = collapse_text(child.text);
            if (!text.empty()) {
                xml::Node t;
                t.type = xml::Node::Type::Text;
                t.text = text;
                sense.opaque.push_back(OpaqueNode{std::move(t)});
            }
            continue;
        }
        const std::string name = local_name(child.name);
        if (name == "def") {
            sense.definitions.push_back(parse_gloss(child));
        } else if (name == "usg") {
            sense.usages.push_back(
                parse_usg(child, path + "/usg[" + std::to_string(usg_index++) + "]", ctx));
        } else if (name == "etym") {
            sense.etymologies.push_back(parse_etym_impl(
                child, 0, path + "/etym[" + std::to_string(sense.etymologies.size()) + "]",
                ctx));
        } else if (name == "cit") {
            Citation cit = parse_citation_impl(
                child, path + "/cit[" + std::to_string(sense.translations.size()) + "]", ctx);
            if (cit.kind == Citation::Kind::Translation) {
                sense.translations.push_back(std::move(cit));
            } else {
                ctx.opaque_warning(child, path,
                                   "is not a translation citation inside <sense>");
                sense.opaque.push_back(OpaqueNode{child});
            }
        } else {
            ctx.opaque_warning(child, path, "cannot occur inside <sense>");
            sense.opaque.push_back(OpaqueNode{child});
        }
    }
    return sense;
}

LexicalEntry parse_entry_impl(const xml::Node& node, const std::string& path, Context& ctx) {
    LexicalEntry entry;
    entry.loc = make_loc(path, node);
    for (const auto& [k, v] : node.attrs) {
        if (k == "xml:id") entry.id = v;
        else if (k == "xml:lang") entry.lang = parse_lang(v);
        else if (k == "type") entry.entry_type = v;
        else if (k == "subtype") entry.entry_subtype = v;
        else entry.extra_attrs.emplace_back(k, v);
    }
    ctx.entry_id = entry.id.value_or("");

    for (const auto& child : node.children) {
        if (child.type == xml::Node::Type::Text) {
            const std::string text = collapse_text(child.text);
            if (!text.empty()) {
                xml::Node t;
                t.type = xml::Node::Type::Text;
                t.text = text;
                entry.opaque.push_back(OpaqueNode{std::move(t)});
            }
            continue;
        }
        const std::string name = local_name(child.name);
        if (name == "form") {
            entry.forms.push_back(parse_form_impl(
                child, path + "/form[" + std::to_string(entry.forms.size()) + "]", ctx));
        } else if (name == "gramGrp") {
            GrammarGroup g = parse_gramgrp(child, path + "/gramGrp", ctx);
            if (entry.grammar) {
                for (auto& e : g.extra) entry.grammar->extra.push_back(std::move(e));
            } else {
                entry.grammar = std::move(g);
            }
        } else if (name == "sense") {
            entry.senses.push_back(parse_sense_impl(
                child, path + "/sense[" + std::to_string(entry.senses.size()) + "]", ctx));
        } else if (name == "etym") {
            entry.etymologies.push_back(parse_etym_impl(
                child, 0, path + "/etym[" + std::to_string(entry.etymologies.size()) + "]",
                ctx));
        } else {
            ctx.opaque_warning(child, path, "cannot occur inside <entry>");
            entry.opaque.push_back(OpaqueNode{child});
        }
    }
    return entry;
}

// --- id index ----------------------------------------------------------

struct IdCollector {
    Document* doc;
    size_t entry_index = 0;

    void bind(const std::string& id, IdTarget::Kind kind, const SourceLoc& loc) {
        bind(id, kind, loc.path, loc.line, loc.column);
    }

    void bind(const std::string& id, IdTarget::Kind kind, const std::string& path, int line,
              int col) {
        IdTarget target{entry_index, kind, path, line, col};
        auto [it, inserted] = doc->id_index.emplace(id, target);
        if (inserted) {
            return;
        }
        for (auto& dup : doc->duplicate_ids) {
            if (dup.id == id) {
                dup.duplicates.push_back(target);
                return;
            }
        }
        doc->duplicate_ids.push_back(DuplicateId{id, it->second, {target}});
    }

    void walk_opaque(const xml::Node& node, const std::string& base_path) {
        if (node.type != xml::Node::Type::Element) {
            return;
        }
        if (const auto* id = node.attr("xml:id")) {
            bind(*id, IdTarget::Kind::Other, base_path + "/" + local_name(node.name),
                 node.line, node.column);
        }
        for (const auto& c : node.children) {
            walk_opaque(c, base_path + "/" + local_name(node.name));
        }
    }

    void walk_segform(const SegmentedForm& form) {
        for (const auto& seg : form.segments) {
            if (seg.id) {
                bind(*seg.id, IdTarget::Kind::Seg, seg.loc);
            }
        }
    }

    void walk_quote_node(const QuoteNode& q, const SourceLoc& loc) {
        if (q.id) {
            bind(*q.id, IdTarget::Kind::Other, loc);
        }
        for (const auto& c : q.children) {
            walk_quote_node(c, loc);
        }
    }

    void walk_citation(const Citation& cit) {
        if (cit.id) {
            bind(*cit.id, IdTarget::Kind::Citation, cit.loc);
        }
        if (cit.oref) walk_segform(*cit.oref);
        if (cit.pref) walk_segform(*cit.pref);
        if (cit.quote) {
            for (const auto& run : cit.quote->runs) {
                walk_quote_node(run, cit.loc);
            }
        }
        for (const auto& n : cit.nested) walk_citation(n);
        for (const auto& o : cit.opaque) walk_opaque(o.node, cit.loc.path);
    }

    void walk_etym(const EtymologyBlock& block) {
        for (const auto& c : block.citations) walk_citation(c);
        for (const auto& n : block.nested) walk_etym(n);
        for (const auto& o : block.opaque) walk_opaque(o.node, block.loc.path);
    }

    void walk_form(const FormBlock& form) {
        if (form.id) {
            bind(*form.id, IdTarget::Kind::Form, form.loc);
        }
        for (const auto& o : form.orths) walk_segform(o);
        for (const auto& p : form.prons) walk_segform(p);
        for (const auto& n : form.nested) walk_form(n);
        for (const auto& o : form.opaque) walk_opaque(o.node, form.loc.path);
    }

    void walk_entry(const LexicalEntry& entry) {
        if (entry.id) {
            bind(*entry.id, IdTarget::Kind::Entry, entry.loc);
        }
        for (const auto& f : entry.forms) walk_form(f);
        for (const auto& s : entry.senses) {
            if (s.id) {
                bind(*s.id, IdTarget::Kind::Other, s.loc);
            }
            for (const auto& t : s.translations) walk_citation(t);
            for (const auto& e : s.etymologies) walk_etym(e);
            for (const auto& o : s.opaque) walk_opaque(o.node, s.loc.path);
        }
        for (const auto& e : entry.etymologies) walk_etym(e);
        for (const auto& o : entry.opaque) walk_opaque(o.node, entry.loc.path);
    }
};

bool subtree_has_entry(const xml::Node& node) {
    if (node.type != xml::Node::Type::Element) {
        return false;
    }
    if (local_name(node.name) == "entry") {
        return true;
    }
    return std::any_of(node.children.begin(), node.children.end(), subtree_has_entry);
}

void collect_entries(const xml::Node& node, Document& doc, Context& ctx) {
    if (node.type != xml::Node::Type::Element) {
        return;
    }
    if (local_name(node.name) == "entry") {
        ctx.entry_index = static_cast<int>(doc.entries.size());
        const std::string path = "entry[" + std::to_string(doc.entries.size()) + "]";
        doc.entries.push_back(parse_entry_impl(node, path, ctx));
        ctx.entry_index = -1;
        ctx.entry_id.clear();
        return;
    }
    if (subtree_has_entry(node)) {
        for (const auto& child : node.children) {
            collect_entries(child, doc, ctx);
        }
        return;
    }
    ctx.add("I-PARSE-SKIP", Severity::Info, "/" + local_name(node.name), node.line,
            node.column, "<" + local_name(node.name) + "> contains no entries; skipped");
}

}  // namespace

Document parse_document(std::string_view bytes, const std::string& source_name) {
    const xml::Node root = xml::parse(bytes, source_name);

    Document doc;
    doc.source_name = source_name;
    Context ctx;
    ctx.findings = &doc.findings;
    collect_entries(root, doc, ctx);

    IdCollector collector{&doc};
    for (size_t i = 0; i < doc.entries.size(); i++) {
        collector.entry_index = i;
        collector.walk_entry(doc.entries[i]);
    }
    return doc;
}

LexicalEntry parse_entry(const xml::Node& element, std::vector<Diagnostic>* findings) {
    Context ctx;
    ctx.findings = findings;
    ctx.entry_index = 0;
    return parse_entry_impl(element, "entry[0]", ctx);
}

EtymologyBlock parse_etym(const xml::Node& element, int depth,
                          std::vector<Diagnostic>* findings) {
    if (depth > kMaxEtymDepth) {
        throw depth_exceeded_error(depth);
    }
    Context ctx;
    ctx.findings = findings;
    return parse_etym_impl(element, depth, "etym[0]", ctx);
}

Citation parse_citation(const xml::Node& element, std::vector<Diagnostic>* findings) {
    Context ctx;
    ctx.findings = findings;
    return parse_citation_impl(element, "cit[0]", ctx);
}

}  // namespace etymograph::tei
