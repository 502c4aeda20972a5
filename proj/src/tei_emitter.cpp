#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "etymograph/tei_parser.hpp"

namespace etymograph::tei {

namespace {

// Emission tree: Verbatim nodes carry pre-serialized XML (opaque subtrees)
// that must not be reindented.
struct EmitNode {
    enum class Kind { Element, Text, Verbatim };

    Kind kind = Kind::Element;
    std::string name;
    std::vector<std::pair<std::string, std::string>> attrs;
    std::vector<EmitNode> children;
    std::string text;  // Text: raw (escaped on output); Verbatim: serialized XML

    static EmitNode element(std::string name) {
        EmitNode n;
        n.name = std::move(name);
        return n;
    }
    static EmitNode text_node(std::string text) {
        EmitNode n;
        n.kind = Kind::Text;
        n.text = std::move(text);
        return n;
    }
    static EmitNode verbatim(const xml::Node& node) {
        EmitNode n;
        n.kind = Kind::Verbatim;
        n.text = xml::serialize(node);
        return n;
    }

    void attr(const std::string& k, const std::string& v) { attrs.emplace_back(k, v); }
    void attr_opt(const std::string& k, const std::optional<std::string>& v) {
        if (v) attrs.emplace_back(k, *v);
    }
};

// Elements whose content is whitespace-sensitive or leaf-like: one line.
bool inline_name(const std::string& name) {
    static const std::set<std::string> names = {
        "orth", "pron", "oRef", "pRef", "quote", "seg",  "pc",   "gloss", "def",
        "note", "bibl", "lang", "lbl",  "usg",   "ref",  "date", "pos",   "gen",
        "number", "num", "case", "per", "tns",   "mood", "iType", "gram",
    };
    return names.contains(name);
}

void write_inline(const EmitNode& n, std::string& out) {
    switch (n.kind) {
        case EmitNode::Kind::Text:
            out += xml::escape_text(n.text);
            return;
        case EmitNode::Kind::Verbatim:
            out += n.text;
            return;
        case EmitNode::Kind::Element:
            break;
    }
    out += "<" + n.name;
    for (const auto& [k, v] : n.attrs) {
        out += " " + k + "=\"" + xml::escape_attr(v) + "\"";
    }
    if (n.children.empty()) {
        out += "/>";
        return;
    }
    out += ">";
    for (const auto& c : n.children) {
        write_inline(c, out);
    }
    out += "</" + n.name + ">";
}

void write_node(const EmitNode& n, int depth, std::string& out) {
    const std::string indent(static_cast<size_t>(depth) * 2, ' ');
    if (n.kind != EmitNode::Kind::Element || n.children.empty() || inline_name(n.name) ||
        std::any_of(n.children.begin(), n.children.end(),
                    [](const EmitNode& c) { return c.kind == EmitNode::Kind::Text; })) {
        out += indent;
        write_inline(n, out);
        out += "\n";
        return;
    }
    out += indent + "<" + n.name;
    for (const auto& [k, v] : n.attrs) {
        out += " " + k + "=\"" + xml::escape_attr(v) + "\"";
    }
    out += ">\n";
    for (const auto& c : n.children) {
        write_node(c, depth + 1, out);
    }
    out += indent + "</" + n.name + ">\n";
}

// --- model -> emit tree --------------------------------------------------

std::string format_year(int year) {
    std::string s = std::to_string(year);
    while (s.size() < 4) {
        s.insert(s.begin(), '0');
    }
    return s;
}

EmitNode date_node(const DateSpan& date) {
    EmitNode n = EmitNode::element("date");
    if (date.when) n.attr("when", format_year(*date.when));
    if (date.not_before) n.attr("notBefore", format_year(*date.not_before));
    if (date.not_after) n.attr("notAfter", format_year(*date.not_after));
    if (!date.original_text.empty()) {
        n.children.push_back(EmitNode::text_node(date.original_text));
    }
    return n;
}

EmitNode segform_node(const SegmentedForm& form, const std::string& name) {
    EmitNode n = EmitNode::element(name);
    if (form.lang) n.attr("xml:lang", form.lang->raw);
    n.attr_opt("notation", form.notation);
    if (form.corresp) n.attr("corresp", form.corresp->raw);
    for (const auto& [k, v] : form.extra_attrs) {
        n.attr(k, v);
    }
    for (const auto& seg : form.segments) {
        switch (seg.kind) {
            case FormSegment::Kind::Plain:
                n.children.push_back(EmitNode::text_node(seg.text));
                break;
            case FormSegment::Kind::Punct: {
                EmitNode pc = EmitNode::element("pc");
                if (!seg.text.empty()) {
                    pc.children.push_back(EmitNode::text_node(seg.text));
                }
                n.children.push_back(std::move(pc));
                break;
            }
            case FormSegment::Kind::Seg: {
                EmitNode sn = EmitNode::element("seg");
                sn.attr_opt("xml:id", seg.id);
                if (seg.corresp) sn.attr("corresp", seg.corresp->raw);
                sn.attr_opt("ana", seg.ana);
                if (!seg.text.empty()) {
                    sn.children.push_back(EmitNode::text_node(seg.text));
                }
                n.children.push_back(std::move(sn));
                break;
            }
        }
    }
    return n;
}

EmitNode gramgrp_node(const GrammarGroup& g) {
    EmitNode n = EmitNode::element("gramGrp");
    auto leaf = [&n](const char* name, const std::optional<std::string>& v) {
        if (!v) return;
        EmitNode e = EmitNode::element(name);
        e.children.push_back(EmitNode::text_node(*v));
        n.children.push_back(std::move(e));
    };
    leaf("pos", g.pos);
    leaf("gen", g.gender);
    leaf("number", g.number);
    leaf("case", g.grammatical_case);
    leaf("per", g.person);
    leaf("tns", g.tense);
    leaf("mood", g.mood);
    leaf("iType", g.inflection_type);
    for (const auto& [type, value] : g.extra) {
        EmitNode e = EmitNode::element("gram");
        if (!type.empty()) e.attr("type", type);
        e.children.push_back(EmitNode::text_node(value));
        n.children.push_back(std::move(e));
    }
    return n;
}

EmitNode usg_node(const UsageDomain& usg) {
    EmitNode n = EmitNode::element("usg");
    if (!usg.usage_type.empty()) n.attr("type", usg.usage_type);
    if (usg.corresp) n.attr("corresp", usg.corresp->raw);
    n.children.push_back(EmitNode::text_node(usg.text));
    return n;
}

EmitNode gloss_node(const Gloss& gloss, const char* name) {
    EmitNode n = EmitNode::element(name);
    if (gloss.lang) n.attr("xml:lang", gloss.lang->raw);
    if (!gloss.text.empty()) {
        n.children.push_back(EmitNode::text_node(gloss.text));
    }
    return n;
}

EmitNode text_leaf(const char* name, const std::string& text) {
    EmitNode n = EmitNode::element(name);
    if (!text.empty()) {
        n.children.push_back(EmitNode::text_node(text));
    }
    return n;
}

void quote_children(const std::vector<QuoteNode>& runs, EmitNode& parent) {
    for (const auto& run : runs) {
        switch (run.kind) {
            case QuoteNode::Kind::Text:
                parent.children.push_back(EmitNode::text_node(run.text));
                break;
            case QuoteNode::Kind::ORef:
            case QuoteNode::Kind::Seg: {
                EmitNode n =
                    EmitNode::element(run.kind == QuoteNode::Kind::ORef ? "oRef" : "seg");
                n.attr_opt("xml:id", run.id);
                n.attr_opt("ana", run.ana);
                quote_children(run.children, n);
                parent.children.push_back(std::move(n));
                break;
            }
        }
    }
}

EmitNode citation_node(const Citation& cit) {
    EmitNode n = EmitNode::element("cit");
    switch (cit.kind) {
        case Citation::Kind::Etymon: n.attr("type", "etymon"); break;
        case Citation::Kind::Attestation: n.attr("type", "attestation"); break;
        case Citation::Kind::Translation: n.attr("type", "translation"); break;
        case Citation::Kind::Component: n.attr("type", "component"); break;
    }
    n.attr_opt("xml:id", cit.id);
    if (cit.prev) n.attr("prev", cit.prev->raw);
    if (cit.next) n.attr("next", cit.next->raw);
    if (cit.component_corresp) n.attr("corresp", cit.component_corresp->raw);
    n.attr_opt("ana", cit.ana);
    if (cit.lang) n.attr("xml:lang", cit.lang->raw);

    if (cit.date) n.children.push_back(date_node(*cit.date));
    if (cit.oref) n.children.push_back(segform_node(*cit.oref, "oRef"));
    if (cit.pref) n.children.push_back(segform_node(*cit.pref, "pRef"));
    for (const auto& g : cit.glosses) n.children.push_back(gloss_node(g, "gloss"));
    if (cit.grammar && !cit.grammar->empty()) {
        n.children.push_back(gramgrp_node(*cit.grammar));
    }
    for (const auto& u : cit.usages) n.children.push_back(usg_node(u));
    for (const auto& r : cit.sense_refs) {
        EmitNode ref = EmitNode::element("ref");
        ref.attr("type", "sense");
        ref.attr("corresp", r.raw);
        n.children.push_back(std::move(ref));
    }
    for (const auto& r : cit.refs) {
        EmitNode ref = EmitNode::element("ref");
        if (r.target) ref.attr("target", r.target->raw);
        if (!r.text.empty()) ref.children.push_back(EmitNode::text_node(r.text));
        n.children.push_back(std::move(ref));
    }
    if (cit.label) n.children.push_back(text_leaf("lbl", *cit.label));
    if (cit.lang_label) n.children.push_back(text_leaf("lang", *cit.lang_label));
    if (cit.quote) {
        EmitNode q = EmitNode::element("quote");
        quote_children(cit.quote->runs, q);
        n.children.push_back(std::move(q));
    }
    for (const auto& nested : cit.nested) n.children.push_back(citation_node(nested));
    for (const auto& note : cit.notes) n.children.push_back(text_leaf("note", note));
    for (const auto& bibl : cit.bibls) n.children.push_back(text_leaf("bibl", bibl));
    for (const auto& o : cit.opaque) n.children.push_back(EmitNode::verbatim(o.node));
    return n;
}

EmitNode lang_label_node(const LangLabel& label) {
    EmitNode n = EmitNode::element("lang");
    if (label.corresp) n.attr("corresp", label.corresp->raw);
    if (!label.text.empty()) n.children.push_back(EmitNode::text_node(label.text));
    return n;
}

EmitNode etym_node(const EtymologyBlock& block) {
    EmitNode n = EmitNode::element("etym");
    const std::string type = block.type_string();
    if (!type.empty()) n.attr("type", type);
    if (block.corresp) n.attr("corresp", block.corresp->raw);

    using CL = EtymologyBlock::ChildList;
    const size_t total = block.citations.size() + block.nested.size() +
                         block.lang_labels.size() + block.labels.size() +
                         block.notes.size() + block.bibls.size() + block.opaque.size() +
                         (block.date ? 1 : 0);
    if (block.child_order.size() == total) {
        for (const auto& ref : block.child_order) {
            switch (ref.list) {
                case CL::Citation:
                    n.children.push_back(citation_node(block.citations[ref.index]));
                    break;
                case CL::Nested:
                    n.children.push_back(etym_node(block.nested[ref.index]));
                    break;
                case CL::LangLabel:
                    n.children.push_back(lang_label_node(block.lang_labels[ref.index]));
                    break;
                case CL::Label:
                    n.children.push_back(text_leaf("lbl", block.labels[ref.index]));
                    break;
                case CL::Note:
                    n.children.push_back(text_leaf("note", block.notes[ref.index]));
                    break;
                case CL::Bibl:
                    n.children.push_back(text_leaf("bibl", block.bibls[ref.index]));
                    break;
                case CL::Date:
                    n.children.push_back(date_node(*block.date));
                    break;
                case CL::Opaque:
                    n.children.push_back(EmitNode::verbatim(block.opaque[ref.index].node));
                    break;
            }
        }
        return n;
    }
    // Constructed block without a recorded child order: canonical order.
    for (const auto& l : block.labels) n.children.push_back(text_leaf("lbl", l));
    for (const auto& l : block.lang_labels) n.children.push_back(lang_label_node(l));
    if (block.date) n.children.push_back(date_node(*block.date));
    for (const auto& c : block.citations) n.children.push_back(citation_node(c));
    for (const auto& e : block.nested) n.children.push_back(etym_node(e));
    for (const auto& note : block.notes) n.children.push_back(text_leaf("note", note));
    for (const auto& bibl : block.bibls) n.children.push_back(text_leaf("bibl", bibl));
    for (const auto& o : block.opaque) n.children.push_back(EmitNode::verbatim(o.node));
    return n;
}

EmitNode form_node(const FormBlock& form) {
    EmitNode n = EmitNode::element("form");
    n.attr_opt("xml:id", form.id);
    n.attr_opt("type", form.form_type);
    for (const auto& o : form.orths) n.children.push_back(segform_node(o, "orth"));
    for (const auto& p : form.prons) n.children.push_back(segform_node(p, "pron"));
    if (form.grammar && !form.grammar->empty()) {
        n.children.push_back(gramgrp_node(*form.grammar));
    }
    for (const auto& nested : form.nested) n.children.push_back(form_node(nested));
    for (const auto& o : form.opaque) n.children.push_back(EmitNode::verbatim(o.node));
    return n;
}

EmitNode sense_node(const SenseBlock& sense) {
    EmitNode n = EmitNode::element("sense");
    n.attr_opt("xml:id", sense.id);
    if (sense.corresp) n.attr("corresp", sense.corresp->raw);
    for (const auto& d : sense.definitions) n.children.push_back(gloss_node(d, "def"));
    for (const auto& u : sense.usages) n.children.push_back(usg_node(u));
    for (const auto& e : sense.etymologies) n.children.push_back(etym_node(e));
    for (const auto& t : sense.translations) n.children.push_back(citation_node(t));
    for (const auto& o : sense.opaque) n.children.push_back(EmitNode::verbatim(o.node));
    return n;
}

EmitNode entry_node(const LexicalEntry& entry) {
    EmitNode n = EmitNode::element("entry");
    n.attr_opt("xml:id", entry.id);
    if (entry.lang) n.attr("xml:lang", entry.lang->raw);
    n.attr_opt("type", entry.entry_type);
    n.attr_opt("subtype", entry.entry_subtype);
    for (const auto& [k, v] : entry.extra_attrs) n.attr(k, v);
    for (const auto& f : entry.forms) n.children.push_back(form_node(f));
    if (entry.grammar && !entry.grammar->empty()) {
        n.children.push_back(gramgrp_node(*entry.grammar));
    }
    for (const auto& s : entry.senses) n.children.push_back(sense_node(s));
    for (const auto& e : entry.etymologies) n.children.push_back(etym_node(e));
    for (const auto& o : entry.opaque) n.children.push_back(EmitNode::verbatim(o.node));
    return n;
}

}  // namespace

std::string emit_tei(const Document& doc) {
    EmitNode tei = EmitNode::element("TEI");
    EmitNode text = EmitNode::element("text");
    EmitNode body = EmitNode::element("body");
    for (const auto& entry : doc.entries) {
        body.children.push_back(entry_node(entry));
    }
    text.children.push_back(std::move(body));
    tei.children.push_back(std::move(text));

    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    write_node(tei, 0, out);
    return out;
}

}  // namespace etymograph::tei
