#include "etymograph/legacy_lift.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>

#include "etymograph/tei_parser.hpp"

namespace etymograph::lift {

namespace {

std::string local_name(const std::string& raw) {
    const auto pos = raw.find(':');
    return pos == std::string::npos ? raw : raw.substr(pos + 1);
}

bool is_mentioned(const OpaqueNode& o) {
    return o.node.type == xml::Node::Type::Element && local_name(o.node.name) == "mentioned";
}

bool punctuation_only(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isalnum(c) == 0;
    });
}

void log_diag(std::vector<Diagnostic>* log, std::string rule, Severity sev,
              const SourceLoc& loc, std::string message) {
    if (log == nullptr) {
        return;
    }
    Diagnostic d;
    d.rule = std::move(rule);
    d.severity = sev;
    d.path = loc.path;
    d.line = loc.line;
    d.column = loc.column;
    d.message = std::move(message);
    log->push_back(std::move(d));
}

}  // namespace

LiftResult lift_flat_etym(const EtymologyBlock& block, const bcp47::AbbrevTable& table) {
    const bool any_mentioned = std::any_of(block.opaque.begin(), block.opaque.end(),
                                           is_mentioned);
    if (!any_mentioned) {
        throw not_legacy_error();
    }

    LiftResult result;
    EtymologyBlock& out = result.block;
    out.etym_type = block.etym_type;
    out.other_type = block.other_type;
    out.corresp = block.corresp;
    out.date = block.date;
    out.loc = block.loc;

    using CL = EtymologyBlock::ChildList;
    auto push = [&out](CL list, size_t index) {
        out.child_order.push_back({list, index});
    };

    std::optional<std::string> pending_label;
    for (const auto& ref : block.child_order) {
        switch (ref.list) {
            case CL::LangLabel: {
                pending_label = block.lang_labels[ref.index].text;
                break;  // consumed into the next citation
            }
            case CL::Opaque: {
                const OpaqueNode& o = block.opaque[ref.index];
                if (is_mentioned(o)) {
                    Citation cit;
                    cit.kind = Citation::Kind::Etymon;
                    SegmentedForm oref;
                    oref.kind = SegmentedForm::Kind::Orth;
                    FormSegment seg;
                    seg.kind = FormSegment::Kind::Plain;
                    seg.text = tei::collapse_text(o.node.all_text());
                    oref.segments.push_back(std::move(seg));
                    cit.oref = std::move(oref);
                    cit.loc = SourceLoc{
                        block.loc.path + "/cit[" + std::to_string(out.citations.size()) + "]",
                        o.node.line, o.node.column};
                    if (pending_label) {
                        cit.lang_label = pending_label;
                        if (auto tag = table.expand(*pending_label)) {
                            cit.lang = std::move(tag);
                        } else {
                            log_diag(&result.log, "W-LIFT-NOLANG", Severity::Warning, cit.loc,
                                     "label \"" + *pending_label +
                                         "\" has no language-tag mapping");
                        }
                    } else {
                        log_diag(&result.log, "W-LIFT-NOLANG", Severity::Warning, cit.loc,
                                 "etymon \"" + cit.oref->surface() +
                                     "\" has no preceding language label");
                    }
                    out.citations.push_back(std::move(cit));
                    push(CL::Citation, out.citations.size() - 1);
                } else if (o.node.type == xml::Node::Type::Text) {
                    const std::string text = tei::collapse_text(o.node.text);
                    if (text.find(';') != std::string::npos) {
                        pending_label.reset();  // run boundary
                    }
                    if (!punctuation_only(text)) {
                        out.notes.push_back(text);
                        push(CL::Note, out.notes.size() - 1);
                    }
                } else {
                    out.opaque.push_back(o);
                    push(CL::Opaque, out.opaque.size() - 1);
                }
                break;
            }
            case CL::Citation:
                out.citations.push_back(block.citations[ref.index]);
                push(CL::Citation, out.citations.size() - 1);
                break;
            case CL::Nested:
                out.nested.push_back(block.nested[ref.index]);
                push(CL::Nested, out.nested.size() - 1);
                break;
            case CL::Label:
                out.labels.push_back(block.labels[ref.index]);
                push(CL::Label, out.labels.size() - 1);
                break;
            case CL::Note:
                out.notes.push_back(block.notes[ref.index]);
                push(CL::Note, out.notes.size() - 1);
                break;
            case CL::Bibl:
                out.bibls.push_back(block.bibls[ref.index]);
                push(CL::Bibl, out.bibls.size() - 1);
                break;
            case CL::Date:
                push(CL::Date, 0);
                break;
        }
    }
    return result;
}

namespace {

bool redundant_wrapper(const Citation& cit) {
    return cit.kind == Citation::Kind::Etymon && cit.nested.size() == 1 &&
           cit.nested[0].kind == Citation::Kind::Etymon && !cit.oref && !cit.pref &&
           !cit.date && !cit.grammar && cit.glosses.empty() && cit.usages.empty() &&
           cit.sense_refs.empty() && !cit.quote && cit.refs.empty() && cit.notes.empty() &&
           cit.bibls.empty() && !cit.label && !cit.lang_label && cit.opaque.empty() &&
           !cit.id && !cit.prev && !cit.next;
}

bool same_surface(const Citation& a, const Citation& b) {
    auto surface = [](const Citation& c) {
        std::string out;
        if (c.oref) out += c.oref->surface();
        out += "|";
        if (c.pref) out += c.pref->surface();
        return out;
    };
    return a.id && b.id && *a.id == *b.id && surface(a) == surface(b);
}

struct Normalizer {
    std::vector<Diagnostic> log;
    bool aggressive = false;

    void note(std::string rule, const SourceLoc& loc, std::string message) {
        log_diag(&log, std::move(rule), Severity::Info, loc, std::move(message));
    }

    Citation citation(Citation cit) {
        while (redundant_wrapper(cit)) {
            note("I-NORM-UNWRAP", cit.loc,
                 "collapsed redundant etymon wrapper at " + cit.loc.path + " into " +
                     cit.nested[0].loc.path);
            Citation inner = std::move(cit.nested[0]);
            inner.loc = cit.loc;
            cit = std::move(inner);
        }
        if (cit.kind == Citation::Kind::Etymon && !cit.oref && !cit.pref &&
            cit.refs.size() == 1 && !cit.refs[0].text.empty()) {
            note("I-NORM-REF-OREF", cit.loc,
                 "rewrote legacy <ref> \"" + cit.refs[0].text + "\" into oRef");
            SegmentedForm oref;
            oref.kind = SegmentedForm::Kind::Orth;
            FormSegment seg;
            seg.kind = FormSegment::Kind::Plain;
            seg.text = cit.refs[0].text;
            oref.segments.push_back(std::move(seg));
            oref.corresp = cit.refs[0].target;
            cit.oref = std::move(oref);
            cit.refs.clear();
        }
        for (auto& nested : cit.nested) {
            nested = citation(std::move(nested));
        }
        return cit;
    }

    EtymologyBlock block(EtymologyBlock b) {
        for (auto& cit : b.citations) {
            cit = citation(std::move(cit));
        }
        // identical consecutive etymons (duplicated print blocks)
        for (size_t i = 0; i + 1 < b.citations.size();) {
            const Citation& a = b.citations[i];
            const Citation& c = b.citations[i + 1];
            if (a.kind == Citation::Kind::Etymon && c.kind == Citation::Kind::Etymon &&
                same_surface(a, c)) {
                if (aggressive) {
                    note("I-NORM-DUPCIT", c.loc,
                         "removed duplicate consecutive etymon \"" + *c.id + "\"");
                    const size_t drop = i + 1;
                    b.citations.erase(b.citations.begin() + static_cast<long>(drop));
                    // keep child_order consistent: drop the slot, shift the rest
                    using CL = EtymologyBlock::ChildList;
                    std::vector<EtymologyBlock::ChildRef> order;
                    for (const auto& ref : b.child_order) {
                        if (ref.list == CL::Citation) {
                            if (ref.index == drop) {
                                continue;
                            }
                            order.push_back(
                                {CL::Citation, ref.index > drop ? ref.index - 1 : ref.index});
                        } else {
                            order.push_back(ref);
                        }
                    }
                    b.child_order = std::move(order);
                    continue;
                }
                note("I-NORM-DUPCIT", c.loc,
                     "kept duplicate consecutive etymon \"" + *c.id +
                         "\" (use aggressive mode to remove)");
            }
            i++;
        }
        for (auto& nested : b.nested) {
            nested = block(std::move(nested));
        }
        return b;
    }
};

void collect_ids(const Citation& cit, std::map<std::string, int>& seen) {
    if (cit.id) {
        seen[*cit.id]++;
    }
    for (const auto& n : cit.nested) {
        collect_ids(n, seen);
    }
}

void collect_block_ids(const EtymologyBlock& b, std::map<std::string, int>& seen) {
    for (const auto& c : b.citations) {
        collect_ids(c, seen);
    }
    for (const auto& n : b.nested) {
        collect_block_ids(n, seen);
    }
}

}  // namespace

NormalizeResult normalize_entry(const LexicalEntry& entry, bool aggressive) {
    Normalizer normalizer;
    normalizer.aggressive = aggressive;

    NormalizeResult result;
    result.entry = entry;
    for (auto& block : result.entry.etymologies) {
        block = normalizer.block(std::move(block));
    }
    for (auto& sense : result.entry.senses) {
        for (auto& block : sense.etymologies) {
            block = normalizer.block(std::move(block));
        }
    }

    std::map<std::string, int> seen;
    for (const auto& b : result.entry.etymologies) {
        collect_block_ids(b, seen);
    }
    for (const auto& s : result.entry.senses) {
        for (const auto& b : s.etymologies) {
            collect_block_ids(b, seen);
        }
    }
    for (const auto& [id, count] : seen) {
        if (count > 1) {
            normalizer.note("I-NORM-DUPID", result.entry.loc,
                            "xml:id \"" + id + "\" appears " + std::to_string(count) +
                                " times in this entry; kept as-is");
        }
    }

    result.log = std::move(normalizer.log);
    return result;
}

}  // namespace etymograph::lift
