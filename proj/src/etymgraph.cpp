#include "etymograph/etymgraph.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "json.hpp"

namespace etymograph::graph {

std::string_view node_kind_name(NodeKind k) {
    switch (k) {
        case NodeKind::EntryHead: return "entry";
        case NodeKind::SenseHead: return "sense";
        case NodeKind::EtymonUnit: return "etymon";
        case NodeKind::ExternalConcept: return "concept";
    }
    return "entry";
}

std::string_view relation_name(Relation r) {
    switch (r) {
        case Relation::Inheritance: return "inheritance";
        case Relation::Borrowing: return "borrowing";
        case Relation::Metaphor: return "metaphor";
        case Relation::Metonymy: return "metonymy";
        case Relation::Compounding: return "compounding";
        case Relation::Grammaticalization: return "grammaticalization";
        case Relation::Other: return "other";
        case Relation::Precedes: return "precedes";
        case Relation::SenseOf: return "senseOf";
        case Relation::ComponentOf: return "componentOf";
        case Relation::SameAs: return "sameAs";
    }
    return "other";
}

const GraphNode* EtymGraph::find(const std::string& node_id) const {
    for (const auto& n : nodes) {
        if (n.id == node_id) {
            return &n;
        }
    }
    return nullptr;
}

namespace {

bool node_less(const GraphNode& a, const GraphNode& b) { return a.id < b.id; }

bool edge_less(const GraphEdge& a, const GraphEdge& b) {
    if (a.from != b.from) return a.from < b.from;
    if (a.to != b.to) return a.to < b.to;
    if (a.relation != b.relation) return a.relation < b.relation;
    if (a.other != b.other) return a.other < b.other;
    if (a.process_path != b.process_path) return a.process_path < b.process_path;
    return a.form_target < b.form_target;
}

Relation relation_of(const EtymologyBlock& block) {
    switch (block.etym_type) {
        case EtymType::Inheritance: return Relation::Inheritance;
        case EtymType::Borrowing: return Relation::Borrowing;
        case EtymType::Metaphor: return Relation::Metaphor;
        case EtymType::Metonymy: return Relation::Metonymy;
        case EtymType::Compounding: return Relation::Compounding;
        case EtymType::Grammaticalization: return Relation::Grammaticalization;
        case EtymType::Other: return Relation::Other;
    }
    return Relation::Other;
}

bool is_scheme_uri(const std::string& s) {
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

std::string last_uri_segment(const std::string& uri) {
    const size_t slash = uri.find_last_of('/');
    std::string tail = slash == std::string::npos ? uri : uri.substr(slash + 1);
    const size_t colon = tail.find_last_of(':');
    if (colon != std::string::npos) {
        tail = tail.substr(colon + 1);
    }
    return tail.empty() ? uri : tail;
}

struct Builder {
    EtymGraph graph;
    std::map<std::string, size_t> index;  // node id -> graph.nodes slot
    const std::vector<Document>* docs = nullptr;
    bool cross_file = false;

    size_t add_node(GraphNode node) {
        const auto it = index.find(node.id);
        if (it != index.end()) {
            return it->second;
        }
        graph.nodes.push_back(std::move(node));
        index.emplace(graph.nodes.back().id, graph.nodes.size() - 1);
        return graph.nodes.size() - 1;
    }

    void add_edge(const std::string& from, const std::string& to, Relation rel,
                  std::string other = {}, std::vector<std::string> process_path = {},
                  std::optional<std::string> form_target = {}) {
        GraphEdge e;
        e.from = from;
        e.to = to;
        e.relation = rel;
        e.other = std::move(other);
        e.process_path = std::move(process_path);
        e.form_target = std::move(form_target);
        graph.edges.push_back(std::move(e));
    }

    // Entry id resolution for SameAs / ComponentOf targets.
    const Document* resolve_entry(const Document& own, const std::string& fragment,
                                  size_t* entry_index) const {
        auto in_doc = [&](const Document& d) -> bool {
            const auto it = d.id_index.find(fragment);
            if (it == d.id_index.end() || it->second.kind != IdTarget::Kind::Entry) {
                return false;
            }
            *entry_index = it->second.entry_index;
            return true;
        };
        if (in_doc(own)) {
            return &own;
        }
        if (cross_file) {
            for (const auto& d : *docs) {
                if (&d != &own && in_doc(d)) {
                    return &d;
                }
            }
        }
        return nullptr;
    }

    static std::string entry_key(const Document& doc, size_t entry_index) {
        const auto& e = doc.entries[entry_index];
        return doc.source_name + "!" +
               (e.id ? *e.id : "e" + std::to_string(entry_index));
    }

    std::string entry_node_id(const Document& doc, size_t entry_index) {
        return entry_key(doc, entry_index);
    }

    void concept_node(const std::string& uri) {
        GraphNode n;
        n.id = "uri!" + uri;
        n.kind = NodeKind::ExternalConcept;
        n.uri = uri;
        n.gloss = last_uri_segment(uri);
        add_node(std::move(n));
    }

    void collect_concepts_from_citation(const Citation& cit) {
        for (const auto& u : cit.usages) {
            if (u.corresp && is_scheme_uri(u.corresp->raw)) {
                concept_node(u.corresp->raw);
            }
        }
        for (const auto& r : cit.sense_refs) {
            if (is_scheme_uri(r.raw)) {
                concept_node(r.raw);
            }
        }
        for (const auto& r : cit.refs) {
            if (r.target && is_scheme_uri(r.target->raw)) {
                concept_node(r.target->raw);
            }
        }
        for (const auto& n : cit.nested) {
            collect_concepts_from_citation(n);
        }
    }

    // One EtymonUnit per Etymon citation, nested ones included.
    std::string etymon_node(const Document& doc, size_t entry_index, const Citation& cit,
                            const EtymologyBlock& owner) {
        GraphNode n;
        std::string rel_path = cit.loc.path;
        const std::string prefix = "entry[" + std::to_string(entry_index) + "]/";
        if (rel_path.rfind(prefix, 0) == 0) {
            rel_path = rel_path.substr(prefix.size());
        }
        n.id = entry_key(doc, entry_index) + "!" + rel_path;
        n.kind = NodeKind::EtymonUnit;
        if (cit.oref) {
            n.form = cit.oref->surface();
        } else if (cit.pref) {
            n.form = cit.pref->surface();
        }
        if (cit.lang) {
            n.lang = cit.lang;
        } else if (cit.oref && cit.oref->lang) {
            n.lang = cit.oref->lang;
        } else if (cit.pref && cit.pref->lang) {
            n.lang = cit.pref->lang;
        } else {
            // fall back to the entry's object language
            n.lang = doc.entries[entry_index].lang;
        }
        if (cit.date) {
            n.date = cit.date;
        } else if (owner.date) {
            // a dated process locates its etymons in time
            n.date = owner.date;
        }
        if (!cit.glosses.empty()) {
            n.gloss = cit.glosses.front().text;
        }
        add_node(std::move(n));
        return entry_key(doc, entry_index) + "!" + rel_path;
    }

    void walk_block(const Document& doc, size_t entry_index, const EtymologyBlock& block,
                    std::vector<std::string> path_types, const std::string& owner_node) {
        path_types.push_back(block.type_string().empty() ? "other" : block.type_string());
        const Relation rel = relation_of(block);
        std::optional<std::string> form_target;
        if (block.corresp && block.corresp->internal()) {
            form_target = block.corresp->fragment();
        }

        // nodes first: every etymon citation becomes a unit
        std::map<std::string, std::string> node_by_path;
        std::function<void(const Citation&)> visit = [&](const Citation& cit) {
            if (cit.kind == Citation::Kind::Etymon) {
                node_by_path[cit.loc.path] = etymon_node(doc, entry_index, cit, block);
            }
            for (const auto& nested : cit.nested) {
                visit(nested);
            }
        };
        for (const auto& cit : block.citations) {
            collect_concepts_from_citation(cit);
            visit(cit);
        }

        // SameAs from oRef/pRef corresps to entries that exist in-document
        std::function<void(const Citation&)> link_sameas = [&](const Citation& cit) {
            if (cit.kind == Citation::Kind::Etymon) {
                const auto it = node_by_path.find(cit.loc.path);
                if (it != node_by_path.end()) {
                    for (const auto* sf :
                         {cit.oref ? &*cit.oref : nullptr, cit.pref ? &*cit.pref : nullptr}) {
                        if (sf == nullptr || !sf->corresp) {
                            continue;
                        }
                        if (!sf->corresp->internal()) {
                            continue;  // external form references carry no node
                        }
                        size_t target_index = 0;
                        const Document* target_doc =
                            resolve_entry(doc, sf->corresp->fragment(), &target_index);
                        if (target_doc == nullptr) {
                            graph.dangling_skipped++;
                            continue;
                        }
                        const std::string to = entry_node_id(*target_doc, target_index);
                        const std::string& from = it->second;
                        const bool dup = std::any_of(
                            graph.edges.begin(), graph.edges.end(), [&](const GraphEdge& e) {
                                return e.relation == Relation::SameAs && e.from == from &&
                                       e.to == to;
                            });
                        if (!dup) {
                            add_edge(from, to, Relation::SameAs);
                        }
                    }
                }
            }
            for (const auto& nested : cit.nested) {
                link_sameas(nested);
            }
        };
        for (const auto& cit : block.citations) {
            link_sameas(cit);
        }

        // process + Precedes edges over the block's direct citations
        const auto report = lint::check_chain(block, doc);
        std::vector<const Citation*> direct;
        for (const auto& cit : block.citations) {
            if (cit.kind == Citation::Kind::Etymon) {
                direct.push_back(&cit);
            }
        }
        auto node_of = [&](const Citation* cit) { return node_by_path.at(cit->loc.path); };
        auto by_key = [&](const std::string& key) -> const Citation* {
            for (const auto* cit : direct) {
                if (cit->id && *cit->id == key) {
                    return cit;
                }
            }
            for (const auto* cit : direct) {
                if (cit->loc.path == key) {
                    return cit;
                }
            }
            return nullptr;
        };

        const bool sequenced = std::any_of(direct.begin(), direct.end(), [](const Citation* c) {
            return c->prev.has_value() || c->next.has_value();
        });

        if (!sequenced) {
            for (const auto* cit : direct) {
                add_edge(node_of(cit), owner_node, rel, block.other_type, path_types,
                         form_target);
            }
        } else if (report.order) {
            // clean chains: one process edge per component head, Precedes inside
            const auto& order = *report.order;
            for (size_t s = 0; s < report.segment_starts.size(); s++) {
                const size_t begin = report.segment_starts[s];
                const size_t end = s + 1 < report.segment_starts.size()
                                       ? report.segment_starts[s + 1]
                                       : order.size();
                if (begin >= end) {
                    continue;
                }
                const Citation* head = by_key(order[begin]);
                if (head != nullptr) {
                    add_edge(node_of(head), owner_node, rel, block.other_type, path_types,
                             form_target);
                }
                for (size_t i = begin; i + 1 < end; i++) {
                    const Citation* a = by_key(order[i]);
                    const Citation* b = by_key(order[i + 1]);
                    if (a != nullptr && b != nullptr) {
                        add_edge(node_of(a), node_of(b), Relation::Precedes);
                    }
                }
            }
        } else {
            // defective chain: heads get the process edge; Precedes only
            // between documentation-order neighbours that are defect-free
            for (const auto& head_path : report.heads) {
                const auto it = node_by_path.find(head_path);
                if (it != node_by_path.end()) {
                    add_edge(it->second, owner_node, rel, block.other_type, path_types,
                             form_target);
                }
            }
            for (size_t i = 0; i + 1 < direct.size(); i++) {
                const Citation* a = direct[i];
                const Citation* b = direct[i + 1];
                const bool clean = !report.defective_members.contains(a->loc.path) &&
                                   !report.defective_members.contains(b->loc.path);
                if (clean) {
                    add_edge(node_of(a), node_of(b), Relation::Precedes);
                }
            }
        }

        for (const auto& nested : block.nested) {
            walk_block(doc, entry_index, nested, path_types, owner_node);
        }
    }

    void walk_entry(const Document& doc, size_t entry_index) {
        const LexicalEntry& entry = doc.entries[entry_index];
        const std::string entry_id = entry_node_id(doc, entry_index);

        GraphNode head;
        head.id = entry_id;
        head.kind = NodeKind::EntryHead;
        if (!entry.forms.empty() && !entry.forms.front().orths.empty()) {
            head.form = entry.forms.front().orths.front().surface();
        } else if (entry.id) {
            head.form = entry.id;
        }
        head.lang = entry.lang;
        add_node(std::move(head));
        if (entry.id) {
            graph.anchors.emplace(*entry.id, entry_id);
        }

        // ComponentOf: form segments that point at the component's own entry
        for (const auto& form : entry.forms) {
            std::function<void(const FormBlock&)> visit_form = [&](const FormBlock& f) {
                for (const auto* sf_list : {&f.orths, &f.prons}) {
                    for (const auto& sf : *sf_list) {
                        for (const auto& seg : sf.segments) {
                            if (!seg.corresp || !seg.corresp->internal()) {
                                continue;
                            }
                            size_t target_index = 0;
                            const Document* target_doc =
                                resolve_entry(doc, seg.corresp->fragment(), &target_index);
                            if (target_doc == nullptr) {
                                graph.dangling_skipped++;
                                continue;
                            }
                            const std::string from =
                                entry_node_id(*target_doc, target_index);
                            const bool dup = std::any_of(
                                graph.edges.begin(), graph.edges.end(),
                                [&](const GraphEdge& e) {
                                    return e.relation == Relation::ComponentOf &&
                                           e.from == from && e.to == entry_id;
                                });
                            if (!dup) {
                                add_edge(from, entry_id, Relation::ComponentOf);
                            }
                        }
                    }
                }
                for (const auto& nested : f.nested) {
                    visit_form(nested);
                }
            };
            visit_form(form);
        }

        for (const auto& block : entry.etymologies) {
            walk_block(doc, entry_index, block, {}, entry_id);
        }

        for (size_t s = 0; s < entry.senses.size(); s++) {
            const SenseBlock& sense = entry.senses[s];
            const bool lod = sense.corresp && is_scheme_uri(sense.corresp->raw);
            if (lod) {
                concept_node(sense.corresp->raw);
            }
            for (const auto& u : sense.usages) {
                if (u.corresp && is_scheme_uri(u.corresp->raw)) {
                    concept_node(u.corresp->raw);
                }
            }
            if (sense.etymologies.empty() && !lod) {
                continue;
            }
            GraphNode sn;
            sn.id = entry_id + "!s" + std::to_string(s);
            sn.kind = NodeKind::SenseHead;
            sn.lang = entry.lang;
            if (!sense.definitions.empty()) {
                sn.gloss = sense.definitions.front().text;
            } else if (lod) {
                sn.gloss = last_uri_segment(sense.corresp->raw);
            }
            const std::string sense_id = sn.id;
            add_node(std::move(sn));
            add_edge(sense_id, entry_id, Relation::SenseOf);
            if (sense.id) {
                graph.anchors.emplace(*sense.id, sense_id);
            }
            for (const auto& block : sense.etymologies) {
                walk_block(doc, entry_index, block, {}, sense_id);
            }
        }
    }
};

}  // namespace

EtymGraph build_network(const std::vector<Document>& docs, bool cross_file) {
    Builder b;
    b.docs = &docs;
    b.cross_file = cross_file;
    for (const auto& doc : docs) {
        for (size_t i = 0; i < doc.entries.size(); i++) {
            b.walk_entry(doc, i);
        }
    }
    // canonical order: the graph value itself is deterministic, and a JSON
    // reload compares equal to the original
    std::sort(b.graph.nodes.begin(), b.graph.nodes.end(), node_less);
    std::sort(b.graph.edges.begin(), b.graph.edges.end(), edge_less);
    return std::move(b.graph);
}

LinearizeResult linearize(const lint::ChainReport& report, const EtymologyBlock& block) {
    LinearizeResult result;
    if (!report.order) {
        for (const auto& cit : block.citations) {
            result.citations.push_back(&cit);
        }
        result.document_order_fallback = true;
        return result;
    }
    std::vector<const Citation*> rest;
    std::vector<bool> used(block.citations.size(), false);
    auto take = [&](const std::string& key) -> const Citation* {
        for (size_t i = 0; i < block.citations.size(); i++) {
            const Citation& cit = block.citations[i];
            if (used[i]) {
                continue;
            }
            if ((cit.id && *cit.id == key) || cit.loc.path == key) {
                used[i] = true;
                return &cit;
            }
        }
        return nullptr;
    };
    for (const auto& key : *report.order) {
        if (const Citation* cit = take(key)) {
            result.citations.push_back(cit);
        }
    }
    for (size_t i = 0; i < block.citations.size(); i++) {
        if (!used[i]) {
            result.citations.push_back(&block.citations[i]);
        }
    }
    return result;
}

std::vector<DiachronyPath> trace(const EtymGraph& graph, const std::string& anchor) {
    const auto it = graph.anchors.find(anchor);
    if (it == graph.anchors.end()) {
        throw unknown_anchor_error(anchor);
    }

    // anchor node plus, for entries, the senses hanging off it
    std::vector<std::string> targets{it->second};
    for (const auto& e : graph.edges) {
        if (e.relation == Relation::SenseOf && e.to == it->second) {
            targets.push_back(e.from);
        }
    }

    std::map<std::string, std::string> precedes_next;  // from -> to
    std::map<std::string, std::string> precedes_prev;  // to -> from
    for (const auto& e : graph.edges) {
        if (e.relation == Relation::Precedes) {
            precedes_next.emplace(e.from, e.to);
            precedes_prev.emplace(e.to, e.from);
        }
    }

    std::vector<DiachronyPath> paths;
    for (const auto& target : targets) {
        for (const auto& e : graph.edges) {
            if (e.to != target || e.relation == Relation::Precedes ||
                e.relation == Relation::SenseOf || e.relation == Relation::SameAs ||
                e.relation == Relation::ComponentOf) {
                continue;
            }
            // e.from is a chain head (or a lone etymon); enumerate forward
            DiachronyPath path;
            path.anchored_entry = anchor;
            std::string cur = e.from;
            size_t guard = 0;
            while (guard++ <= graph.nodes.size()) {
                const auto next = precedes_next.find(cur);
                if (next == precedes_next.end()) {
                    break;
                }
                path.stages.push_back({cur, Relation::Precedes});
                cur = next->second;
            }
            path.stages.push_back({cur, e.relation});
            paths.push_back(std::move(path));
        }
    }
    std::stable_sort(paths.begin(), paths.end(),
                     [](const DiachronyPath& a, const DiachronyPath& b) {
                         return a.stages.front().node_id < b.stages.front().node_id;
                     });
    return paths;
}

namespace {

nlohmann::json date_json(const DateSpan& d) {
    nlohmann::json j;
    if (d.not_before) j["notBefore"] = *d.not_before;
    if (d.not_after) j["notAfter"] = *d.not_after;
    if (d.when) j["when"] = *d.when;
    if (!d.original_text.empty()) j["text"] = d.original_text;
    return j;
}

std::string format_dates(const DateSpan& d) {
    if (d.when) {
        return std::to_string(*d.when);
    }
    std::string out;
    if (d.not_before) out += std::to_string(*d.not_before);
    out += "..";
    if (d.not_after) out += std::to_string(*d.not_after);
    return out;
}

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out.push_back('\\');
        }
        out.push_back(c);
    }
    return out;
}

std::string node_label(const GraphNode& n) {
    std::string label = n.form ? *n.form : (n.gloss ? *n.gloss : (n.uri ? *n.uri : n.id));
    std::string extra;
    if (n.lang) {
        extra = n.lang->raw;
    }
    if (n.date) {
        if (!extra.empty()) extra += ", ";
        extra += format_dates(*n.date);
    }
    if (!extra.empty()) {
        label += " (" + extra + ")";
    }
    return label;
}

std::vector<const GraphNode*> sorted_nodes(const EtymGraph& g) {
    std::vector<const GraphNode*> nodes;
    for (const auto& n : g.nodes) {
        nodes.push_back(&n);
    }
    std::sort(nodes.begin(), nodes.end(),
              [](const GraphNode* a, const GraphNode* b) { return node_less(*a, *b); });
    return nodes;
}

std::vector<const GraphEdge*> sorted_edges(const EtymGraph& g) {
    std::vector<const GraphEdge*> edges;
    for (const auto& e : g.edges) {
        edges.push_back(&e);
    }
    std::sort(edges.begin(), edges.end(),
              [](const GraphEdge* a, const GraphEdge* b) { return edge_less(*a, *b); });
    return edges;
}

std::string to_dot(const EtymGraph& g) {
    std::string out = "digraph etymology {\n";
    for (const auto* n : sorted_nodes(g)) {
        out += "  \"" + dot_escape(n->id) + "\" [label=\"" + dot_escape(node_label(*n)) +
               "\" kind=\"" + std::string(node_kind_name(n->kind)) + "\"];\n";
    }
    for (const auto* e : sorted_edges(g)) {
        const std::string rel = e->relation == Relation::Other && !e->other.empty()
                                    ? e->other
                                    : std::string(relation_name(e->relation));
        out += "  \"" + dot_escape(e->from) + "\" -> \"" + dot_escape(e->to) +
               "\" [label=\"" + dot_escape(rel) + "\"];\n";
    }
    out += "}\n";
    return out;
}

std::string xml_attr_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string to_graphml(const EtymGraph& g) {
    std::string out =
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        "  <key id=\"d0\" for=\"node\" attr.name=\"kind\" attr.type=\"string\"/>\n"
        "  <key id=\"d1\" for=\"node\" attr.name=\"form\" attr.type=\"string\"/>\n"
        "  <key id=\"d2\" for=\"node\" attr.name=\"lang\" attr.type=\"string\"/>\n"
        "  <key id=\"d3\" for=\"node\" attr.name=\"date\" attr.type=\"string\"/>\n"
        "  <key id=\"d4\" for=\"node\" attr.name=\"gloss\" attr.type=\"string\"/>\n"
        "  <key id=\"d5\" for=\"node\" attr.name=\"uri\" attr.type=\"string\"/>\n"
        "  <key id=\"d6\" for=\"edge\" attr.name=\"relation\" attr.type=\"string\"/>\n"
        "  <key id=\"d7\" for=\"edge\" attr.name=\"processPath\" attr.type=\"string\"/>\n"
        "  <key id=\"d8\" for=\"edge\" attr.name=\"formTarget\" attr.type=\"string\"/>\n"
        "  <graph id=\"G\" edgedefault=\"directed\">\n";
    for (const auto* n : sorted_nodes(g)) {
        out += "    <node id=\"" + xml_attr_escape(n->id) + "\">\n";
        out += "      <data key=\"d0\">" + std::string(node_kind_name(n->kind)) + "</data>\n";
        if (n->form) out += "      <data key=\"d1\">" + xml_attr_escape(*n->form) + "</data>\n";
        if (n->lang) out += "      <data key=\"d2\">" + xml_attr_escape(n->lang->raw) + "</data>\n";
        if (n->date) out += "      <data key=\"d3\">" + format_dates(*n->date) + "</data>\n";
        if (n->gloss) out += "      <data key=\"d4\">" + xml_attr_escape(*n->gloss) + "</data>\n";
        if (n->uri) out += "      <data key=\"d5\">" + xml_attr_escape(*n->uri) + "</data>\n";
        out += "    </node>\n";
    }
    size_t edge_id = 0;
    for (const auto* e : sorted_edges(g)) {
        const std::string rel = e->relation == Relation::Other && !e->other.empty()
                                    ? e->other
                                    : std::string(relation_name(e->relation));
        out += "    <edge id=\"e" + std::to_string(edge_id++) + "\" source=\"" +
               xml_attr_escape(e->from) + "\" target=\"" + xml_attr_escape(e->to) + "\">\n";
        out += "      <data key=\"d6\">" + xml_attr_escape(rel) + "</data>\n";
        if (!e->process_path.empty()) {
            std::string pp;
            for (size_t i = 0; i < e->process_path.size(); i++) {
                if (i > 0) pp += ",";
                pp += e->process_path[i];
            }
            out += "      <data key=\"d7\">" + xml_attr_escape(pp) + "</data>\n";
        }
        if (e->form_target) {
            out += "      <data key=\"d8\">" + xml_attr_escape(*e->form_target) +
                   "</data>\n";
        }
        out += "    </edge>\n";
    }
    out += "  </graph>\n</graphml>\n";
    return out;
}

std::string to_json(const EtymGraph& g) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto* n : sorted_nodes(g)) {
        nlohmann::json j;
        j["id"] = n->id;
        j["kind"] = std::string(node_kind_name(n->kind));
        if (n->form) j["form"] = *n->form;
        if (n->lang) j["lang"] = n->lang->raw;
        if (n->date) j["date"] = date_json(*n->date);
        if (n->gloss) j["gloss"] = *n->gloss;
        if (n->uri) j["uri"] = *n->uri;
        nodes.push_back(std::move(j));
    }
    nlohmann::json edges = nlohmann::json::array();
    for (const auto* e : sorted_edges(g)) {
        nlohmann::json j;
        j["from"] = e->from;
        j["to"] = e->to;
        j["relation"] = e->relation == Relation::Other && !e->other.empty()
                            ? e->other
                            : std::string(relation_name(e->relation));
        if (!e->process_path.empty()) j["processPath"] = e->process_path;
        if (e->form_target) j["formTarget"] = *e->form_target;
        edges.push_back(std::move(j));
    }
    // fixed top-level shape; keys inside each object are sorted by nlohmann
    return "{\"nodes\":" + nodes.dump() + ",\"edges\":" + edges.dump() + "}";
}

}  // namespace

std::string export_graph(const EtymGraph& graph, ExportFormat format) {
    switch (format) {
        case ExportFormat::Dot: return to_dot(graph);
        case ExportFormat::GraphML: return to_graphml(graph);
        case ExportFormat::Json: return to_json(graph);
    }
    return {};
}

std::string node_display(const GraphNode& node) {
    std::string out = node_label(node);
    if (node.gloss && node.form) {
        out += " '" + *node.gloss + "'";
    }
    return out;
}

EtymGraph load_json(const std::string& text) {
    EtymGraph g;
    const nlohmann::json parsed = nlohmann::json::parse(text);
    for (const auto& j : parsed.at("nodes")) {
        GraphNode n;
        n.id = j.at("id").get<std::string>();
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "entry") n.kind = NodeKind::EntryHead;
        else if (kind == "sense") n.kind = NodeKind::SenseHead;
        else if (kind == "etymon") n.kind = NodeKind::EtymonUnit;
        else n.kind = NodeKind::ExternalConcept;
        if (j.contains("form")) n.form = j["form"].get<std::string>();
        if (j.contains("lang")) n.lang = bcp47::parse_tag(j["lang"].get<std::string>());
        if (j.contains("date")) {
            DateSpan d;
            const auto& dj = j["date"];
            if (dj.contains("notBefore")) d.not_before = dj["notBefore"].get<int>();
            if (dj.contains("notAfter")) d.not_after = dj["notAfter"].get<int>();
            if (dj.contains("when")) d.when = dj["when"].get<int>();
            if (dj.contains("text")) d.original_text = dj["text"].get<std::string>();
            n.date = d;
        }
        if (j.contains("gloss")) n.gloss = j["gloss"].get<std::string>();
        if (j.contains("uri")) n.uri = j["uri"].get<std::string>();
        g.nodes.push_back(std::move(n));
    }
    for (const auto& j : parsed.at("edges")) {
        GraphEdge e;
        e.from = j.at("from").get<std::string>();
        e.to = j.at("to").get<std::string>();
        const std::string rel = j.at("relation").get<std::string>();
        bool named = false;
        for (Relation r : {Relation::Inheritance, Relation::Borrowing, Relation::Metaphor,
                           Relation::Metonymy, Relation::Compounding,
                           Relation::Grammaticalization, Relation::Precedes,
                           Relation::SenseOf, Relation::ComponentOf, Relation::SameAs}) {
            if (rel == relation_name(r)) {
                e.relation = r;
                named = true;
                break;
            }
        }
        if (!named) {
            e.relation = Relation::Other;
            e.other = rel == "other" ? "" : rel;
        }
        if (j.contains("processPath")) {
            e.process_path = j["processPath"].get<std::vector<std::string>>();
        }
        if (j.contains("formTarget")) {
            e.form_target = j["formTarget"].get<std::string>();
        }
        g.edges.push_back(std::move(e));
    }
    return g;
}

}  // namespace etymograph::graph
