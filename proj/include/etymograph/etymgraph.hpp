#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "etymograph/linter.hpp"
#include "etymograph/model.hpp"

namespace etymograph::graph {

enum class NodeKind { EntryHead, SenseHead, EtymonUnit, ExternalConcept };
enum class Relation {
    Inheritance,
    Borrowing,
    Metaphor,
    Metonymy,
    Compounding,
    Grammaticalization,
    Other,
    Precedes,
    SenseOf,
    ComponentOf,
    SameAs,
};

std::string_view node_kind_name(NodeKind k);
std::string_view relation_name(Relation r);

struct GraphNode {
    std::string id;  // synthesized: source + entry key + node path
    NodeKind kind = NodeKind::EntryHead;
    std::optional<std::string> form;
    std::optional<LangTag> lang;
    std::optional<DateSpan> date;
    std::optional<std::string> gloss;
    std::optional<std::string> uri;  // ExternalConcept only

    friend bool operator==(const GraphNode&, const GraphNode&) = default;
};

struct GraphEdge {
    std::string from;
    std::string to;
    Relation relation = Relation::Other;
    std::string other;  // Relation::Other only: the literal etym type
    // @type values of the ancestor etym blocks, outermost first
    std::vector<std::string> process_path;
    // form-targeted etymologies (<etym corresp="#form-id">): the edge stays
    // on the entry head but remembers the form
    std::optional<std::string> form_target;

    friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

struct EtymGraph {
    std::vector<GraphNode> nodes;
    std::vector<GraphEdge> edges;
    // anchor (entry/sense xml:id) -> node id
    std::map<std::string, std::string> anchors;
    // references that could not contribute an edge
    size_t dangling_skipped = 0;

    const GraphNode* find(const std::string& node_id) const;

    friend bool operator==(const EtymGraph& a, const EtymGraph& b) {
        return a.nodes == b.nodes && a.edges == b.edges;
    }
};

// Builds the lexical network. Best-effort: lint findings do not stop it;
// unresolved references increment dangling_skipped instead of producing
// dangling edges. cross_file resolves references across all documents.
EtymGraph build_network(const std::vector<Document>& docs, bool cross_file = false);

struct LinearizeResult {
    std::vector<const Citation*> citations;
    bool document_order_fallback = false;
};

// Citations of the block in chain order when the report carries one, else
// document order with the fallback flag set.
LinearizeResult linearize(const lint::ChainReport& report, const EtymologyBlock& block);

struct DiachronyStage {
    std::string node_id;
    Relation relation_to_next = Relation::Precedes;

    friend bool operator==(const DiachronyStage&, const DiachronyStage&) = default;
};

struct DiachronyPath {
    std::vector<DiachronyStage> stages;  // oldest first; last relation enters the anchor
    std::string anchored_entry;
};

class unknown_anchor_error : public std::runtime_error {
public:
    explicit unknown_anchor_error(const std::string& anchor)
        : std::runtime_error("unknown anchor: " + anchor) {}
};

// Walks process edges and Precedes chains backward from the anchor (an entry
// or sense xml:id); one path per chain head, stages oldest first.
std::vector<DiachronyPath> trace(const EtymGraph& graph, const std::string& anchor);

enum class ExportFormat { Dot, GraphML, Json };

std::string export_graph(const EtymGraph& graph, ExportFormat format);

// "form (lang, dates) 'gloss'" — for dot labels and trace output.
std::string node_display(const GraphNode& node);

// Reloads a JSON export; load(export(g)) == g for nodes and edges.
EtymGraph load_json(const std::string& text);

}  // namespace etymograph::graph
