#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "etymograph/xml_dom.hpp"

namespace etymograph {

// Where a model node came from. Locations are metadata, not value: two parses
// of equivalent XML with different layout must compare equal, so SourceLoc
// compares equal to everything.
struct SourceLoc {
    std::string path;  // e.g. "entry[0]/etym[0]/cit[2]"
    int line = 0;
    int column = 0;

    friend bool operator==(const SourceLoc&, const SourceLoc&) { return true; }
};

enum class Severity { Error, Warning, Info };

std::string_view severity_name(Severity s);

struct Diagnostic {
    std::string rule;
    Severity severity = Severity::Error;
    int entry_index = -1;   // -1: not tied to an entry
    std::string entry_id;   // empty when the entry has no xml:id
    std::string path;
    int line = 0;
    int column = 0;
    std::string message;
    std::vector<std::string> related;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

// Deterministic order: (entry index, element path, rule id), then the rest.
bool diagnostic_less(const Diagnostic& a, const Diagnostic& b);

// Natural comparison of element paths: segment names lexicographic, indices
// numeric, so cit[10] sorts after cit[2].
int compare_paths(std::string_view a, std::string_view b);

enum class RegistryStatus { Registered, Unregistered, NotChecked };

struct LangTag {
    std::string raw;
    std::string primary_subtag;  // case-folded; full tag for grandfathered
    std::optional<std::string> script;
    std::optional<std::string> region;
    std::vector<std::string> variants;
    std::optional<std::string> private_use;
    bool well_formed = false;
    bool grandfathered = false;
    RegistryStatus registry_status = RegistryStatus::NotChecked;

    friend bool operator==(const LangTag&, const LangTag&) = default;
};

struct DateSpan {
    std::optional<int> not_before;
    std::optional<int> not_after;
    std::optional<int> when;
    std::string original_text;  // human-readable value, e.g. "IVe2"

    friend bool operator==(const DateSpan&, const DateSpan&) = default;
};

struct GrammarGroup {
    std::optional<std::string> pos;
    std::optional<std::string> gender;
    std::optional<std::string> number;
    std::optional<std::string> grammatical_case;
    std::optional<std::string> person;
    std::optional<std::string> tense;
    std::optional<std::string> mood;
    std::optional<std::string> inflection_type;
    std::vector<std::pair<std::string, std::string>> extra;  // <gram type="...">

    bool empty() const {
        return !pos && !gender && !number && !grammatical_case && !person && !tense &&
               !mood && !inflection_type && extra.empty();
    }

    friend bool operator==(const GrammarGroup&, const GrammarGroup&) = default;
};

struct CrossRef {
    std::string raw;

    bool internal() const { return !raw.empty() && raw.front() == '#'; }
    std::string fragment() const { return internal() ? raw.substr(1) : std::string(); }

    friend bool operator==(const CrossRef&, const CrossRef&) = default;
};

struct FormSegment {
    enum class Kind { Seg, Punct, Plain };

    Kind kind = Kind::Plain;
    std::string text;
    std::optional<std::string> id;       // Seg only
    std::optional<CrossRef> corresp;     // Seg only
    std::optional<std::string> ana;      // Seg only
    SourceLoc loc;

    friend bool operator==(const FormSegment&, const FormSegment&) = default;
};

struct SegmentedForm {
    enum class Kind { Orth, Pron };

    Kind kind = Kind::Orth;
    std::optional<std::string> notation;
    std::optional<LangTag> lang;      // explicit xml:lang only
    std::optional<CrossRef> corresp;  // on oRef/pRef
    std::vector<FormSegment> segments;
    std::vector<std::pair<std::string, std::string>> extra_attrs;
    SourceLoc loc;

    // Rendered surface form: concatenation of all segment texts.
    std::string surface() const;

    friend bool operator==(const SegmentedForm&, const SegmentedForm&) = default;
};

struct UsageDomain {
    std::string usage_type;
    std::string text;
    std::optional<CrossRef> corresp;
    SourceLoc loc;

    friend bool operator==(const UsageDomain&, const UsageDomain&) = default;
};

struct Gloss {
    std::string text;
    std::optional<LangTag> lang;

    friend bool operator==(const Gloss&, const Gloss&) = default;
};

struct Ref {
    std::optional<CrossRef> target;
    std::string text;
    SourceLoc loc;

    friend bool operator==(const Ref&, const Ref&) = default;
};

// Opaque preserved content: anything outside the modeled vocabulary, kept as
// its XML subtree so serialization does not drop it. Relative order within a
// container's opaque list follows the source; order against modeled siblings
// is kept only where it matters (EtymologyBlock::child_order).
struct OpaqueNode {
    xml::Node node;

    friend bool operator==(const OpaqueNode&, const OpaqueNode&) = default;
};

// One run of quoted text. <oRef> and <seg> inside <quote> mark up the
// attested form and analytic context and may nest.
struct QuoteNode {
    enum class Kind { Text, ORef, Seg };

    Kind kind = Kind::Text;
    std::string text;  // Text only
    std::vector<QuoteNode> children;
    std::optional<std::string> id;
    std::optional<std::string> ana;

    std::string plain_text() const;

    friend bool operator==(const QuoteNode&, const QuoteNode&) = default;
};

struct Quote {
    std::vector<QuoteNode> runs;

    std::string plain_text() const;

    friend bool operator==(const Quote&, const Quote&) = default;
};

struct FormBlock {
    std::optional<std::string> id;
    std::optional<std::string> form_type;  // lemma | variant | inflected | ...
    std::vector<SegmentedForm> orths;
    std::vector<SegmentedForm> prons;
    std::optional<GrammarGroup> grammar;
    std::vector<FormBlock> nested;
    std::vector<OpaqueNode> opaque;
    SourceLoc loc;

    friend bool operator==(const FormBlock&, const FormBlock&) = default;
};

struct Citation {
    enum class Kind { Etymon, Attestation, Translation, Component };

    Kind kind = Kind::Etymon;
    std::optional<std::string> id;
    std::optional<CrossRef> prev;
    std::optional<CrossRef> next;
    std::optional<LangTag> lang;
    std::optional<SegmentedForm> oref;
    std::optional<SegmentedForm> pref;
    std::optional<DateSpan> date;
    std::optional<GrammarGroup> grammar;
    std::vector<Gloss> glosses;
    std::vector<UsageDomain> usages;
    std::vector<CrossRef> sense_refs;  // <ref type="sense" corresp="..."/>
    std::optional<Quote> quote;
    std::optional<CrossRef> component_corresp;  // Component kind
    std::optional<std::string> ana;
    std::vector<std::string> notes;
    std::vector<std::string> bibls;
    std::vector<Ref> refs;
    std::optional<std::string> label;       // <lbl>
    std::optional<std::string> lang_label;  // display <lang> child
    std::vector<Citation> nested;
    std::vector<OpaqueNode> opaque;
    SourceLoc loc;

    friend bool operator==(const Citation&, const Citation&) = default;
};

enum class EtymType {
    Inheritance,
    Borrowing,
    Metaphor,
    Metonymy,
    Compounding,
    Grammaticalization,
    Other,
};

std::string_view etym_type_name(EtymType t);

struct LangLabel {
    std::string text;
    std::optional<CrossRef> corresp;

    friend bool operator==(const LangLabel&, const LangLabel&) = default;
};

struct EtymologyBlock {
    // Which list an interleaved child lives in; ordinals reconstruct the
    // source interleaving (legacy <lang>/<mentioned> runs depend on it).
    enum class ChildList { Citation, Nested, LangLabel, Label, Note, Bibl, Date, Opaque };
    struct ChildRef {
        ChildList list{};
        size_t index = 0;
        friend bool operator==(const ChildRef&, const ChildRef&) = default;
    };

    EtymType etym_type = EtymType::Other;
    std::string other_type;           // literal unrecognized @type (may be "")
    std::optional<CrossRef> corresp;  // form-targeted etymologies
    std::optional<DateSpan> date;
    std::vector<Citation> citations;       // document order
    std::vector<EtymologyBlock> nested;    // document order
    std::vector<LangLabel> lang_labels;    // <lang> children
    std::vector<std::string> labels;       // <lbl> children
    std::vector<std::string> notes;
    std::vector<std::string> bibls;
    std::vector<OpaqueNode> opaque;
    std::vector<ChildRef> child_order;
    SourceLoc loc;

    bool is_named_type() const { return etym_type != EtymType::Other; }
    std::string type_string() const;  // @type value as written back out

    friend bool operator==(const EtymologyBlock&, const EtymologyBlock&) = default;
};

struct SenseBlock {
    std::optional<std::string> id;
    std::optional<CrossRef> corresp;  // LOD sense URI
    std::vector<Gloss> definitions;
    std::vector<UsageDomain> usages;
    std::vector<Citation> translations;
    std::vector<EtymologyBlock> etymologies;
    std::vector<OpaqueNode> opaque;
    SourceLoc loc;

    friend bool operator==(const SenseBlock&, const SenseBlock&) = default;
};

struct LexicalEntry {
    std::optional<std::string> id;
    std::optional<LangTag> lang;
    std::optional<std::string> entry_type;     // e.g. "compound"
    std::optional<std::string> entry_subtype;  // e.g. "exocentric"
    std::vector<FormBlock> forms;
    std::optional<GrammarGroup> grammar;
    std::vector<SenseBlock> senses;
    std::vector<EtymologyBlock> etymologies;
    std::vector<std::pair<std::string, std::string>> extra_attrs;
    std::vector<OpaqueNode> opaque;
    SourceLoc loc;

    friend bool operator==(const LexicalEntry&, const LexicalEntry&) = default;
};

struct IdTarget {
    enum class Kind { Entry, Form, Citation, Seg, Other };

    size_t entry_index = 0;
    Kind kind = Kind::Other;
    std::string path;
    int line = 0;
    int column = 0;
};

struct DuplicateId {
    std::string id;
    IdTarget first;
    std::vector<IdTarget> duplicates;
};

struct Document {
    std::string source_name;
    std::vector<LexicalEntry> entries;
    // One binding per unique id; first occurrence wins, duplicates recorded.
    std::map<std::string, IdTarget> id_index;
    std::vector<DuplicateId> duplicate_ids;
    // Parse-stage findings (skipped content, degraded content, date errors).
    std::vector<Diagnostic> findings;

    // Value identity is the entry list; index and findings derive from it
    // and from layout that equality must not see.
    friend bool operator==(const Document& a, const Document& b) {
        return a.entries == b.entries;
    }
};

class unknown_node_error : public std::runtime_error {
public:
    explicit unknown_node_error(const std::string& path)
        : std::runtime_error("unknown node: " + path) {}
};

// Nearest explicit xml:lang at or above the node named by path ("entry[0]",
// "entry[0]/etym[0]/cit[2]/pRef", ...). Absent when no ancestor up to the
// entry carries one. Throws unknown_node_error if the path does not resolve.
std::optional<LangTag> effective_language(const std::string& node_path, const Document& doc);

struct Resolved {
    IdTarget target;
};
struct External {
    std::string uri;
};
struct Unresolved {};

using RefResolution = std::variant<Resolved, External, Unresolved>;

// Internal fragments resolve through id_index; external URIs are returned
// as-is without network access; missing ids yield Unresolved.
RefResolution resolve_ref(const CrossRef& ref, const Document& doc);

}  // namespace etymograph
