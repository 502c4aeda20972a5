#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "etymograph/model.hpp"
#include "etymograph/xml_dom.hpp"

namespace etymograph::tei {

// Raised only when a caller drives the recursive etym builder past the
// nesting bound itself; document parsing degrades instead of throwing.
class depth_exceeded_error : public std::runtime_error {
public:
    explicit depth_exceeded_error(int depth)
        : std::runtime_error("etym nesting deeper than " + std::to_string(depth)) {}
};

inline constexpr int kMaxEtymDepth = 32;

// Tolerant conversion of TEI bytes into the model. Every <entry> descendant
// of the root becomes a LexicalEntry; teiHeader and other non-entry content
// is skipped with Info findings; model-level trouble degrades to preserved
// opaque content plus findings. Throws xml::xml_error only for XML syntax or
// encoding problems.
Document parse_document(std::string_view bytes, const std::string& source_name);

// Single-element entry points, usable without a Document. Findings go to
// *findings when given.
LexicalEntry parse_entry(const xml::Node& element, std::vector<Diagnostic>* findings = nullptr);
EtymologyBlock parse_etym(const xml::Node& element, int depth = 0,
                          std::vector<Diagnostic>* findings = nullptr);
Citation parse_citation(const xml::Node& element, std::vector<Diagnostic>* findings = nullptr);

struct DateError {
    enum class Kind { BadFormat, Inverted };
    Kind kind = Kind::BadFormat;
    std::string attr;
    std::string value;

    std::string message() const;
};

// Years must be exactly four digits; notBefore must not exceed notAfter.
// Element text (e.g. "IVe2") is kept as original_text and never validated.
std::variant<DateSpan, DateError> parse_date_attrs(
    const std::vector<std::pair<std::string, std::string>>& attrs,
    const std::string& element_text = "");

// Serializes back to TEI: UTF-8, LF line endings, two-space indentation,
// normalized attribute order. parse(emit_tei(doc)) equals doc.
std::string emit_tei(const Document& doc);

// Collapses whitespace runs to single spaces and trims both ends.
std::string collapse_text(std::string_view raw);

}  // namespace etymograph::tei
