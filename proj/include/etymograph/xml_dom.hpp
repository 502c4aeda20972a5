#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace etymograph::xml {

// Thrown for non-well-formed input or an undecodable encoding. Parsing a
// document either yields a complete tree or this; there is no partial result.
class xml_error : public std::runtime_error {
public:
    xml_error(std::string message, int line, int column, bool encoding = false)
        : std::runtime_error(std::move(message)), line(line), column(column),
          encoding_problem(encoding) {}

    int line = 0;
    int column = 0;
    bool encoding_problem = false;
};

struct Node {
    enum class Type { Element, Text };

    Type type = Type::Element;
    std::string name;                                        // empty for Text
    std::vector<std::pair<std::string, std::string>> attrs;  // document order
    std::vector<Node> children;
    std::string text;  // Text nodes only
    int line = 0;
    int column = 0;

    bool is_element(std::string_view n) const { return type == Type::Element && name == n; }

    const std::string* attr(std::string_view name) const;

    // First child element with the given name, or nullptr.
    const Node* child(std::string_view name) const;

    // Concatenated text of all descendant Text nodes.
    std::string all_text() const;

    // Structural equality; line/column are metadata and do not participate.
    friend bool operator==(const Node& a, const Node& b) {
        return a.type == b.type && a.name == b.name && a.attrs == b.attrs &&
               a.text == b.text && a.children == b.children;
    }
};

// Parses a whole document (UTF-8 or declared encoding) into its root element.
// Comments, processing instructions and the DOCTYPE are dropped.
Node parse(std::string_view bytes, const std::string& source_name = "<memory>");

std::string escape_text(std::string_view s);
std::string escape_attr(std::string_view s);

// Verbatim serialization, mainly for preserved opaque content: no added
// whitespace, attributes in stored order.
std::string serialize(const Node& node);

}  // namespace etymograph::xml
