#include "etymograph/xml_dom.hpp"

#include <expat.h>

#include <cstring>

namespace etymograph::xml {

const std::string* Node::attr(std::string_view name) const {
    for (const auto& [k, v] : attrs) {
        if (k == name) {
            return &v;
        }
    }
    return nullptr;
}

const Node* Node::child(std::string_view name) const {
    for (const auto& c : children) {
        if (c.is_element(name)) {
            return &c;
        }
    }
    return nullptr;
}

std::string Node::all_text() const {
    if (type == Type::Text) {
        return text;
    }
    std::string out;
    for (const auto& c : children) {
        out += c.all_text();
    }
    return out;
}

namespace {

struct ParseState {
    Node root;
    std::vector<Node*> stack;
    bool seen_root = false;

    Node& top() { return *stack.back(); }
};

void start_element(void* user, const XML_Char* name, const XML_Char** attrs) {
    auto* state = static_cast<ParseState*>(XML_GetUserData(static_cast<XML_Parser>(user)));
    XML_Parser parser = static_cast<XML_Parser>(user);

    Node node;
    node.type = Node::Type::Element;
    node.name = name;
    node.line = static_cast<int>(XML_GetCurrentLineNumber(parser));
    node.column = static_cast<int>(XML_GetCurrentColumnNumber(parser)) + 1;
    for (int i = 0; attrs[i] != nullptr; i += 2) {
        node.attrs.emplace_back(attrs[i], attrs[i + 1]);
    }

    if (state->stack.empty()) {
        state->root = std::move(node);
        state->stack.push_back(&state->root);
        state->seen_root = true;
    } else {
        state->top().children.push_back(std::move(node));
        state->stack.push_back(&state->top().children.back());
    }
}

void end_element(void* user, const XML_Char*) {
    auto* state = static_cast<ParseState*>(XML_GetUserData(static_cast<XML_Parser>(user)));
    state->stack.pop_back();
}

void character_data(void* user, const XML_Char* data, int len) {
    auto* state = static_cast<ParseState*>(XML_GetUserData(static_cast<XML_Parser>(user)));
    if (state->stack.empty()) {
        return;  // whitespace outside the root
    }
    XML_Parser parser = static_cast<XML_Parser>(user);
    auto& children = state->top().children;
    if (!children.empty() && children.back().type == Node::Type::Text) {
        children.back().text.append(data, static_cast<size_t>(len));
        return;
    }
    Node node;
    node.type = Node::Type::Text;
    node.text.assign(data, static_cast<size_t>(len));
    node.line = static_cast<int>(XML_GetCurrentLineNumber(parser));
    node.column = static_cast<int>(XML_GetCurrentColumnNumber(parser)) + 1;
    children.push_back(std::move(node));
}

}  // namespace

Node parse(std::string_view bytes, const std::string& source_name) {
    XML_Parser parser = XML_ParserCreate(nullptr);
    if (parser == nullptr) {
        throw xml_error(source_name + ": could not create XML parser", 0, 0);
    }

    ParseState state;
    // The parser itself is the handler argument so handlers can query position.
    XML_UseParserAsHandlerArg(parser);
    XML_SetUserData(parser, &state);
    XML_SetElementHandler(parser, start_element, end_element);
    XML_SetCharacterDataHandler(parser, character_data);

    const XML_Status status =
        XML_Parse(parser, bytes.data(), static_cast<int>(bytes.size()), /*isFinal=*/1);
    if (status != XML_STATUS_OK) {
        const XML_Error code = XML_GetErrorCode(parser);
        const int line = static_cast<int>(XML_GetCurrentLineNumber(parser));
        const int col = static_cast<int>(XML_GetCurrentColumnNumber(parser)) + 1;
        const bool encoding = code == XML_ERROR_UNKNOWN_ENCODING ||
                              code == XML_ERROR_INCORRECT_ENCODING ||
                              code == XML_ERROR_PARTIAL_CHAR;
        std::string message = source_name + ":" + std::to_string(line) + ":" +
                              std::to_string(col) + ": " + XML_ErrorString(code);
        XML_ParserFree(parser);
        throw xml_error(std::move(message), line, col, encoding);
    }
    XML_ParserFree(parser);

    if (!state.seen_root) {
        throw xml_error(source_name + ": no root element", 0, 0);
    }
    return std::move(state.root);
}

std::string escape_text(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string escape_attr(std::string_view s) {
    std::string out;
    out.reserve(s.size());
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

std::string serialize(const Node& node) {
    if (node.type == Node::Type::Text) {
        return escape_text(node.text);
    }
    std::string out = "<" + node.name;
    for (const auto& [k, v] : node.attrs) {
        out += " " + k + "=\"" + escape_attr(v) + "\"";
    }
    if (node.children.empty()) {
        out += "/>";
        return out;
    }
    out += ">";
    for (const auto& c : node.children) {
        out += serialize(c);
    }
    out += "</" + node.name + ">";
    return out;
}

}  // namespace etymograph::xml
