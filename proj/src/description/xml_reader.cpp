/**
 * @file xml_reader.cpp
 * @brief Recursive-descent XML reader with line numbers
 */

#include "dcmval/description/xml_reader.hpp"

#include <cctype>

namespace dcmval::description {

const xml_attribute* xml_node::attribute(std::string_view attr_name) const {
    for (const auto& a : attributes) {
        if (a.name == attr_name) {
            return &a;
        }
    }
    return nullptr;
}

xml_error::xml_error(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

bool is_name_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':';
}

bool is_name_char(char c) {
    return is_name_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.';
}

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

class parser {
public:
    parser(std::string_view text, const xml_options& options) : s_(text), options_(options) {
        if (s_.starts_with("\xEF\xBB\xBF")) {
            pos_ = 3;
        }
    }

    xml_node parse_document() {
        skip_misc();
        if (at_end()) {
            throw xml_error(line_, "document has no root element");
        }
        if (peek() != '<') {
            throw xml_error(line_, "text before the root element");
        }
        xml_node root = parse_element();
        skip_misc();
        if (!at_end()) {
            throw xml_error(line_, peek() == '<' ? "more than one root element"
                                                 : "text after the root element");
        }
        return root;
    }

private:
    [[nodiscard]] bool at_end() const { return pos_ >= s_.size(); }
    [[nodiscard]] char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < s_.size() ? s_[pos_ + ahead] : '\0';
    }
    [[nodiscard]] bool looking_at(std::string_view lit) const {
        return s_.substr(pos_).starts_with(lit);
    }

    void advance(std::size_t n = 1) {
        for (std::size_t i = 0; i < n && pos_ < s_.size(); ++i) {
            if (s_[pos_] == '\n') {
                ++line_;
            }
            ++pos_;
        }
    }

    void skip_space() {
        while (!at_end() && is_space(peek())) {
            advance();
        }
    }

    void skip_until(std::string_view terminator, const char* construct) {
        const int start = line_;
        while (!at_end() && !looking_at(terminator)) {
            advance();
        }
        if (at_end()) {
            throw xml_error(start, std::string("unterminated ") + construct);
        }
        advance(terminator.size());
    }

    /// Whitespace, comments, processing instructions and DOCTYPE.
    void skip_misc() {
        for (;;) {
            skip_space();
            if (looking_at("<!--")) {
                skip_until("-->", "comment");
            } else if (looking_at("<?")) {
                skip_until("?>", "processing instruction");
            } else if (looking_at("<!DOCTYPE")) {
                skip_until(">", "DOCTYPE");
            } else {
                return;
            }
        }
    }

    std::string parse_name() {
        if (!is_name_start(peek())) {
            throw xml_error(line_, "expected a name");
        }
        const auto start = pos_;
        while (!at_end() && is_name_char(peek())) {
            advance();
        }
        return std::string(s_.substr(start, pos_ - start));
    }

    std::string decode_entities(std::string_view raw, int line) const {
        std::string out;
        out.reserve(raw.size());
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (raw[i] != '&') {
                out.push_back(raw[i]);
                continue;
            }
            const auto semi = raw.find(';', i);
            if (semi == std::string_view::npos) {
                throw xml_error(line, "unterminated entity reference");
            }
            const auto ent = raw.substr(i + 1, semi - i - 1);
            if (ent == "lt") {
                out.push_back('<');
            } else if (ent == "gt") {
                out.push_back('>');
            } else if (ent == "amp") {
                out.push_back('&');
            } else if (ent == "quot") {
                out.push_back('"');
            } else if (ent == "apos") {
                out.push_back('\'');
            } else if (ent.starts_with("#")) {
                unsigned long cp = 0;
                try {
                    cp = ent.starts_with("#x") ? std::stoul(std::string(ent.substr(2)), nullptr, 16)
                                               : std::stoul(std::string(ent.substr(1)));
                } catch (const std::exception&) {
                    throw xml_error(line, "bad character reference &" + std::string(ent) + ";");
                }
                if (cp > 0xFF) {
                    throw xml_error(line, "character reference outside single-byte range");
                }
                out.push_back(static_cast<char>(cp));
            } else {
                throw xml_error(line, "unknown entity &" + std::string(ent) + ";");
            }
            i = semi;
        }
        return out;
    }

    xml_attribute parse_attribute() {
        xml_attribute a;
        a.line = line_;
        a.name = parse_name();
        skip_space();
        if (peek() != '=') {
            throw xml_error(line_, "attribute '" + a.name + "' lacks '='");
        }
        advance();
        skip_space();
        const char quote = peek();
        if (quote != '"' && quote != '\'') {
            throw xml_error(line_, "attribute '" + a.name + "' value must be quoted");
        }
        advance();
        const auto start = pos_;
        while (!at_end() && peek() != quote) {
            if (peek() == '<') {
                throw xml_error(line_, "'<' inside attribute value");
            }
            advance();
        }
        if (at_end()) {
            throw xml_error(a.line, "unterminated attribute value");
        }
        a.value = decode_entities(s_.substr(start, pos_ - start), a.line);
        advance();
        return a;
    }

    xml_node parse_element() {
        xml_node node;
        node.line = line_;
        advance();  // '<'
        node.name = parse_name();
        for (;;) {
            const bool had_space = is_space(peek());
            skip_space();
            if (at_end()) {
                throw xml_error(node.line, "unterminated start tag <" + node.name + ">");
            }
            if (looking_at("/>")) {
                advance(2);
                return node;
            }
            if (peek() == '>') {
                advance();
                break;
            }
            if (!had_space) {
                throw xml_error(line_, "expected whitespace between attributes");
            }
            auto attr = parse_attribute();
            if (node.attribute(attr.name) != nullptr) {
                throw xml_error(attr.line, "duplicate attribute '" + attr.name + "'");
            }
            node.attributes.push_back(std::move(attr));
        }

        if (options_.void_elements.contains(node.name)) {
            const auto save_pos = pos_;
            const auto save_line = line_;
            skip_space();
            const std::string close = "</" + node.name;
            if (looking_at(close)) {
                advance(close.size());
                skip_space();
                if (peek() != '>') {
                    throw xml_error(line_, "malformed end tag </" + node.name + ">");
                }
                advance();
            } else {
                pos_ = save_pos;
                line_ = save_line;
            }
            return node;
        }

        parse_content(node);
        return node;
    }

    void parse_content(xml_node& node) {
        for (;;) {
            if (at_end()) {
                throw xml_error(node.line, "element <" + node.name + "> is never closed");
            }
            if (looking_at("</")) {
                advance(2);
                const int end_line = line_;
                const auto name = parse_name();
                skip_space();
                if (peek() != '>') {
                    throw xml_error(end_line, "malformed end tag </" + name + ">");
                }
                advance();
                if (name != node.name) {
                    throw xml_error(end_line, "end tag </" + name + "> does not match <" +
                                                  node.name + "> opened on line " +
                                                  std::to_string(node.line));
                }
                return;
            }
            if (looking_at("<!--")) {
                skip_until("-->", "comment");
            } else if (looking_at("<![CDATA[")) {
                advance(9);
                const auto start = pos_;
                skip_until("]]>", "CDATA section");
                node.text += s_.substr(start, pos_ - start - 3);
            } else if (looking_at("<?")) {
                skip_until("?>", "processing instruction");
            } else if (peek() == '<') {
                node.children.push_back(parse_element());
            } else {
                const int text_line = line_;
                const auto start = pos_;
                while (!at_end() && peek() != '<') {
                    advance();
                }
                node.text += decode_entities(s_.substr(start, pos_ - start), text_line);
            }
        }
    }

    std::string_view s_;
    const xml_options& options_;
    std::size_t pos_{0};
    int line_{1};
};

}  // namespace

xml_node parse_xml(std::string_view text, const xml_options& options) {
    return parser(text, options).parse_document();
}

std::string xml_escape(std::string_view text) {
    std::string out;
    for (char c : text) {
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

}  // namespace dcmval::description
