/**
 * @file xml_reader.hpp
 * @brief Minimal line-tracking XML reader for description files
 */

#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dcmval::description {

struct xml_attribute {
    std::string name;
    std::string value;
    int line{0};
};

struct xml_node {
    std::string name;
    std::vector<xml_attribute> attributes;
    std::vector<xml_node> children;
    /// Concatenated character data directly inside this element.
    std::string text;
    int line{0};

    [[nodiscard]] const xml_attribute* attribute(std::string_view attr_name) const;
};

class xml_error : public std::runtime_error {
public:
    xml_error(int line, const std::string& what);
    [[nodiscard]] int line() const noexcept { return line_; }

private:
    int line_;
};

struct xml_options {
    /**
     * Elements that never have content. An unclosed start tag of one of
     * these is closed implicitly; a directly following end tag is consumed.
     */
    std::set<std::string, std::less<>> void_elements;
};

/// Parses a single-rooted document. Throws xml_error with the offending line.
[[nodiscard]] xml_node parse_xml(std::string_view text, const xml_options& options = {});

/// Escapes &, <, >, " for attribute or text output.
[[nodiscard]] std::string xml_escape(std::string_view text);

}  // namespace dcmval::description
