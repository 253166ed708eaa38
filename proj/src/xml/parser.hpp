#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "support/error.hpp"
#include "xml/dom.hpp"

namespace olmap::xml {

class WellFormednessError : public Error {
public:
    WellFormednessError(const std::string& message, TextPosition position)
        : Error("XML error at " + describePosition(position) + ": " + message),
          position_(position) {}

    TextPosition position() const { return position_; }

private:
    TextPosition position_;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& message) : Error(message) {}
};

// Parses a complete document. Comments and whitespace-only text nodes are
// kept so an untouched document serializes back to equivalent XML. CDATA
// sections become ordinary text; adjacent text runs coalesce into one node.
// Line ends are normalized to '\n' and attribute values are whitespace-
// normalized, both per XML 1.0 (character references escape normalization).
// DOCTYPE declarations and processing instructions are rejected with an
// error naming the construct; input must be UTF-8.
XmlDocument parseXml(std::string_view text);

// Parses element content (elements, text, comments) with no enclosing root,
// as needed for snippet instantiations. All top-level nodes are returned in
// order; the same well-formedness rules apply.
std::vector<XmlChild> parseFragment(std::string_view text);

// Opens the output document when the file exists, otherwise starts an empty
// one. A present-but-blank file counts as newly created. Directories and
// unreadable files raise IoError; a corrupt XML file raises
// WellFormednessError.
XmlDocument openOrCreate(const std::string& path);

}  // namespace olmap::xml
