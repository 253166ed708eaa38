#pragma once

#include <string>

#include "support/error.hpp"
#include "xml/dom.hpp"

namespace olmap::xml {

class EmptyDocumentError : public Error {
public:
    EmptyDocumentError() : Error("document has no root element, nothing to write") {}
};

// Renders the document as UTF-8 XML. Text and attribute values are escaped
// so that parsing the output reproduces them byte for byte (carriage returns
// in text, and tabs/newlines in attributes, come out as character
// references). The XML declaration appears iff doc.hasDeclaration.
//
// Pretty mode indents with two spaces, but only between element-only
// siblings: whitespace-only text nodes there are treated as old formatting
// and replaced, while any element with real text content is rendered on one
// line, untouched. Non-pretty mode writes every node as-is.
std::string serializeXml(const XmlDocument& doc, bool pretty = false);

// Renders a lone element subtree (non-pretty), mainly for diagnostics.
std::string serializeElement(const XmlElement& element);

}  // namespace olmap::xml
