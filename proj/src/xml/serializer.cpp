#include "xml/serializer.hpp"

namespace olmap::xml {

namespace {

bool isXmlWhitespace(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool isWhitespaceOnly(const std::string& s) {
    for (char c : s) {
        if (!isXmlWhitespace(c)) return false;
    }
    return true;
}

void appendTextEscaped(std::string& out, const std::string& text) {
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            // A literal CR would be normalized away by the next parse.
            case '\r': out += "&#13;"; break;
            default: out += c;
        }
    }
}

void appendAttributeEscaped(std::string& out, const std::string& value) {
    for (char c : value) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            // Attribute-value normalization would turn these into spaces.
            case '\t': out += "&#9;"; break;
            case '\n': out += "&#10;"; break;
            case '\r': out += "&#13;"; break;
            default: out += c;
        }
    }
}

void checkComment(const std::string& text) {
    if (text.find("--") != std::string::npos || (!text.empty() && text.back() == '-')) {
        throw Error("comment text may not contain '--' or end with '-': " + text);
    }
}

void appendComment(std::string& out, const XmlComment& comment) {
    checkComment(comment.text);
    out += "<!--";
    out += comment.text;
    out += "-->";
}

void appendStartTag(std::string& out, const XmlElement& element, bool selfClose) {
    out += '<';
    out += element.name;
    for (const XmlAttribute& attr : element.attributes) {
        out += ' ';
        out += attr.name;
        out += "=\"";
        appendAttributeEscaped(out, attr.value);
        out += '"';
    }
    out += selfClose ? "/>" : ">";
}

void appendRaw(std::string& out, const XmlElement& element) {
    if (element.children.empty()) {
        appendStartTag(out, element, true);
        return;
    }
    appendStartTag(out, element, false);
    for (const XmlChild& child : element.children) {
        if (const auto* inner = std::get_if<std::unique_ptr<XmlElement>>(&child)) {
            appendRaw(out, **inner);
        } else if (const auto* textNode = std::get_if<XmlText>(&child)) {
            appendTextEscaped(out, textNode->text);
        } else {
            appendComment(out, std::get<XmlComment>(child));
        }
    }
    out += "</";
    out += element.name;
    out += '>';
}

// Pretty layout applies per element: children that are all elements or
// comments (whitespace-only text aside) go one per line, indented; anything
// holding real text is rendered raw so no whitespace leaks into content.
void appendPretty(std::string& out, const XmlElement& element, std::size_t depth) {
    const std::string indent(depth * 2, ' ');
    out += indent;
    if (element.children.empty()) {
        appendStartTag(out, element, true);
        out += '\n';
        return;
    }
    bool hasElementChild = false;
    bool hasRealText = false;
    for (const XmlChild& child : element.children) {
        if (std::holds_alternative<std::unique_ptr<XmlElement>>(child)) {
            hasElementChild = true;
        } else if (const auto* textNode = std::get_if<XmlText>(&child)) {
            if (!isWhitespaceOnly(textNode->text)) hasRealText = true;
        }
    }
    if (!hasElementChild || hasRealText) {
        appendRaw(out, element);
        out += '\n';
        return;
    }
    appendStartTag(out, element, false);
    out += '\n';
    for (const XmlChild& child : element.children) {
        if (const auto* inner = std::get_if<std::unique_ptr<XmlElement>>(&child)) {
            appendPretty(out, **inner, depth + 1);
        } else if (const auto* comment = std::get_if<XmlComment>(&child)) {
            out += std::string((depth + 1) * 2, ' ');
            appendComment(out, *comment);
            out += '\n';
        }
        // whitespace-only text was the previous formatting; it is replaced
        // by the indentation written here
    }
    out += indent;
    out += "</";
    out += element.name;
    out += ">\n";
}

}  // namespace

std::string serializeXml(const XmlDocument& doc, bool pretty) {
    if (!doc.hasRoot()) throw EmptyDocumentError();
    std::string out;
    if (doc.hasDeclaration) {
        out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    }
    for (const XmlComment& comment : doc.leadingComments) {
        appendComment(out, comment);
        out += '\n';
    }
    if (pretty) {
        appendPretty(out, *doc.root, 0);
    } else {
        appendRaw(out, *doc.root);
        out += '\n';
    }
    for (const XmlComment& comment : doc.trailingComments) {
        appendComment(out, comment);
        out += '\n';
    }
    return out;
}

std::string serializeElement(const XmlElement& element) {
    std::string out;
    appendRaw(out, element);
    return out;
}

}  // namespace olmap::xml
