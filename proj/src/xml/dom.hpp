#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace olmap::xml {

class XmlElement;

struct XmlText {
    std::string text;
};

struct XmlComment {
    std::string text;
};

struct XmlAttribute {
    std::string name;
    std::string value;
};

// Element children keep their kind and order. Elements live behind unique_ptr
// so their addresses stay stable while siblings are appended; callers hold
// plain XmlElement* into the tree (container nodes, for one) across edits.
using XmlChild = std::variant<std::unique_ptr<XmlElement>, XmlText, XmlComment>;

class XmlElement {
public:
    XmlElement() = default;
    explicit XmlElement(std::string elementName) : name(std::move(elementName)) {}

    std::string name;
    std::vector<XmlAttribute> attributes;
    std::vector<XmlChild> children;

    // Attribute value, or nullptr when the attribute is absent.
    const std::string* attribute(std::string_view attributeName) const;

    // Sets or replaces an attribute, keeping first-written order.
    void setAttribute(std::string attributeName, std::string value);

    XmlElement& appendElement(std::string childName);
    void appendText(std::string textContent);
    void appendComment(std::string commentText);

    std::vector<XmlElement*> childElements();
    std::vector<const XmlElement*> childElements() const;

    XmlElement clone() const;
};

XmlChild cloneChild(const XmlChild& child);

bool operator==(const XmlElement& a, const XmlElement& b);
inline bool operator!=(const XmlElement& a, const XmlElement& b) { return !(a == b); }
bool operator==(const XmlChild& a, const XmlChild& b);
inline bool operator!=(const XmlChild& a, const XmlChild& b) { return !(a == b); }

// A document holds at most one root element. Comments around the root are
// kept; whitespace outside the root is not significant and is normalized on
// output. `hasDeclaration` controls whether serialization emits an XML
// declaration: set from the input when parsed, on by default for documents
// that start from nothing.
class XmlDocument {
public:
    bool hasDeclaration = true;
    std::vector<XmlComment> leadingComments;
    std::unique_ptr<XmlElement> root;
    std::vector<XmlComment> trailingComments;

    bool hasRoot() const { return root != nullptr; }

    // Creates the root when absent; the existing root is returned untouched
    // whatever its name, so callers must check for conflicts themselves.
    XmlElement& ensureRoot(std::string name);

    XmlDocument cloneDocument() const;
};

bool operator==(const XmlDocument& a, const XmlDocument& b);
inline bool operator!=(const XmlDocument& a, const XmlDocument& b) { return !(a == b); }

// True for names the XML grammar accepts: letters, '_', ':' and non-ASCII
// to start, plus digits, '-' and '.' afterwards.
bool isValidXmlName(std::string_view name);

}  // namespace olmap::xml
