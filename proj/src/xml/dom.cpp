#include "xml/dom.hpp"

#include "support/text.hpp"

namespace olmap::xml {

bool isValidXmlName(std::string_view name) {
    if (name.empty()) return false;
    const auto isStart = [](char c) {
        return text::isAsciiAlpha(c) || c == '_' || c == ':' ||
               static_cast<unsigned char>(c) >= 0x80;
    };
    if (!isStart(name.front())) return false;
    for (char c : name.substr(1)) {
        if (!isStart(c) && !text::isAsciiDigit(c) && c != '-' && c != '.') return false;
    }
    return true;
}

const std::string* XmlElement::attribute(std::string_view attributeName) const {
    for (const XmlAttribute& attr : attributes) {
        if (attr.name == attributeName) return &attr.value;
    }
    return nullptr;
}

void XmlElement::setAttribute(std::string attributeName, std::string value) {
    for (XmlAttribute& attr : attributes) {
        if (attr.name == attributeName) {
            attr.value = std::move(value);
            return;
        }
    }
    attributes.push_back({std::move(attributeName), std::move(value)});
}

XmlElement& XmlElement::appendElement(std::string childName) {
    auto child = std::make_unique<XmlElement>(std::move(childName));
    XmlElement& ref = *child;
    children.emplace_back(std::move(child));
    return ref;
}

void XmlElement::appendText(std::string textContent) {
    children.emplace_back(XmlText{std::move(textContent)});
}

void XmlElement::appendComment(std::string commentText) {
    children.emplace_back(XmlComment{std::move(commentText)});
}

std::vector<XmlElement*> XmlElement::childElements() {
    std::vector<XmlElement*> found;
    for (XmlChild& child : children) {
        if (auto* element = std::get_if<std::unique_ptr<XmlElement>>(&child)) {
            found.push_back(element->get());
        }
    }
    return found;
}

std::vector<const XmlElement*> XmlElement::childElements() const {
    std::vector<const XmlElement*> found;
    for (const XmlChild& child : children) {
        if (const auto* element = std::get_if<std::unique_ptr<XmlElement>>(&child)) {
            found.push_back(element->get());
        }
    }
    return found;
}

XmlElement XmlElement::clone() const {
    XmlElement copy(name);
    copy.attributes = attributes;
    copy.children.reserve(children.size());
    for (const XmlChild& child : children) {
        copy.children.push_back(cloneChild(child));
    }
    return copy;
}

XmlChild cloneChild(const XmlChild& child) {
    if (const auto* element = std::get_if<std::unique_ptr<XmlElement>>(&child)) {
        return std::make_unique<XmlElement>((*element)->clone());
    }
    if (const auto* textNode = std::get_if<XmlText>(&child)) return *textNode;
    return std::get<XmlComment>(child);
}

bool operator==(const XmlElement& a, const XmlElement& b) {
    if (a.name != b.name) return false;
    if (a.attributes.size() != b.attributes.size()) return false;
    for (std::size_t i = 0; i < a.attributes.size(); ++i) {
        if (a.attributes[i].name != b.attributes[i].name) return false;
        if (a.attributes[i].value != b.attributes[i].value) return false;
    }
    if (a.children.size() != b.children.size()) return false;
    for (std::size_t i = 0; i < a.children.size(); ++i) {
        if (a.children[i] != b.children[i]) return false;
    }
    return true;
}

bool operator==(const XmlChild& a, const XmlChild& b) {
    if (a.index() != b.index()) return false;
    if (const auto* element = std::get_if<std::unique_ptr<XmlElement>>(&a)) {
        return **element == *std::get<std::unique_ptr<XmlElement>>(b);
    }
    if (const auto* textNode = std::get_if<XmlText>(&a)) {
        return textNode->text == std::get<XmlText>(b).text;
    }
    return std::get<XmlComment>(a).text == std::get<XmlComment>(b).text;
}

XmlElement& XmlDocument::ensureRoot(std::string name) {
    if (!root) root = std::make_unique<XmlElement>(std::move(name));
    return *root;
}

XmlDocument XmlDocument::cloneDocument() const {
    XmlDocument copy;
    copy.hasDeclaration = hasDeclaration;
    copy.leadingComments = leadingComments;
    copy.trailingComments = trailingComments;
    if (root) copy.root = std::make_unique<XmlElement>(root->clone());
    return copy;
}

bool operator==(const XmlDocument& a, const XmlDocument& b) {
    if (a.hasDeclaration != b.hasDeclaration) return false;
    if (a.leadingComments.size() != b.leadingComments.size()) return false;
    for (std::size_t i = 0; i < a.leadingComments.size(); ++i) {
        if (a.leadingComments[i].text != b.leadingComments[i].text) return false;
    }
    if (a.trailingComments.size() != b.trailingComments.size()) return false;
    for (std::size_t i = 0; i < a.trailingComments.size(); ++i) {
        if (a.trailingComments[i].text != b.trailingComments[i].text) return false;
    }
    if ((a.root == nullptr) != (b.root == nullptr)) return false;
    return a.root == nullptr || *a.root == *b.root;
}

}  // namespace olmap::xml
