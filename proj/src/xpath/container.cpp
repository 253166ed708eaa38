#include "xpath/container.hpp"

#include "support/text.hpp"

namespace olmap::xpath {

namespace {

class PathParser {
public:
    explicit PathParser(std::string_view text) : text_(text) {}

    ContainerPath parse() {
        if (text_.empty()) fail("empty container path");
        if (peek() != '/') fail("container path must be absolute (start with '/')");
        ContainerPath path;
        while (pos_ < text_.size()) {
            ++pos_;  // '/'
            if (peek() == '/') throw UnsupportedXPath("descendant axis ('//')");
            path.steps.push_back(step());
        }
        if (path.steps.empty()) fail("expected an element name");
        return path;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& message) const {
        throw PathSyntaxError(message, pos_ + 1);
    }

    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }

    void skipSpaces() {
        while (peek() == ' ') ++pos_;
    }

    // Runs to the next structural character; validity is checked afterwards
    // so constructs like child::x or text() can be named in errors.
    std::string_view scanToken() {
        const std::size_t start = pos_;
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '/' || c == '[' || c == ']' || c == '=' || c == '!' || c == '(' ||
                c == ' ' || c == '\'' || c == '"') {
                break;
            }
            ++pos_;
        }
        return text_.substr(start, pos_ - start);
    }

    Step step() {
        if (peek() == '@') throw UnsupportedXPath("attribute selection as a path step");
        if (peek() == '*') throw UnsupportedXPath("wildcard step ('*')");
        if (peek() == '.') throw UnsupportedXPath("'.' and '..' path steps");
        Step result;
        const std::size_t nameColumn = pos_ + 1;
        const std::string_view name = scanToken();
        if (!name.empty() && peek() == '(') {
            throw UnsupportedXPath("functions ('" + std::string(name) + "()')");
        }
        if (name.find("::") != std::string_view::npos) {
            throw UnsupportedXPath("axes ('" + std::string(name.substr(0, name.find("::"))) +
                                   "::')");
        }
        if (name.empty()) fail("expected an element name");
        if (!xml::isValidXmlName(name)) {
            throw PathSyntaxError("invalid element name '" + std::string(name) + "'",
                                  nameColumn);
        }
        result.elementName = std::string(name);
        while (peek() == '[') {
            result.predicates.push_back(predicate(result));
        }
        if (pos_ < text_.size() && peek() != '/') {
            fail(std::string("unexpected character '") + peek() + "'");
        }
        return result;
    }

    AttrEquals predicate(const Step& owner) {
        ++pos_;  // '['
        skipSpaces();
        if (text::isAsciiDigit(peek())) throw UnsupportedXPath("positional predicates ('[1]')");
        if (peek() != '@') {
            const std::string_view token = scanToken();
            if (peek() == '(') {
                throw UnsupportedXPath("functions ('" + std::string(token) + "()')");
            }
            throw UnsupportedXPath("non-attribute predicates (only [@attr='value'] is supported)");
        }
        ++pos_;  // '@'
        const std::size_t nameColumn = pos_ + 1;
        const std::string_view name = scanToken();
        if (name.empty()) fail("expected an attribute name after '@'");
        if (!xml::isValidXmlName(name)) {
            throw PathSyntaxError("invalid attribute name '" + std::string(name) + "'",
                                  nameColumn);
        }
        skipSpaces();
        if (peek() == ']') throw UnsupportedXPath("attribute presence predicates ('[@attr]')");
        if (peek() == '!' && peek(1) == '=') {
            throw UnsupportedXPath("attribute inequality predicates ('[@attr!=...]')");
        }
        if (peek() != '=') fail("expected '=' after the attribute name");
        ++pos_;
        skipSpaces();
        const char quote = peek();
        if (quote != '\'' && quote != '"') fail("expected a quoted attribute value");
        ++pos_;
        const std::size_t valueStart = pos_;
        const std::size_t end = text_.find(quote, pos_);
        if (end == std::string_view::npos) {
            throw PathSyntaxError("unterminated attribute value", valueStart);
        }
        AttrEquals condition{std::string(name), std::string(text_.substr(pos_, end - pos_))};
        pos_ = end + 1;
        skipSpaces();
        if (peek() != ']') fail("expected ']' after the attribute value");
        ++pos_;
        for (const AttrEquals& existing : owner.predicates) {
            if (existing.attribute == condition.attribute) {
                throw PathSyntaxError("duplicate predicate attribute '" + condition.attribute +
                                          "' in one step",
                                      nameColumn);
            }
        }
        return condition;
    }
};

bool matches(const xml::XmlElement& element, const Step& step) {
    if (element.name != step.elementName) return false;
    for (const AttrEquals& predicate : step.predicates) {
        const std::string* value = element.attribute(predicate.attribute);
        if (value == nullptr || *value != predicate.value) return false;
    }
    return true;
}

std::string describeStep(const Step& step) {
    std::string out = "/" + step.elementName;
    for (const AttrEquals& predicate : step.predicates) {
        out += "[@" + predicate.attribute + "='" + predicate.value + "']";
    }
    return out;
}

xml::XmlElement& createUnder(xml::XmlElement& parent, const Step& step) {
    xml::XmlElement& child = parent.appendElement(step.elementName);
    for (const AttrEquals& predicate : step.predicates) {
        child.setAttribute(predicate.attribute, predicate.value);
    }
    return child;
}

}  // namespace

ResolveResult resolveOrCreate(xml::XmlDocument& doc, const ContainerPath& path) {
    if (path.steps.empty()) throw PathSyntaxError("empty container path", 1);
    ResolveResult result;
    const Step& rootStep = path.steps.front();
    if (!doc.hasRoot()) {
        xml::XmlElement& root = doc.ensureRoot(rootStep.elementName);
        for (const AttrEquals& predicate : rootStep.predicates) {
            root.setAttribute(predicate.attribute, predicate.value);
        }
        ++result.created;
    } else if (doc.root->name != rootStep.elementName) {
        throw RootConflictError("container path starts with " + describeStep(rootStep) +
                                " but the document root is <" + doc.root->name + ">");
    } else if (!matches(*doc.root, rootStep)) {
        throw RootConflictError("the document root <" + doc.root->name +
                                "> does not satisfy " + describeStep(rootStep) +
                                " and a document can only have one root");
    }
    std::vector<xml::XmlElement*> frontier = {doc.root.get()};
    for (std::size_t i = 1; i < path.steps.size(); ++i) {
        const Step& step = path.steps[i];
        std::vector<xml::XmlElement*> next;
        for (xml::XmlElement* parent : frontier) {
            for (xml::XmlElement* child : parent->childElements()) {
                if (matches(*child, step)) next.push_back(child);
            }
        }
        if (next.empty()) {
            next.push_back(&createUnder(*frontier.front(), step));
            ++result.created;
        }
        frontier = std::move(next);
    }
    result.nodes = std::move(frontier);
    return result;
}

ContainerPath parseContainer(std::string_view text) { return PathParser(text).parse(); }

}  // namespace olmap::xpath
