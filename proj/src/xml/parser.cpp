#include "xml/parser.hpp"

#include <cctype>
#include <cerrno>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <utility>

#include "support/text.hpp"

namespace olmap::xml {

namespace {

bool isXmlWhitespace(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool isNameStartChar(char c) {
    return text::isAsciiAlpha(c) || c == '_' || c == ':' ||
           static_cast<unsigned char>(c) >= 0x80;
}

bool isNameChar(char c) {
    return isNameStartChar(c) || text::isAsciiDigit(c) || c == '-' || c == '.';
}

bool isWhitespaceOnly(std::string_view s) {
    for (char c : s) {
        if (!isXmlWhitespace(c)) return false;
    }
    return true;
}

// Characters the XML grammar admits: tab, line feed, carriage return, and
// everything from space upward except surrogates and the two non-characters
// at the end of the basic plane.
bool isXmlChar(std::uint32_t cp) {
    if (cp == 0x9 || cp == 0xA || cp == 0xD) return true;
    if (cp >= 0x20 && cp <= 0xD7FF) return true;
    if (cp >= 0xE000 && cp <= 0xFFFD) return true;
    return cp >= 0x10000 && cp <= 0x10FFFF;
}

// Normalizes line ends per XML 1.0: CRLF and lone CR both read as LF.
std::string normalizeLineEnds(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] == '\r') {
            out += '\n';
            if (i + 1 < raw.size() && raw[i + 1] == '\n') ++i;
        } else {
            out += raw[i];
        }
    }
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view raw) {
        if (const auto bad = text::findInvalidUtf8(raw)) {
            throw WellFormednessError("invalid UTF-8 byte", text::positionAt(raw, *bad));
        }
        // A UTF-8 byte order mark is accepted and dropped.
        if (raw.size() >= 3 && raw.substr(0, 3) == "\xEF\xBB\xBF") raw.remove_prefix(3);
        text_ = normalizeLineEnds(raw);
    }

    XmlDocument parseDocument() {
        XmlDocument doc;
        doc.hasDeclaration = tryDeclaration();
        parseMisc(doc.leadingComments);
        if (atEnd()) fail("document has no root element");
        doc.root = std::make_unique<XmlElement>(parseElement());
        parseMisc(doc.trailingComments);
        if (!atEnd()) fail("content is not allowed after the root element");
        return doc;
    }

    std::vector<XmlChild> parseFragmentNodes() {
        std::vector<XmlChild> nodes;
        parseContent(nodes, nullptr);
        return nodes;
    }

private:
    std::string text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& message) const { failAt(message, pos_); }

    [[noreturn]] void failAt(const std::string& message, std::size_t offset) const {
        throw WellFormednessError(message, text::positionAt(text_, offset));
    }

    bool atEnd() const { return pos_ >= text_.size(); }
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }
    bool lookingAt(std::string_view token) const {
        return text_.compare(pos_, token.size(), token) == 0;
    }

    void skipWhitespace() {
        while (!atEnd() && isXmlWhitespace(text_[pos_])) ++pos_;
    }

    void expect(char c, const char* what) {
        if (atEnd() || text_[pos_] != c) {
            fail(std::string("expected ") + what);
        }
        ++pos_;
    }

    // The declaration is only recognized at the very start of the input;
    // anywhere else "<?" is a processing instruction and gets rejected.
    bool tryDeclaration() {
        if (!lookingAt("<?xml")) return false;
        const char after = peek(5);
        if (!isXmlWhitespace(after) && after != '?') return false;
        pos_ += 5;
        bool sawVersion = false;
        while (true) {
            skipWhitespace();
            if (lookingAt("?>")) {
                pos_ += 2;
                break;
            }
            if (atEnd()) fail("unterminated XML declaration");
            const std::string attrName = lexName("declaration attribute name");
            skipWhitespace();
            expect('=', "'=' in XML declaration");
            skipWhitespace();
            const std::string value = lexQuotedValue();
            if (attrName == "version") {
                if (value != "1.0") fail("unsupported XML version: " + value);
                sawVersion = true;
            } else if (attrName == "encoding") {
                std::string lowered = value;
                for (char& c : lowered) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
                if (lowered != "utf-8") fail("unsupported encoding: " + value);
            } else if (attrName != "standalone") {
                fail("unexpected attribute in XML declaration: " + attrName);
            }
        }
        if (!sawVersion) fail("XML declaration is missing a version");
        return true;
    }

    // Content between the declaration, the root and end of input: whitespace
    // and comments only.
    void parseMisc(std::vector<XmlComment>& comments) {
        while (true) {
            skipWhitespace();
            if (atEnd()) return;
            if (lookingAt("<!--")) {
                comments.push_back(XmlComment{lexComment()});
                continue;
            }
            if (lookingAt("<!DOCTYPE")) fail("DOCTYPE declarations are not supported");
            if (lookingAt("<?")) fail("processing instructions are not supported");
            if (peek() == '<') return;
            fail("text content is not allowed outside the root element");
        }
    }

    XmlElement parseElement() {
        expect('<', "'<'");
        XmlElement element(lexName("element name"));
        while (true) {
            const bool spaced = skipRequiredOrNoSpace();
            if (atEnd()) fail("unterminated start tag for element '" + element.name + "'");
            if (lookingAt("/>")) {
                pos_ += 2;
                return element;
            }
            if (peek() == '>') {
                ++pos_;
                break;
            }
            if (!spaced) fail("expected whitespace before attribute");
            const std::size_t attrStart = pos_;
            const std::string attrName = lexName("attribute name");
            skipWhitespace();
            expect('=', "'=' after attribute name");
            skipWhitespace();
            std::string value = lexQuotedValue();
            if (element.attribute(attrName) != nullptr) {
                failAt("duplicate attribute '" + attrName + "'", attrStart);
            }
            element.attributes.push_back({attrName, std::move(value)});
        }
        parseContent(element.children, &element.name);
        return element;
    }

    // Distinguishes "name>" (fine) from "namefoo='x'>" (missing separator).
    bool skipRequiredOrNoSpace() {
        const std::size_t before = pos_;
        skipWhitespace();
        return pos_ > before;
    }

    // Element content, ending at the matching end tag. A null enclosingName
    // means fragment mode: content runs to end of input and stray end tags
    // are an error.
    void parseContent(std::vector<XmlChild>& children, const std::string* enclosingName) {
        std::string pendingText;
        bool haveText = false;
        auto flushText = [&]() {
            if (haveText) {
                children.emplace_back(XmlText{std::move(pendingText)});
                pendingText.clear();
                haveText = false;
            }
        };
        while (true) {
            if (atEnd()) {
                if (enclosingName != nullptr) {
                    fail("unexpected end of input inside element '" + *enclosingName + "'");
                }
                flushText();
                return;
            }
            const char c = text_[pos_];
            if (c == '<') {
                if (lookingAt("</")) {
                    if (enclosingName == nullptr) fail("end tag without a matching start tag");
                    pos_ += 2;
                    const std::size_t nameStart = pos_;
                    const std::string closing = lexName("end tag name");
                    skipWhitespace();
                    expect('>', "'>' at end of end tag");
                    if (closing != *enclosingName) {
                        failAt("mismatched end tag: expected </" + *enclosingName +
                                   ">, found </" + closing + ">",
                               nameStart);
                    }
                    flushText();
                    return;
                }
                if (lookingAt("<!--")) {
                    flushText();
                    children.emplace_back(XmlComment{lexComment()});
                    continue;
                }
                if (lookingAt("<![CDATA[")) {
                    pendingText += lexCdata();
                    haveText = true;
                    continue;
                }
                if (lookingAt("<!DOCTYPE")) fail("DOCTYPE declarations are not supported");
                if (lookingAt("<!")) fail("expected a comment or CDATA section after '<!'");
                if (lookingAt("<?")) fail("processing instructions are not supported");
                flushText();
                children.emplace_back(std::make_unique<XmlElement>(parseElement()));
                continue;
            }
            if (c == '&') {
                pendingText += lexReference();
                haveText = true;
                continue;
            }
            if (c == ']' && lookingAt("]]>")) fail("']]>' is not allowed in character data");
            pendingText += c;
            haveText = true;
            ++pos_;
        }
    }

    std::string lexName(const char* what) {
        if (atEnd() || !isNameStartChar(text_[pos_])) {
            fail(std::string("expected ") + what);
        }
        const std::size_t start = pos_;
        while (!atEnd() && isNameChar(text_[pos_])) ++pos_;
        return text_.substr(start, pos_ - start);
    }

    // Attribute (and declaration) values. Tabs and line feeds inside a value
    // read as plain spaces; characters written as references keep their exact
    // value, which is how tabs and newlines survive a round trip.
    std::string lexQuotedValue() {
        if (atEnd() || (peek() != '"' && peek() != '\'')) fail("expected a quoted value");
        const char quote = text_[pos_++];
        std::string value;
        while (true) {
            if (atEnd()) fail("unterminated attribute value");
            const char c = text_[pos_];
            if (c == quote) {
                ++pos_;
                return value;
            }
            if (c == '<') fail("'<' is not allowed in attribute values");
            if (c == '&') {
                value += lexReference();
                continue;
            }
            value += (c == '\t' || c == '\n') ? ' ' : c;
            ++pos_;
        }
    }

    std::string lexComment() {
        const std::size_t start = pos_;
        pos_ += 4;  // <!--
        const std::size_t textStart = pos_;
        // The grammar bans "--" inside comments, so the first "--" must be
        // the start of the terminator.
        const std::size_t dashes = text_.find("--", pos_);
        if (dashes == std::string::npos || dashes + 2 >= text_.size()) {
            failAt("unterminated comment", start);
        }
        if (text_[dashes + 2] != '>') {
            failAt("'--' is not allowed inside comments", dashes);
        }
        pos_ = dashes + 3;
        return text_.substr(textStart, dashes - textStart);
    }

    std::string lexCdata() {
        const std::size_t start = pos_;
        pos_ += 9;  // <![CDATA[
        const std::size_t end = text_.find("]]>", pos_);
        if (end == std::string::npos) failAt("unterminated CDATA section", start);
        std::string content = text_.substr(pos_, end - pos_);
        pos_ = end + 3;
        return content;
    }

    std::string lexReference() {
        const std::size_t start = pos_;
        ++pos_;  // &
        if (peek() == '#') {
            ++pos_;
            std::uint32_t cp = 0;
            bool any = false;
            if (peek() == 'x' || peek() == 'X') {
                ++pos_;
                while (!atEnd() && std::isxdigit(static_cast<unsigned char>(peek()))) {
                    const char d = text_[pos_++];
                    const std::uint32_t digit =
                        text::isAsciiDigit(d) ? static_cast<std::uint32_t>(d - '0')
                                              : static_cast<std::uint32_t>(std::tolower(d) - 'a' + 10);
                    cp = cp * 16 + digit;
                    if (cp > 0x10FFFF) failAt("character reference out of range", start);
                    any = true;
                }
            } else {
                while (!atEnd() && text::isAsciiDigit(peek())) {
                    cp = cp * 10 + static_cast<std::uint32_t>(text_[pos_++] - '0');
                    if (cp > 0x10FFFF) failAt("character reference out of range", start);
                    any = true;
                }
            }
            if (!any) failAt("malformed character reference", start);
            if (atEnd() || text_[pos_] != ';') failAt("character reference is missing ';'", start);
            ++pos_;
            if (!isXmlChar(cp) || (cp >= 0xD800 && cp <= 0xDFFF)) {
                failAt("character reference out of range", start);
            }
            std::string out;
            text::appendUtf8(out, cp);
            return out;
        }
        const std::size_t nameStart = pos_;
        while (!atEnd() && text_[pos_] != ';' && !isXmlWhitespace(text_[pos_]) &&
               text_[pos_] != '&' && text_[pos_] != '<') {
            ++pos_;
        }
        if (atEnd() || text_[pos_] != ';') failAt("entity reference is missing ';'", start);
        const std::string name = text_.substr(nameStart, pos_ - nameStart);
        ++pos_;
        if (name == "lt") return "<";
        if (name == "gt") return ">";
        if (name == "amp") return "&";
        if (name == "apos") return "'";
        if (name == "quot") return "\"";
        failAt("unknown entity '" + name + "' (no DTD support)", start);
    }
};

}  // namespace

XmlDocument parseXml(std::string_view text) { return Parser(text).parseDocument(); }

std::vector<XmlChild> parseFragment(std::string_view text) {
    return Parser(text).parseFragmentNodes();
}

XmlDocument openOrCreate(const std::string& path) {
    namespace fs = std::filesystem;
    std::error_code ec;
    const fs::file_status status = fs::status(path, ec);
    if (status.type() == fs::file_type::not_found) {
        return XmlDocument{};
    }
    if (ec) {
        throw IoError("cannot access '" + path + "': " + ec.message());
    }
    if (fs::is_directory(status)) {
        throw IoError("cannot use '" + path + "' as an output document: it is a directory");
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read '" + path + "': " + std::strerror(errno));
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw IoError("cannot read '" + path + "': " + std::strerror(errno));
    }
    const std::string content = buffer.str();
    if (isWhitespaceOnly(content)) {
        return XmlDocument{};
    }
    return parseXml(content);
}

}  // namespace olmap::xml
