#include "rdf/turtle.hpp"

#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "support/text.hpp"

namespace olmap::rdf {

namespace {

bool isLocalNameChar(char c) {
    return text::isAsciiAlnum(c) || c == '_' || c == '-' || c == '.' || c == ':' ||
           static_cast<unsigned char>(c) >= 0x80;
}

bool isBlankLabelChar(char c) {
    return text::isAsciiAlnum(c) || c == '_' || c == '-' || c == '.' ||
           static_cast<unsigned char>(c) >= 0x80;
}

class Parser {
public:
    Parser(std::string_view document, std::optional<std::string> baseIri)
        : text_(document), base_(std::move(baseIri)) {}

    Graph parse() {
        if (const auto bad = text::findInvalidUtf8(text_)) {
            throw EncodingError("invalid UTF-8 byte sequence",
                                text::positionAt(text_, *bad));
        }
        skipTrivia();
        while (!eof()) {
            statement();
            skipTrivia();
        }
        return std::move(graph_);
    }

private:
    [[noreturn]] void fail(const std::string& message) const {
        throw TurtleSyntaxError(message, text::positionAt(text_, pos_));
    }

    bool eof() const { return pos_ >= text_.size(); }
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }
    char take() { return text_[pos_++]; }

    void skipTrivia() {
        while (!eof()) {
            const char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                ++pos_;
            } else if (c == '#') {
                while (!eof() && peek() != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    void expect(char c, const char* what) {
        if (eof() || peek() != c) {
            fail(std::string("expected '") + c + "' " + what);
        }
        ++pos_;
    }

    bool tryKeyword(std::string_view keyword, bool caseInsensitive) {
        if (pos_ + keyword.size() > text_.size()) return false;
        for (std::size_t i = 0; i < keyword.size(); ++i) {
            char c = text_[pos_ + i];
            char k = keyword[i];
            if (caseInsensitive) {
                if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
                if (k >= 'a' && k <= 'z') k = static_cast<char>(k - 'a' + 'A');
            }
            if (c != k) return false;
        }
        // keyword must end at a token boundary
        const char after = pos_ + keyword.size() < text_.size() ? text_[pos_ + keyword.size()] : ' ';
        if (isLocalNameChar(after)) return false;
        pos_ += keyword.size();
        return true;
    }

    void statement() {
        if (peek() == '@') {
            if (tryKeyword("@prefix", false)) {
                prefixDirective(true);
                return;
            }
            if (tryKeyword("@base", false)) {
                baseDirective(true);
                return;
            }
            fail("unknown directive");
        }
        if (tryKeyword("PREFIX", true)) {
            prefixDirective(false);
            return;
        }
        if (tryKeyword("BASE", true)) {
            baseDirective(false);
            return;
        }
        triples();
        skipTrivia();
        expect('.', "after triples");
    }

    void prefixDirective(bool requireDot) {
        skipTrivia();
        std::string prefix = lexPrefixLabel();
        expect(':', "after prefix label");
        skipTrivia();
        const std::string iri = lexIriRef();
        prefixes_[prefix] = resolveAgainstBase(iri);
        if (requireDot) {
            skipTrivia();
            expect('.', "after @prefix directive");
        }
    }

    void baseDirective(bool requireDot) {
        skipTrivia();
        const std::string iri = lexIriRef();
        base_ = resolveAgainstBase(iri);
        if (requireDot) {
            skipTrivia();
            expect('.', "after @base directive");
        }
    }

    std::string lexPrefixLabel() {
        std::string out;
        while (!eof() && peek() != ':') {
            const char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') break;
            if (!(text::isAsciiAlnum(c) || c == '_' || c == '-' || c == '.' ||
                  static_cast<unsigned char>(c) >= 0x80)) {
                fail("invalid character in prefix label");
            }
            out += take();
        }
        return out;
    }

    void triples() {
        if (peek() == '[') {
            // blank node property list as subject; trailing predicate list optional
            const Term subject = blankNodePropertyList();
            skipTrivia();
            if (peek() != '.') predicateObjectList(subject);
            return;
        }
        const Term subject = subjectTerm();
        predicateObjectList(subject);
    }

    Term subjectTerm() {
        const char c = peek();
        if (c == '(') fail("collections '( ... )' are not supported");
        if (c == '"' || c == '\'' || text::isAsciiDigit(c) || c == '+' || c == '-') {
            fail("literal is not allowed as subject");
        }
        if (c == '<') return iriTerm();
        if (c == '_' && peek(1) == ':') return blankNodeLabel();
        if (eof()) fail("expected subject");
        return prefixedNameTerm();
    }

    void predicateObjectList(const Term& subject) {
        while (true) {
            skipTrivia();
            const Term predicate = verbTerm();
            objectList(subject, predicate);
            skipTrivia();
            if (peek() == ';') {
                ++pos_;
                skipTrivia();
                // a dangling ';' before '.' or ']' is allowed
                if (peek() == '.' || peek() == ']' || eof()) return;
                continue;
            }
            return;
        }
    }

    Term verbTerm() {
        if (tryKeyword("a", false)) return Term::iri(iris::rdfType);
        const char c = peek();
        if (c == '<') return iriTerm();
        if (c == '_' && peek(1) == ':') fail("blank node is not allowed as predicate");
        if (eof()) fail("expected predicate");
        return prefixedNameTerm();
    }

    void objectList(const Term& subject, const Term& predicate) {
        while (true) {
            skipTrivia();
            const Term object = objectTerm();
            graph_.insert(Triple(subject, predicate, object));
            skipTrivia();
            if (peek() == ',') {
                ++pos_;
                continue;
            }
            return;
        }
    }

    Term objectTerm() {
        const char c = peek();
        if (c == '(') fail("collections '( ... )' are not supported");
        if (c == '<') return iriTerm();
        if (c == '_' && peek(1) == ':') return blankNodeLabel();
        if (c == '[') return blankNodePropertyList();
        if (c == '"' || c == '\'') return stringLiteral();
        if (text::isAsciiDigit(c) || c == '+' || c == '-' ||
            (c == '.' && text::isAsciiDigit(peek(1)))) {
            return numericLiteral();
        }
        if (tryKeyword("true", false)) return Term::literal("true", iris::xsdBoolean);
        if (tryKeyword("false", false)) return Term::literal("false", iris::xsdBoolean);
        if (eof()) fail("expected object");
        return prefixedNameTerm();
    }

    Term blankNodePropertyList() {
        expect('[', "to open blank node property list");
        const Term node = freshBlankNode();
        skipTrivia();
        if (peek() == ']') {
            ++pos_;
            return node;
        }
        predicateObjectList(node);
        skipTrivia();
        expect(']', "to close blank node property list");
        return node;
    }

    Term blankNodeLabel() {
        pos_ += 2;  // "_:"
        std::string label;
        while (!eof() && isBlankLabelChar(peek())) label += take();
        while (!label.empty() && label.back() == '.') {
            label.pop_back();
            --pos_;  // trailing dot belongs to the statement
        }
        if (label.empty()) fail("empty blank node label");
        return namedBlankNode(label);
    }

    Term namedBlankNode(const std::string& documentLabel) {
        const auto it = namedBlanks_.find(documentLabel);
        if (it != namedBlanks_.end()) return Term::blankNode(it->second);
        std::string internal = documentLabel;
        if (usedLabels_.count(internal)) internal = freshLabel();
        usedLabels_.insert(internal);
        namedBlanks_[documentLabel] = internal;
        return Term::blankNode(internal);
    }

    Term freshBlankNode() { return Term::blankNode(freshLabelRegistered()); }

    std::string freshLabel() {
        std::string candidate;
        do {
            candidate = "a" + std::to_string(anonCounter_++);
        } while (usedLabels_.count(candidate));
        return candidate;
    }

    std::string freshLabelRegistered() {
        std::string label = freshLabel();
        usedLabels_.insert(label);
        return label;
    }

    Term iriTerm() {
        if (peek(1) == '<') fail("quoted triples '<< ... >>' are not supported");
        const std::string raw = lexIriRef();
        return makeIri(resolveAgainstBase(raw));
    }

    Term makeIri(const std::string& iri) {
        try {
            return Term::iri(iri);
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
    }

    std::string lexIriRef() {
        expect('<', "to open IRI");
        std::string out;
        while (true) {
            if (eof()) fail("unterminated IRI");
            char c = take();
            if (c == '>') break;
            if (c == '\\') {
                out += unescapeUchar();
                continue;
            }
            const auto b = static_cast<unsigned char>(c);
            if (b <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' ||
                c == '^' || c == '`') {
                --pos_;
                fail("character not allowed in IRI");
            }
            out += c;
        }
        return out;
    }

    std::string resolveAgainstBase(const std::string& iri) {
        if (text::hasIriScheme(iri)) return iri;
        if (!base_) fail("relative IRI '" + iri + "' without a base IRI");
        return text::resolveIriReference(*base_, iri);
    }

    std::string unescapeUchar() {
        // called after the backslash has been consumed
        if (eof()) fail("truncated escape sequence");
        const char kind = take();
        std::size_t digits;
        if (kind == 'u') {
            digits = 4;
        } else if (kind == 'U') {
            digits = 8;
        } else {
            --pos_;
            fail("invalid escape in IRI");
        }
        std::uint32_t cp = 0;
        for (std::size_t i = 0; i < digits; ++i) {
            if (eof()) fail("truncated \\u escape");
            const char c = take();
            cp <<= 4;
            if (c >= '0' && c <= '9')
                cp |= static_cast<std::uint32_t>(c - '0');
            else if (c >= 'a' && c <= 'f')
                cp |= static_cast<std::uint32_t>(c - 'a' + 10);
            else if (c >= 'A' && c <= 'F')
                cp |= static_cast<std::uint32_t>(c - 'A' + 10);
            else
                fail("invalid hex digit in \\u escape");
        }
        if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail("escape is not a Unicode scalar");
        std::string out;
        text::appendUtf8(out, cp);
        return out;
    }

    Term prefixedNameTerm() {
        const std::size_t start = pos_;
        std::string prefix = lexPrefixLabel();
        if (eof() || peek() != ':') {
            pos_ = start;
            fail("expected an IRI, literal or blank node");
        }
        ++pos_;
        const auto it = prefixes_.find(prefix);
        if (it == prefixes_.end()) {
            pos_ = start;
            fail("undeclared prefix '" + prefix + ":'");
        }
        std::string local;
        while (!eof()) {
            const char c = peek();
            if (c == '\\') {
                ++pos_;
                if (eof()) fail("truncated local name escape");
                const char esc = take();
                static const std::string allowed = "_~.-!$&'()*+,;=/?#@%";
                if (allowed.find(esc) == std::string::npos) {
                    fail("invalid local name escape");
                }
                local += esc;
                continue;
            }
            if (c == '%') {
                if (!std::isxdigit(static_cast<unsigned char>(peek(1))) ||
                    !std::isxdigit(static_cast<unsigned char>(peek(2)))) {
                    fail("'%' in local name must start a percent-encoded triplet");
                }
                local += take();
                local += take();
                local += take();
                continue;
            }
            if (!isLocalNameChar(c)) break;
            local += take();
        }
        while (!local.empty() && local.back() == '.') {
            local.pop_back();
            --pos_;
        }
        return makeIri(it->second + local);
    }

    Term stringLiteral() {
        const std::string lexical = lexString();
        if (peek() == '@') {
            ++pos_;
            std::string tag;
            while (!eof() && (text::isAsciiAlpha(peek()) || text::isAsciiDigit(peek()) ||
                              peek() == '-')) {
                tag += take();
            }
            if (tag.empty() || !text::isAsciiAlpha(tag[0])) fail("invalid language tag");
            return Term::langLiteral(lexical, tag);
        }
        if (peek() == '^' && peek(1) == '^') {
            pos_ += 2;
            skipTrivia();
            Term datatype = peek() == '<' ? iriTerm() : prefixedNameTerm();
            if (datatype.value() == iris::rdfLangString) {
                fail("rdf:langString requires a language tag, not ^^");
            }
            return Term::literal(lexical, datatype.value());
        }
        return Term::literal(lexical);
    }

    std::string lexString() {
        const char quote = take();
        const bool isLong = peek() == quote && peek(1) == quote;
        if (isLong) pos_ += 2;
        std::string out;
        while (true) {
            if (eof()) fail("unterminated string literal");
            char c = take();
            if (c == quote) {
                if (!isLong) return out;
                if (peek() == quote && peek(1) == quote) {
                    pos_ += 2;
                    return out;
                }
                out += c;
                continue;
            }
            if (c == '\\') {
                if (eof()) fail("truncated escape sequence");
                const char esc = peek();
                if (esc == 'u' || esc == 'U') {
                    out += unescapeUchar();
                    continue;
                }
                ++pos_;
                switch (esc) {
                    case 't': out += '\t'; break;
                    case 'b': out += '\b'; break;
                    case 'n': out += '\n'; break;
                    case 'r': out += '\r'; break;
                    case 'f': out += '\f'; break;
                    case '"': out += '"'; break;
                    case '\'': out += '\''; break;
                    case '\\': out += '\\'; break;
                    default: pos_ -= 2; fail("invalid string escape");
                }
                continue;
            }
            if (!isLong && (c == '\n' || c == '\r')) {
                --pos_;
                fail("newline in single-line string literal");
            }
            out += c;
        }
    }

    Term numericLiteral() {
        std::string lexical;
        if (peek() == '+' || peek() == '-') lexical += take();
        bool sawDigit = false;
        while (text::isAsciiDigit(peek())) {
            lexical += take();
            sawDigit = true;
        }
        bool isDecimal = false;
        if (peek() == '.' && fractionContinuesNumber()) {
            lexical += take();
            while (text::isAsciiDigit(peek())) {
                lexical += take();
                sawDigit = true;
                isDecimal = true;
            }
        }
        bool isDouble = false;
        if ((peek() == 'e' || peek() == 'E') && sawDigit) {
            lexical += take();
            if (peek() == '+' || peek() == '-') lexical += take();
            if (!text::isAsciiDigit(peek())) fail("exponent requires digits");
            while (text::isAsciiDigit(peek())) lexical += take();
            isDouble = true;
        }
        if (!sawDigit) fail("malformed numeric literal");
        if (isDouble) return Term::literal(lexical, iris::xsdDouble);
        if (isDecimal) return Term::literal(lexical, iris::xsdDecimal);
        if (!lexical.empty() && lexical.back() == '.') fail("malformed numeric literal");
        return Term::literal(lexical, iris::xsdInteger);
    }

    // Distinguishes "5.2" / "5.e0" (the dot continues the number) from
    // "5 ." where the dot ends the statement.
    bool fractionContinuesNumber() const {
        std::size_t i = pos_ + 1;
        while (i < text_.size() && text::isAsciiDigit(text_[i])) ++i;
        if (i > pos_ + 1) return true;
        return i < text_.size() && (text_[i] == 'e' || text_[i] == 'E');
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::optional<std::string> base_;
    std::map<std::string, std::string> prefixes_;
    std::map<std::string, std::string> namedBlanks_;
    std::set<std::string> usedLabels_;
    std::size_t anonCounter_ = 0;
    Graph graph_;
};

bool isBareInteger(const std::string& s) {
    std::size_t i = (s.size() > 1 && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!text::isAsciiDigit(s[i])) return false;
    }
    return true;
}

bool isBareDecimal(const std::string& s) {
    std::size_t i = (s.size() > 1 && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
    const auto dot = s.find('.', i);
    if (dot == std::string::npos || dot + 1 >= s.size()) return false;
    for (std::size_t k = i; k < s.size(); ++k) {
        if (k == dot) continue;
        if (!text::isAsciiDigit(s[k])) return false;
    }
    return true;
}

bool isBareDouble(const std::string& s) {
    const auto e = s.find_first_of("eE");
    if (e == std::string::npos || e == 0 || e + 1 >= s.size()) return false;
    std::string mantissa = s.substr(0, e);
    std::string exponent = s.substr(e + 1);
    if (!exponent.empty() && (exponent[0] == '+' || exponent[0] == '-'))
        exponent.erase(0, 1);
    if (exponent.empty()) return false;
    for (const char c : exponent) {
        if (!text::isAsciiDigit(c)) return false;
    }
    if (mantissa.empty()) return false;
    if (mantissa.find('.') != std::string::npos) {
        // "1.5e0", "1.e0" and ".5e0" are all fine
        std::size_t i = (mantissa[0] == '+' || mantissa[0] == '-') ? 1 : 0;
        bool digit = false;
        bool dot = false;
        for (; i < mantissa.size(); ++i) {
            if (mantissa[i] == '.') {
                if (dot) return false;
                dot = true;
            } else if (text::isAsciiDigit(mantissa[i])) {
                digit = true;
            } else {
                return false;
            }
        }
        return digit;
    }
    return isBareInteger(mantissa);
}

bool isSafeLocalName(const std::string& local) {
    for (std::size_t i = 0; i < local.size(); ++i) {
        const char c = local[i];
        const bool interior = text::isAsciiAlnum(c) || c == '_' ||
                              static_cast<unsigned char>(c) >= 0x80 ||
                              ((c == '-' || c == '.') && i > 0);
        if (!interior) return false;
    }
    return local.empty() || local.back() != '.';
}

std::string escapeIriRef(const std::string& iri) {
    static const char* hex = "0123456789ABCDEF";
    std::string out = "<";
    for (const char c : iri) {
        const auto b = static_cast<unsigned char>(c);
        if (b <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' ||
            c == '|' || c == '^' || c == '`' || c == '\\') {
            out += "\\u00";
            out += hex[b >> 4];
            out += hex[b & 0xF];
        } else {
            out += c;
        }
    }
    out += '>';
    return out;
}

class Writer {
public:
    Writer(const Graph& graph, const std::map<std::string, std::string>& prefixes)
        : graph_(graph), prefixes_(prefixes) {}

    std::string write() {
        relabelBlanks();
        std::ostringstream out;
        for (const auto& [prefix, iri] : prefixes_) {
            out << "@prefix " << prefix << ": " << escapeIriRef(iri) << " .\n";
        }
        const auto triples = graph_.triples();
        if (!prefixes_.empty() && !triples.empty()) out << "\n";
        // triples arrive sorted by (s, p, o); group into subject blocks
        std::size_t i = 0;
        while (i < triples.size()) {
            const Term& subject = triples[i].subject;
            out << renderTerm(subject);
            bool firstPredicate = true;
            while (i < triples.size() && triples[i].subject == subject) {
                const Term& predicate = triples[i].predicate;
                out << (firstPredicate ? " " : " ;\n    ") << renderVerb(predicate);
                bool firstObject = true;
                while (i < triples.size() && triples[i].subject == subject &&
                       triples[i].predicate == predicate) {
                    out << (firstObject ? " " : " , ") << renderTerm(triples[i].object);
                    firstObject = false;
                    ++i;
                }
                firstPredicate = false;
            }
            out << " .\n";
        }
        return out.str();
    }

private:
    // Relabels in sorted label order, zero-padded to one width, so the new
    // labels sort exactly like the old ones and reserializing a parse of the
    // output reproduces it byte for byte.
    void relabelBlanks() {
        std::set<std::string> labels;
        for (const Triple& t : graph_.triples()) {
            if (t.subject.isBlankNode()) labels.insert(t.subject.value());
            if (t.object.isBlankNode()) labels.insert(t.object.value());
        }
        if (labels.empty()) return;
        const std::size_t width = std::to_string(labels.size() - 1).size();
        std::size_t index = 0;
        for (const std::string& label : labels) {
            std::string digits = std::to_string(index++);
            blankNames_[label] = "b" + std::string(width - digits.size(), '0') + digits;
        }
    }

    std::string renderVerb(const Term& predicate) {
        if (predicate.value() == iris::rdfType) return "a";
        return renderTerm(predicate);
    }

    std::string renderTerm(const Term& term) {
        switch (term.kind()) {
            case Term::Kind::BlankNode: return "_:" + blankNames_.at(term.value());
            case Term::Kind::Iri: {
                for (const auto& [prefix, ns] : prefixes_) {
                    if (term.value().size() >= ns.size() &&
                        term.value().compare(0, ns.size(), ns) == 0) {
                        const std::string local = term.value().substr(ns.size());
                        if (isSafeLocalName(local)) return prefix + ":" + local;
                    }
                }
                return escapeIriRef(term.value());
            }
            case Term::Kind::Literal: break;
        }
        const std::string& lex = term.value();
        if (term.languageTag()) {
            return quoteTurtleString(lex) + "@" + *term.languageTag();
        }
        const std::string& dt = term.datatype();
        if (dt == iris::xsdInteger && isBareInteger(lex)) return lex;
        if (dt == iris::xsdDecimal && isBareDecimal(lex)) return lex;
        if (dt == iris::xsdDouble && isBareDouble(lex)) return lex;
        if (dt == iris::xsdBoolean && (lex == "true" || lex == "false")) return lex;
        if (dt == iris::xsdString) return quoteTurtleString(lex);
        return quoteTurtleString(lex) + "^^" + escapeIriRef(dt);
    }

    const Graph& graph_;
    const std::map<std::string, std::string>& prefixes_;
    std::map<std::string, std::string> blankNames_;
};

}  // namespace

Graph parseTurtle(std::string_view document, const std::optional<std::string>& baseIri) {
    return Parser(document, baseIri).parse();
}

std::string serializeTurtle(const Graph& graph, const std::map<std::string, std::string>& prefixes) {
    return Writer(graph, prefixes).write();
}

}  // namespace olmap::rdf
