#include "tmpl/template.hpp"

#include <iomanip>
#include <sstream>

#include "support/text.hpp"

namespace olmap::tmpl {

namespace {

bool isVariableNameChar(char c) { return text::isAsciiAlnum(c) || c == '_'; }

void appendXmlEscaped(std::string& out, const std::string& value) {
    for (char c : value) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            // As references these survive both attribute-value and line-end
            // normalization when the instantiation is parsed.
            case '\t': out += "&#9;"; break;
            case '\n': out += "&#10;"; break;
            case '\r': out += "&#13;"; break;
            default: {
                if (static_cast<unsigned char>(c) < 0x20) {
                    std::ostringstream message;
                    message << "bound value contains control character U+00" << std::hex
                            << std::uppercase << std::setw(2) << std::setfill('0')
                            << static_cast<int>(c) << ", which XML 1.0 cannot represent";
                    throw UnrepresentableCharacterError(message.str());
                }
                out += c;
            }
        }
    }
}

// Tracks which quote character is currently open in the literal text of a
// container template; '\0' means none.
void trackQuotes(char& activeQuote, const std::string& literalText) {
    for (char c : literalText) {
        if (c == '\'' || c == '"') {
            if (activeQuote == '\0') {
                activeQuote = c;
            } else if (activeQuote == c) {
                activeQuote = '\0';
            }
        }
    }
}

void appendPathValue(std::string& out, const std::string& value, char activeQuote) {
    const bool conflict = activeQuote == '\0'
                              ? value.find_first_of("'\"") != std::string::npos
                              : value.find(activeQuote) != std::string::npos;
    if (conflict) {
        if (activeQuote == '\0') {
            throw QuoteConflictError(
                "value \"" + value +
                "\" contains a quote character but is substituted outside any "
                "quoted predicate value");
        }
        const char other = activeQuote == '\'' ? '"' : '\'';
        throw QuoteConflictError(std::string("value \"") + value + "\" contains the " +
                                 activeQuote + "-quote delimiting it; use " + other +
                                 "-quotes around this predicate value");
    }
    out += value;
}

}  // namespace

Template parseTemplate(std::string_view text) {
    Template result;
    result.source = std::string(text);
    std::string literal;
    auto flush = [&]() {
        if (!literal.empty()) {
            result.segments.push_back({false, std::move(literal)});
            literal.clear();
        }
    };
    std::size_t pos = 0;
    while (pos < text.size()) {
        const char c = text[pos];
        if (c != '$') {
            literal += c;
            ++pos;
            continue;
        }
        if (pos + 1 < text.size() && text[pos + 1] == '$') {
            literal += '$';
            pos += 2;
            continue;
        }
        if (pos + 1 >= text.size() || text[pos + 1] != '{') {
            literal += '$';
            ++pos;
            continue;
        }
        const std::size_t slotStart = pos;
        pos += 2;
        const std::size_t nameStart = pos;
        while (pos < text.size() && isVariableNameChar(text[pos])) ++pos;
        if (pos >= text.size()) {
            throw TemplateSyntaxError("unterminated '${'", text::positionAt(text, slotStart));
        }
        if (text[pos] != '}') {
            throw TemplateSyntaxError(
                "expected '}' after the variable name (names use letters, digits and '_' only)",
                text::positionAt(text, pos));
        }
        if (pos == nameStart) {
            throw TemplateSyntaxError("empty variable name in '${}'",
                                      text::positionAt(text, slotStart));
        }
        flush();
        result.segments.push_back({true, std::string(text.substr(nameStart, pos - nameStart))});
        ++pos;  // '}'
    }
    flush();
    return result;
}

std::string instantiate(const Template& tmpl, const sparql::SolutionRow& row,
                        EscapeMode mode, Strictness strictness,
                        std::vector<std::string>* warnings) {
    std::string out;
    char activeQuote = '\0';
    for (const Segment& segment : tmpl.segments) {
        if (!segment.isSlot) {
            out += segment.text;
            if (mode == EscapeMode::PathValue) trackQuotes(activeQuote, segment.text);
            continue;
        }
        const rdf::Term* bound = row.find(segment.text);
        if (bound == nullptr) {
            if (strictness == Strictness::Strict) throw UnboundVariableError(segment.text);
            if (warnings != nullptr) {
                warnings->push_back("variable '" + segment.text +
                                    "' is unbound in a result row; substituted an empty string");
            }
            continue;
        }
        const std::string value = bound->toText();
        if (mode == EscapeMode::Xml) {
            appendXmlEscaped(out, value);
        } else {
            appendPathValue(out, value, activeQuote);
        }
    }
    return out;
}

std::set<std::string> variablesOf(const Template& tmpl) {
    std::set<std::string> names;
    for (const Segment& segment : tmpl.segments) {
        if (segment.isSlot) names.insert(segment.text);
    }
    return names;
}

}  // namespace olmap::tmpl
