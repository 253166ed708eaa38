#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sparql/result.hpp"
#include "support/error.hpp"

namespace olmap::tmpl {

class TemplateSyntaxError : public Error {
public:
    TemplateSyntaxError(const std::string& message, TextPosition position)
        : Error("template error at " + describePosition(position) + ": " + message),
          position_(position) {}

    TextPosition position() const { return position_; }

private:
    TextPosition position_;
};

class UnboundVariableError : public Error {
public:
    explicit UnboundVariableError(const std::string& name)
        : Error("variable '" + name + "' is not bound in this query result row"),
          name_(name) {}

    const std::string& name() const { return name_; }

private:
    std::string name_;
};

// A bound value would collide with the quote character delimiting the
// predicate value it is substituted into.
class QuoteConflictError : public Error {
public:
    explicit QuoteConflictError(const std::string& message) : Error(message) {}
};

// A bound value holds a control character XML 1.0 has no representation for
// (anything below U+0020 other than tab, newline and carriage return).
class UnrepresentableCharacterError : public Error {
public:
    explicit UnrepresentableCharacterError(const std::string& message) : Error(message) {}
};

struct Segment {
    bool isSlot = false;
    std::string text;  // literal text, or the variable name for a slot
};

// Literal text interleaved with ${name} slots. "$$" writes a literal dollar
// sign; a '$' not followed by '{' or '$' is itself literal.
struct Template {
    std::string source;
    std::vector<Segment> segments;
};

// Snippet contexts escape substituted values so they stay inert as markup;
// container contexts instead refuse values that would break out of their
// predicate quotes, since XPath has no quote escaping.
enum class EscapeMode { Xml, PathValue };

enum class Strictness { Strict, Lenient };

Template parseTemplate(std::string_view text);

// Replaces each slot with the row's value for that variable (IRI text,
// literal lexical form, or _:label). Unbound slots are an UnboundVariableError
// when strict; when lenient they become empty strings and each one appends a
// note to `warnings`. Literal template text is author-written markup and is
// never touched.
std::string instantiate(const Template& tmpl, const sparql::SolutionRow& row,
                        EscapeMode mode, Strictness strictness = Strictness::Strict,
                        std::vector<std::string>* warnings = nullptr);

// Names referenced by slots, deduplicated.
std::set<std::string> variablesOf(const Template& tmpl);

}  // namespace olmap::tmpl
