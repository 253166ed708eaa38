#include "sparql/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "support/text.hpp"

namespace olmap::sparql {

namespace {

bool isWordChar(char c) {
    return text::isAsciiAlnum(c) || c == '_' || c == '-' || c == '.' || c == ':' ||
           static_cast<unsigned char>(c) >= 0x80;
}

bool isVarChar(char c) { return text::isAsciiAlnum(c) || c == '_'; }

void collectVariables(const GroupPattern& group, std::vector<std::string>& out,
                      std::set<std::string>& seen) {
    auto add = [&](const PatternTerm& t) {
        if (const auto* v = std::get_if<Variable>(&t); v && seen.insert(v->name).second) {
            out.push_back(v->name);
        }
    };
    for (const TriplePattern& tp : group.triplePatterns) {
        add(tp.subject);
        add(tp.predicate);
        add(tp.object);
    }
    for (const GroupPattern& opt : group.optionals) collectVariables(opt, out, seen);
}

class Parser {
public:
    explicit Parser(std::string_view textView) : text_(textView) {}

    SparqlQuery parse() {
        if (const auto bad = text::findInvalidUtf8(text_)) {
            throw SparqlSyntaxError("query is not valid UTF-8", text::positionAt(text_, *bad));
        }
        prologue();
        selectClause();
        skipTrivia();
        if (tryKeyword("FROM")) throw UnsupportedFeatureError("FROM");
        tryKeyword("WHERE");
        skipTrivia();
        expect('{', "to open the WHERE group");
        query_.where = group();
        expect('}', "to close the WHERE group");
        modifiers();
        skipTrivia();
        if (!eof()) fail("unexpected trailing content");
        finishProjection();
        return std::move(query_);
    }

private:
    [[noreturn]] void fail(const std::string& message) const {
        throw SparqlSyntaxError(message, text::positionAt(text_, pos_));
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
        skipTrivia();
        if (eof() || peek() != c) fail(std::string("expected '") + c + "' " + what);
        ++pos_;
    }

    bool tryKeyword(std::string_view keyword) {
        skipTrivia();
        if (pos_ + keyword.size() > text_.size()) return false;
        for (std::size_t i = 0; i < keyword.size(); ++i) {
            if (std::toupper(static_cast<unsigned char>(text_[pos_ + i])) != keyword[i]) {
                return false;
            }
        }
        const char after = pos_ + keyword.size() < text_.size() ? text_[pos_ + keyword.size()] : ' ';
        if (isWordChar(after)) return false;
        pos_ += keyword.size();
        return true;
    }

    void prologue() {
        while (true) {
            if (tryKeyword("PREFIX")) {
                skipTrivia();
                std::string label;
                while (!eof() && peek() != ':') {
                    const char c = peek();
                    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') break;
                    label += take();
                }
                expect(':', "after prefix label");
                skipTrivia();
                const std::string iri = lexIriRef();
                if (!text::hasIriScheme(iri)) fail("prefix IRI must be absolute: <" + iri + ">");
                query_.prefixes[label] = iri;
                continue;
            }
            if (tryKeyword("BASE")) throw UnsupportedFeatureError("BASE");
            break;
        }
    }

    void selectClause() {
        for (const char* form : {"CONSTRUCT", "ASK", "DESCRIBE", "INSERT", "DELETE"}) {
            if (tryKeyword(form)) throw UnsupportedFeatureError(form);
        }
        if (!tryKeyword("SELECT")) fail("expected SELECT");
        if (tryKeyword("REDUCED")) throw UnsupportedFeatureError("REDUCED");
        if (tryKeyword("DISTINCT")) query_.distinct = true;
        skipTrivia();
        if (peek() == '*') {
            ++pos_;
            query_.selectAll = true;
            return;
        }
        while (true) {
            skipTrivia();
            if (peek() != '?' && peek() != '$') break;
            const std::string name = lexVariable().name;
            if (std::find(query_.projection.begin(), query_.projection.end(), name) !=
                query_.projection.end()) {
                fail("variable ?" + name + " is projected twice");
            }
            query_.projection.push_back(name);
        }
        if (query_.projection.empty()) fail("SELECT needs '*' or at least one variable");
    }

    GroupPattern group() {
        GroupPattern gp;
        while (true) {
            skipTrivia();
            if (eof()) fail("unterminated group (missing '}')");
            const char c = peek();
            if (c == '}') return gp;
            if (c == '.') {
                ++pos_;
                continue;
            }
            if (c == '{') {
                throw UnsupportedFeatureError("nested group patterns (UNION, subqueries)");
            }
            if (tryKeyword("OPTIONAL")) {
                expect('{', "to open the OPTIONAL group");
                gp.optionals.push_back(group());
                expect('}', "to close the OPTIONAL group");
                continue;
            }
            if (tryKeyword("FILTER")) {
                gp.filters.push_back(filterCondition());
                continue;
            }
            for (const char* kw : {"UNION", "MINUS", "SERVICE", "GRAPH", "BIND", "VALUES",
                                   "EXISTS"}) {
                if (tryKeyword(kw)) throw UnsupportedFeatureError(kw);
            }
            if (tryKeyword("NOT")) throw UnsupportedFeatureError("NOT EXISTS");
            tripleBlock(gp);
        }
    }

    void tripleBlock(GroupPattern& gp) {
        const PatternTerm subject = patternTerm(Position::Subject);
        while (true) {
            skipTrivia();
            const PatternTerm predicate = verb();
            skipTrivia();
            if (peek() == '/' || peek() == '|') throw UnsupportedFeatureError("property paths");
            while (true) {
                const PatternTerm object = patternTerm(Position::Object);
                gp.triplePatterns.push_back({subject, predicate, object});
                skipTrivia();
                if (peek() == ',') {
                    ++pos_;
                    continue;
                }
                break;
            }
            if (peek() == ';') {
                ++pos_;
                skipTrivia();
                if (peek() == '.' || peek() == '}' || eof()) return;
                continue;
            }
            return;
        }
    }

    PatternTerm verb() {
        if (peek() == '^' || peek() == '!' || peek() == '(') {
            throw UnsupportedFeatureError("property paths");
        }
        if (tryKeyword("A")) return rdf::Term::iri(rdf::iris::rdfType);
        return patternTerm(Position::Predicate);
    }

    enum class Position { Subject, Predicate, Object };

    PatternTerm patternTerm(Position position) {
        skipTrivia();
        if (eof()) fail("expected a term");
        const char c = peek();
        if (c == '?' || c == '$') return lexVariable();
        if (c == '<') {
            if (peek(1) == '<') throw UnsupportedFeatureError("quoted triples");
            return makeIri(lexIriRef());
        }
        if (c == '[' || (c == '_' && peek(1) == ':')) {
            throw UnsupportedFeatureError("blank nodes in query patterns");
        }
        if (c == '(') throw UnsupportedFeatureError("collections in patterns");
        if (c == '"' || c == '\'' || text::isAsciiDigit(c) || c == '+' || c == '-' ||
            (c == '.' && text::isAsciiDigit(peek(1)))) {
            if (position != Position::Object) fail("literal is only allowed in object position");
            return literal();
        }
        if (position == Position::Object) {
            if (tryKeyword("TRUE")) return rdf::Term::literal("true", rdf::iris::xsdBoolean);
            if (tryKeyword("FALSE")) return rdf::Term::literal("false", rdf::iris::xsdBoolean);
        }
        return prefixedName();
    }

    Variable lexVariable() {
        ++pos_;  // '?' or '$'
        std::string name;
        while (!eof() && isVarChar(peek())) name += take();
        if (name.empty()) fail("empty variable name");
        return Variable{name};
    }

    rdf::Term makeIri(const std::string& iri) {
        if (!text::hasIriScheme(iri)) {
            fail("relative IRI <" + iri + "> (queries have no base IRI)");
        }
        return rdf::Term::iri(iri);
    }

    std::string lexIriRef() {
        expect('<', "to open IRI");
        std::string out;
        while (true) {
            if (eof()) fail("unterminated IRI");
            const char c = take();
            if (c == '>') break;
            const auto b = static_cast<unsigned char>(c);
            if (b <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' ||
                c == '^' || c == '`' || c == '\\') {
                --pos_;
                fail("character not allowed in IRI");
            }
            out += c;
        }
        return out;
    }

    rdf::Term prefixedName() {
        const std::size_t start = pos_;
        std::string prefix;
        while (!eof() && peek() != ':' && isWordChar(peek())) prefix += take();
        if (eof() || peek() != ':') {
            pos_ = start;
            fail("expected a term");
        }
        ++pos_;
        const auto it = query_.prefixes.find(prefix);
        if (it == query_.prefixes.end()) {
            pos_ = start;
            fail("undeclared prefix '" + prefix + ":'");
        }
        std::string local;
        while (!eof()) {
            const char c = peek();
            if (c == '\\') {
                ++pos_;
                if (eof()) fail("truncated local name escape");
                local += take();
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
            if (!isWordChar(c)) break;
            local += take();
        }
        while (!local.empty() && local.back() == '.') {
            local.pop_back();
            --pos_;
        }
        return rdf::Term::iri(it->second + local);
    }

    rdf::Term literal() {
        const char c = peek();
        if (c == '"' || c == '\'') {
            const std::string lexical = lexString();
            if (peek() == '@') {
                ++pos_;
                std::string tag;
                while (!eof() && (text::isAsciiAlnum(peek()) || peek() == '-')) tag += take();
                if (tag.empty() || !text::isAsciiAlpha(tag[0])) fail("invalid language tag");
                return rdf::Term::langLiteral(lexical, tag);
            }
            if (peek() == '^' && peek(1) == '^') {
                pos_ += 2;
                skipTrivia();
                const rdf::Term datatype =
                    peek() == '<' ? makeIri(lexIriRef()) : prefixedName();
                if (datatype.value() == rdf::iris::rdfLangString) {
                    fail("rdf:langString requires a language tag, not ^^");
                }
                return rdf::Term::literal(lexical, datatype.value());
            }
            return rdf::Term::literal(lexical);
        }
        return numericLiteral();
    }

    std::string lexString() {
        const char quote = take();
        const bool isLong = peek() == quote && peek(1) == quote;
        if (isLong) pos_ += 2;
        std::string out;
        while (true) {
            if (eof()) fail("unterminated string literal");
            const char c = take();
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
                const char esc = take();
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

    rdf::Term numericLiteral() {
        std::string lexical;
        if (peek() == '+' || peek() == '-') lexical += take();
        bool sawDigit = false;
        while (text::isAsciiDigit(peek())) {
            lexical += take();
            sawDigit = true;
        }
        bool isDecimal = false;
        if (peek() == '.' && text::isAsciiDigit(peek(1))) {
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
        if (isDouble) return rdf::Term::literal(lexical, rdf::iris::xsdDouble);
        if (isDecimal) return rdf::Term::literal(lexical, rdf::iris::xsdDecimal);
        return rdf::Term::literal(lexical, rdf::iris::xsdInteger);
    }

    FilterExpr filterCondition() {
        skipTrivia();
        if (tryKeyword("REGEX")) return regexCall();
        expect('(', "after FILTER");
        FilterExpr e = orExpr();
        expect(')', "to close the FILTER condition");
        return e;
    }

    FilterExpr orExpr() {
        FilterExpr lhs = andExpr();
        while (true) {
            skipTrivia();
            if (peek() != '|' || peek(1) != '|') return lhs;
            pos_ += 2;
            FilterExpr combined;
            combined.kind = FilterExpr::Kind::Or;
            combined.children.push_back(std::move(lhs));
            combined.children.push_back(andExpr());
            lhs = std::move(combined);
        }
    }

    FilterExpr andExpr() {
        FilterExpr lhs = unaryExpr();
        while (true) {
            skipTrivia();
            if (peek() != '&' || peek(1) != '&') return lhs;
            pos_ += 2;
            FilterExpr combined;
            combined.kind = FilterExpr::Kind::And;
            combined.children.push_back(std::move(lhs));
            combined.children.push_back(unaryExpr());
            lhs = std::move(combined);
        }
    }

    FilterExpr unaryExpr() {
        skipTrivia();
        if (peek() == '!' && peek(1) != '=') {
            ++pos_;
            FilterExpr e;
            e.kind = FilterExpr::Kind::Not;
            e.children.push_back(unaryExpr());
            return e;
        }
        if (peek() == '(') {
            ++pos_;
            FilterExpr e = orExpr();
            expect(')', "to close the group");
            return e;
        }
        if (tryKeyword("REGEX")) return regexCall();
        return comparison();
    }

    FilterExpr comparison() {
        FilterExpr e;
        e.kind = FilterExpr::Kind::Compare;
        e.lhs = operand();
        skipTrivia();
        if (peek() == '=') {
            ++pos_;
            e.op = FilterExpr::CompareOp::Eq;
        } else if (peek() == '!' && peek(1) == '=') {
            pos_ += 2;
            e.op = FilterExpr::CompareOp::Ne;
        } else if (peek() == '<') {
            ++pos_;
            e.op = FilterExpr::CompareOp::Lt;
            if (peek() == '=') {
                ++pos_;
                e.op = FilterExpr::CompareOp::Le;
            }
        } else if (peek() == '>') {
            ++pos_;
            e.op = FilterExpr::CompareOp::Gt;
            if (peek() == '=') {
                ++pos_;
                e.op = FilterExpr::CompareOp::Ge;
            }
        } else {
            fail("expected a comparison operator");
        }
        e.rhs = operand();
        return e;
    }

    PatternTerm operand() {
        skipTrivia();
        if (eof()) fail("expected an operand");
        const char c = peek();
        if (c == '?' || c == '$') return lexVariable();
        if (c == '<') return makeIri(lexIriRef());
        if (c == '"' || c == '\'' || text::isAsciiDigit(c) || c == '+' || c == '-' ||
            (c == '.' && text::isAsciiDigit(peek(1)))) {
            return literal();
        }
        if (tryKeyword("TRUE")) return rdf::Term::literal("true", rdf::iris::xsdBoolean);
        if (tryKeyword("FALSE")) return rdf::Term::literal("false", rdf::iris::xsdBoolean);
        return prefixedName();
    }

    FilterExpr regexCall() {
        FilterExpr e;
        e.kind = FilterExpr::Kind::Regex;
        expect('(', "after REGEX");
        e.lhs = operand();
        expect(',', "between REGEX arguments");
        skipTrivia();
        if (peek() != '"' && peek() != '\'') fail("REGEX pattern must be a string literal");
        e.regexPattern = lexString();
        skipTrivia();
        if (peek() == ',') throw UnsupportedFeatureError("REGEX flags");
        expect(')', "to close REGEX");
        try {
            e.regex = std::make_shared<const std::regex>(e.regexPattern);
        } catch (const std::regex_error& err) {
            fail("invalid REGEX pattern: " + std::string(err.what()));
        }
        return e;
    }

    void modifiers() {
        while (true) {
            if (tryKeyword("GROUP")) throw UnsupportedFeatureError("GROUP BY");
            if (tryKeyword("HAVING")) throw UnsupportedFeatureError("HAVING");
            if (tryKeyword("VALUES")) throw UnsupportedFeatureError("VALUES");
            if (tryKeyword("ORDER")) {
                if (!tryKeyword("BY")) fail("expected BY after ORDER");
                orderKeys();
                continue;
            }
            if (tryKeyword("LIMIT")) {
                if (query_.limit) fail("LIMIT given twice");
                query_.limit = lexNonNegativeInt();
                continue;
            }
            if (tryKeyword("OFFSET")) {
                if (query_.offset) fail("OFFSET given twice");
                query_.offset = lexNonNegativeInt();
                continue;
            }
            return;
        }
    }

    void orderKeys() {
        bool any = false;
        while (true) {
            skipTrivia();
            const bool descending = tryKeyword("DESC");
            if (descending || tryKeyword("ASC")) {
                expect('(', "after ASC/DESC");
                skipTrivia();
                if (peek() != '?' && peek() != '$') fail("ORDER BY supports variables only");
                query_.orderBy.push_back({lexVariable(), descending});
                expect(')', "to close the ORDER BY key");
                any = true;
                continue;
            }
            if (peek() == '?' || peek() == '$') {
                query_.orderBy.push_back({lexVariable(), false});
                any = true;
                continue;
            }
            break;
        }
        if (!any) fail("ORDER BY needs at least one key");
    }

    std::size_t lexNonNegativeInt() {
        skipTrivia();
        if (!text::isAsciiDigit(peek())) fail("expected a non-negative integer");
        std::size_t value = 0;
        while (text::isAsciiDigit(peek())) value = value * 10 + (take() - '0');
        return value;
    }

    void finishProjection() {
        std::vector<std::string> inPattern = patternVariables(query_.where);
        const std::set<std::string> bound(inPattern.begin(), inPattern.end());
        for (const std::string& name : query_.projection) {
            if (!bound.count(name)) query_.unboundProjection.push_back(name);
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    SparqlQuery query_;
};

}  // namespace

std::vector<std::string> patternVariables(const GroupPattern& group) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    collectVariables(group, out, seen);
    return out;
}

SparqlQuery parseQuery(std::string_view text) { return Parser(text).parse(); }

}  // namespace olmap::sparql
