#include "rdf/term.hpp"

#include <stdexcept>

#include "support/text.hpp"

namespace olmap::rdf {

std::string quoteTurtleString(std::string_view raw) {
    static const char* hex = "0123456789ABCDEF";
    std::string out = "\"";
    for (const char c : raw) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '"': out += "\\\""; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default: {
                const auto b = static_cast<unsigned char>(c);
                if (b < 0x20) {
                    out += "\\u00";
                    out += hex[b >> 4];
                    out += hex[b & 0xF];
                } else {
                    out += c;
                }
            }
        }
    }
    out += '"';
    return out;
}

namespace {

std::string renderNTriples(Term::Kind kind, const std::string& value, const std::string& datatype,
                           const std::optional<std::string>& languageTag) {
    switch (kind) {
        case Term::Kind::Iri: return "<" + value + ">";
        case Term::Kind::BlankNode: return "_:" + value;
        case Term::Kind::Literal: {
            std::string out = quoteTurtleString(value);
            if (languageTag) {
                out += '@';
                out += *languageTag;
            } else if (datatype != iris::xsdString) {
                out += "^^<" + datatype + ">";
            }
            return out;
        }
    }
    return {};
}

}  // namespace

Term::Term(Kind kind, std::string value, std::string datatype,
           std::optional<std::string> languageTag)
    : kind_(kind),
      value_(std::move(value)),
      datatype_(std::move(datatype)),
      languageTag_(std::move(languageTag)),
      ntForm_(renderNTriples(kind_, value_, datatype_, languageTag_)) {}

Term Term::iri(std::string value) {
    if (!text::hasIriScheme(value)) {
        throw std::invalid_argument("IRI is not absolute (missing scheme): '" + value + "'");
    }
    return Term(Kind::Iri, std::move(value), {}, {});
}

Term Term::blankNode(std::string label) {
    if (label.empty()) throw std::invalid_argument("blank node label must not be empty");
    return Term(Kind::BlankNode, std::move(label), {}, {});
}

Term Term::literal(std::string lexicalForm, std::string datatypeIri) {
    if (datatypeIri == iris::rdfLangString) {
        throw std::invalid_argument("rdf:langString literal requires a language tag");
    }
    return Term(Kind::Literal, std::move(lexicalForm), std::move(datatypeIri), {});
}

Term Term::langLiteral(std::string lexicalForm, std::string languageTag) {
    if (languageTag.empty()) throw std::invalid_argument("language tag must not be empty");
    return Term(Kind::Literal, std::move(lexicalForm), iris::rdfLangString,
                std::move(languageTag));
}

bool Term::hasNumericDatatype() const {
    if (kind_ != Kind::Literal) return false;
    return datatype_ == iris::xsdInteger || datatype_ == iris::xsdDecimal ||
           datatype_ == iris::xsdDouble || datatype_ == iris::xsdFloat;
}

std::string Term::toText() const {
    if (kind_ == Kind::BlankNode) return "_:" + value_;
    return value_;
}

}  // namespace olmap::rdf
