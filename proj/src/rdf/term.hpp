#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace olmap::rdf {

// Well-known vocabulary IRIs.
namespace iris {
inline constexpr const char* xsdString = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr const char* xsdBoolean = "http://www.w3.org/2001/XMLSchema#boolean";
inline constexpr const char* xsdInteger = "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr const char* xsdDecimal = "http://www.w3.org/2001/XMLSchema#decimal";
inline constexpr const char* xsdDouble = "http://www.w3.org/2001/XMLSchema#double";
inline constexpr const char* xsdFloat = "http://www.w3.org/2001/XMLSchema#float";
inline constexpr const char* rdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr const char* rdfLangString =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
}  // namespace iris

// One RDF term: IRI, blank node or literal. Terms are immutable values; the
// total order is lexicographic over the N-Triples form, which keeps every
// downstream iteration byte-reproducible.
class Term {
public:
    enum class Kind { Iri, BlankNode, Literal };

    // Throws std::invalid_argument unless `value` is an absolute IRI.
    static Term iri(std::string value);
    static Term blankNode(std::string label);
    static Term literal(std::string lexicalForm, std::string datatypeIri = iris::xsdString);
    // Language-tagged literal; the datatype is fixed to rdf:langString.
    static Term langLiteral(std::string lexicalForm, std::string languageTag);

    Kind kind() const { return kind_; }
    bool isIri() const { return kind_ == Kind::Iri; }
    bool isBlankNode() const { return kind_ == Kind::BlankNode; }
    bool isLiteral() const { return kind_ == Kind::Literal; }

    // IRI text, blank node label or literal lexical form.
    const std::string& value() const { return value_; }
    // Literals only; xsd:string for plain literals.
    const std::string& datatype() const { return datatype_; }
    const std::optional<std::string>& languageTag() const { return languageTag_; }

    bool hasNumericDatatype() const;

    // The text a bound value contributes when substituted into a template:
    // the lexical form for literals, the full IRI, or "_:" + label.
    std::string toText() const;

    // N-Triples rendering; doubles as the canonical sort key.
    const std::string& toNTriples() const { return ntForm_; }

    bool operator==(const Term& other) const { return ntForm_ == other.ntForm_; }
    bool operator!=(const Term& other) const { return ntForm_ != other.ntForm_; }
    bool operator<(const Term& other) const { return ntForm_ < other.ntForm_; }

private:
    Term(Kind kind, std::string value, std::string datatype,
         std::optional<std::string> languageTag);

    Kind kind_;
    std::string value_;
    std::string datatype_;
    std::optional<std::string> languageTag_;
    std::string ntForm_;
};

// Quotes and escapes a string for N-Triples / Turtle output.
std::string quoteTurtleString(std::string_view raw);

}  // namespace olmap::rdf
