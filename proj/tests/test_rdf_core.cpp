#include <algorithm>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "generators.hpp"
#include "rdf/graph.hpp"
#include "rdf/term.hpp"

using namespace olmap::rdf;

TEST_SUITE_BEGIN("rdf-core");

TEST_CASE("term factories validate their input") {
    CHECK_NOTHROW(Term::iri("http://example.org/x"));
    CHECK_NOTHROW(Term::iri("urn:olmap:vocab#DataMap"));
    CHECK_THROWS_AS(Term::iri("relative/path"), std::invalid_argument);
    CHECK_THROWS_AS(Term::iri(""), std::invalid_argument);
    CHECK_THROWS_AS(Term::blankNode(""), std::invalid_argument);
    CHECK_THROWS_AS(Term::literal("x", iris::rdfLangString), std::invalid_argument);
    CHECK_THROWS_AS(Term::langLiteral("x", ""), std::invalid_argument);
}

TEST_CASE("term accessors and text forms") {
    const Term iri = Term::iri("http://example.org/x");
    CHECK(iri.isIri());
    CHECK(iri.value() == "http://example.org/x");
    CHECK(iri.toText() == "http://example.org/x");
    CHECK(iri.toNTriples() == "<http://example.org/x>");

    const Term blank = Term::blankNode("b1");
    CHECK(blank.isBlankNode());
    CHECK(blank.toText() == "_:b1");
    CHECK(blank.toNTriples() == "_:b1");

    const Term plain = Term::literal("hello");
    CHECK(plain.isLiteral());
    CHECK(plain.datatype() == iris::xsdString);
    CHECK(!plain.languageTag());
    CHECK(plain.toText() == "hello");
    CHECK(plain.toNTriples() == "\"hello\"");

    const Term typed = Term::literal("5", iris::xsdInteger);
    CHECK(typed.toNTriples() == "\"5\"^^<http://www.w3.org/2001/XMLSchema#integer>");
    CHECK(typed.hasNumericDatatype());
    CHECK(!plain.hasNumericDatatype());

    const Term tagged = Term::langLiteral("hallo", "de");
    CHECK(tagged.datatype() == iris::rdfLangString);
    CHECK(tagged.languageTag() == "de");
    CHECK(tagged.toNTriples() == "\"hallo\"@de");
}

TEST_CASE("literal escaping in the N-Triples form") {
    CHECK(Term::literal("a\"b").toNTriples() == "\"a\\\"b\"");
    CHECK(Term::literal("a\nb").toNTriples() == "\"a\\nb\"");
    CHECK(Term::literal("a\\b").toNTriples() == "\"a\\\\b\"");
    CHECK(Term::literal("a\tb\r").toNTriples() == "\"a\\tb\\r\"");
    CHECK(Term::literal(std::string("a\x01") + "b").toNTriples() == "\"a\\u0001b\"");
}

TEST_CASE("term equality distinguishes kind, datatype and language") {
    CHECK(Term::literal("x") == Term::literal("x"));
    CHECK(Term::literal("x") != Term::literal("x", iris::xsdInteger));
    CHECK(Term::literal("x") != Term::langLiteral("x", "en"));
    CHECK(Term::langLiteral("x", "en") != Term::langLiteral("x", "de"));
    CHECK(Term::iri("http://a/x") != Term::blankNode("http://a/x"));
}

TEST_CASE("triple construction enforces the RDF shape") {
    const Term s = Term::iri("http://example.org/s");
    const Term p = Term::iri("http://example.org/p");
    const Term lit = Term::literal("v");
    CHECK_NOTHROW(Triple(s, p, lit));
    CHECK_NOTHROW(Triple(Term::blankNode("b"), p, s));
    CHECK_THROWS_AS(Triple(lit, p, s), std::invalid_argument);
    CHECK_THROWS_AS(Triple(s, Term::blankNode("b"), lit), std::invalid_argument);
    CHECK_THROWS_AS(Triple(s, lit, lit), std::invalid_argument);
}

TEST_CASE("graph has set semantics") {
    Graph g;
    const Term s = Term::iri("http://example.org/s");
    const Term p = Term::iri("http://example.org/p");
    CHECK(g.insert(Triple(s, p, Term::literal("v"))));
    CHECK(!g.insert(Triple(s, p, Term::literal("v"))));
    CHECK(g.insert(Triple(s, p, Term::literal("w"))));
    CHECK(g.size() == 2);
    CHECK(g.contains(Triple(s, p, Term::literal("v"))));
    CHECK(!g.contains(Triple(s, p, Term::literal("missing"))));
}

TEST_CASE("triples() is sorted and duplicate-free") {
    testgen::Rng rng(7);
    const Graph g = testgen::randomGraph(rng, 60, 5);
    const auto all = g.triples();
    CHECK(all.size() == g.size());
    CHECK(std::is_sorted(all.begin(), all.end()));
    CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
}

namespace {

// Reference answer for Graph::match: a linear scan over all triples.
std::vector<Triple> scanMatch(const Graph& g, const std::optional<Term>& s,
                              const std::optional<Term>& p, const std::optional<Term>& o) {
    std::vector<Triple> out;
    for (const Triple& t : g.triples()) {
        if (s && !(t.subject == *s)) continue;
        if (p && !(t.predicate == *p)) continue;
        if (o && !(t.object == *o)) continue;
        out.push_back(t);
    }
    return out;  // triples() is already sorted
}

}  // namespace

TEST_CASE("match agrees with a linear scan for every pattern shape") {
    testgen::Rng rng(42);
    for (int round = 0; round < 15; ++round) {
        const Graph g = testgen::randomGraph(rng, 40, 4);
        std::vector<std::optional<Term>> candidates = {std::nullopt,
                                                       Term::iri("http://example.org/absent")};
        for (const Term& t : g.terms()) candidates.emplace_back(t);

        for (int probe = 0; probe < 60; ++probe) {
            const auto& s = candidates[testgen::pick(rng, candidates.size())];
            const auto& p = candidates[testgen::pick(rng, candidates.size())];
            const auto& o = candidates[testgen::pick(rng, candidates.size())];
            const auto got = g.match(s, p, o);
            const auto want = scanMatch(g, s, p, o);
            REQUIRE(got == want);
        }
    }
}

TEST_CASE("match results come back in (s, p, o) order") {
    testgen::Rng rng(9);
    const Graph g = testgen::randomGraph(rng, 50, 4);
    const Term p = Term::iri("http://example.org/p0");
    for (const auto& pattern : {g.match({}, p, {}), g.match({}, {}, Term::literal("plain")),
                                g.match({}, {}, {})}) {
        CHECK(std::is_sorted(pattern.begin(), pattern.end()));
    }
}

TEST_CASE("graph equality compares triple sets") {
    testgen::Rng rng(3);
    const Graph a = testgen::randomGraph(rng, 30, 4);
    Graph b;
    auto triples = a.triples();
    std::shuffle(triples.begin(), triples.end(), rng);
    for (const Triple& t : triples) b.insert(t);
    CHECK(a == b);
    b.insert(Triple(Term::iri("http://example.org/extra"), Term::iri("http://example.org/p"),
                    Term::literal("x")));
    CHECK(!(a == b));
}

TEST_SUITE_END();
