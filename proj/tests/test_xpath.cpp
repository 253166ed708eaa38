#include <string>
#include <vector>

#include "doctest.h"
#include "support/generators.hpp"
#include "xml/parser.hpp"
#include "xml/serializer.hpp"
#include "xpath/container.hpp"

using namespace olmap;
using xpath::ContainerPath;
using xpath::parseContainer;
using xpath::PathSyntaxError;
using xpath::ResolveResult;
using xpath::resolveOrCreate;
using xpath::RootConflictError;
using xpath::Step;
using xpath::UnsupportedXPath;

namespace {

std::size_t countElements(const xml::XmlElement& element) {
    std::size_t count = 1;
    for (const xml::XmlElement* child : element.childElements()) {
        count += countElements(*child);
    }
    return count;
}

std::size_t countElements(const xml::XmlDocument& doc) {
    return doc.hasRoot() ? countElements(*doc.root) : 0;
}

bool nodeMatchesStep(const xml::XmlElement& element, const Step& step) {
    if (element.name != step.elementName) return false;
    for (const auto& predicate : step.predicates) {
        const std::string* value = element.attribute(predicate.attribute);
        if (value == nullptr || *value != predicate.value) return false;
    }
    return true;
}

// Small pool of supported paths over the same names the document generator
// uses, so resolution sometimes finds existing structure and sometimes
// builds it.
ContainerPath randomPath(testgen::Rng& rng) {
    ContainerPath path;
    const std::size_t depth = 1 + testgen::pick(rng, 3);
    for (std::size_t i = 0; i < depth; ++i) {
        Step step;
        step.elementName = testgen::randomXmlName(rng);
        const std::size_t predicateCount = testgen::pick(rng, 3) == 0 ? testgen::pick(rng, 2) + 1 : 0;
        for (std::size_t p = 0; p < predicateCount; ++p) {
            step.predicates.push_back(
                {"k" + std::to_string(p), "v" + std::to_string(testgen::pick(rng, 3))});
        }
        path.steps.push_back(std::move(step));
    }
    return path;
}

}  // namespace

TEST_SUITE("xpath") {

TEST_CASE("parses a single constant step") {
    const ContainerPath path = parseContainer("/parameters");
    REQUIRE(path.steps.size() == 1);
    CHECK(path.steps[0].elementName == "parameters");
    CHECK(path.steps[0].predicates.empty());
}

TEST_CASE("parses steps with attribute predicates") {
    const ContainerPath path = parseContainer("/robot[@id='ABC']/parameters");
    REQUIRE(path.steps.size() == 2);
    CHECK(path.steps[0].elementName == "robot");
    REQUIRE(path.steps[0].predicates.size() == 1);
    CHECK(path.steps[0].predicates[0].attribute == "id");
    CHECK(path.steps[0].predicates[0].value == "ABC");
    CHECK(path.steps[1].elementName == "parameters");
}

TEST_CASE("accepts both quote kinds, juxtaposed predicates and spaces") {
    const ContainerPath path =
        parseContainer("/group[@name=\"it's\"][ @level = '3' ]/entry");
    REQUIRE(path.steps.size() == 2);
    REQUIRE(path.steps[0].predicates.size() == 2);
    CHECK(path.steps[0].predicates[0].attribute == "name");
    CHECK(path.steps[0].predicates[0].value == "it's");
    CHECK(path.steps[0].predicates[1].attribute == "level");
    CHECK(path.steps[0].predicates[1].value == "3");
}

TEST_CASE("predicate values may hold path metacharacters") {
    const ContainerPath path = parseContainer("/a[@x='/b[c]=d']");
    REQUIRE(path.steps.size() == 1);
    CHECK(path.steps[0].predicates[0].value == "/b[c]=d");
}

TEST_CASE("names each unsupported XPath construct") {
    const std::vector<std::pair<std::string, std::string>> cases = {
        {"//parameter", "descendant axis"},
        {"/a//b", "descendant axis"},
        {"/*", "wildcard"},
        {"/a/*", "wildcard"},
        {"/a[1]", "positional"},
        {"/a[@b]", "attribute presence"},
        {"/a[@b!='c']", "attribute inequality"},
        {"/a[b='c']", "non-attribute predicate"},
        {"/a[text()='x']", "functions ('text()')"},
        {"/a[last()]", "functions ('last()')"},
        {"/text()", "functions ('text()')"},
        {"/child::a", "axes ('child::')"},
        {"/a/ancestor::b", "axes ('ancestor::')"},
        {"/a/..", "'.' and '..'"},
        {"/.", "'.' and '..'"},
        {"/a/@id", "attribute selection"},
    };
    for (const auto& [input, construct] : cases) {
        CAPTURE(input);
        CHECK_THROWS_WITH_AS(parseContainer(input), doctest::Contains(construct.c_str()),
                             UnsupportedXPath);
    }
}

TEST_CASE("rejects malformed paths") {
    CHECK_THROWS_WITH_AS(parseContainer(""), doctest::Contains("empty container path"),
                         PathSyntaxError);
    CHECK_THROWS_WITH_AS(parseContainer("a/b"), doctest::Contains("absolute"),
                         PathSyntaxError);
    CHECK_THROWS_WITH_AS(parseContainer("/"), doctest::Contains("expected an element name"),
                         PathSyntaxError);
    CHECK_THROWS_WITH_AS(parseContainer("/a/"), doctest::Contains("expected an element name"),
                         PathSyntaxError);
    CHECK_THROWS_WITH_AS(parseContainer("/3a"), doctest::Contains("invalid element name '3a'"),
                         PathSyntaxError);
    CHECK_THROWS_WITH_AS(parseContainer("/a[@3x='1']"),
                         doctest::Contains("invalid attribute name '3x'"), PathSyntaxError);
    CHECK_THROWS_WITH_AS(parseContainer("/a[@x='1'"), doctest::Contains("expected ']'"),
                         PathSyntaxError);
    CHECK_THROWS_WITH_AS(parseContainer("/a[@x='1]"),
                         doctest::Contains("unterminated attribute value"), PathSyntaxError);
    CHECK_THROWS_WITH_AS(parseContainer("/a[@x=1]"),
                         doctest::Contains("expected a quoted attribute value"),
                         PathSyntaxError);
    CHECK_THROWS_WITH_AS(parseContainer("/a[@]"),
                         doctest::Contains("expected an attribute name"), PathSyntaxError);
    CHECK_THROWS_WITH_AS(parseContainer("/a[@x='1'][@x='2']"),
                         doctest::Contains("duplicate predicate attribute 'x'"),
                         PathSyntaxError);
    CHECK_THROWS_WITH_AS(parseContainer("/a b"), doctest::Contains("unexpected character"),
                         PathSyntaxError);
}

TEST_CASE("reports the failing column") {
    try {
        parseContainer("/ok/3bad");
        FAIL("expected a PathSyntaxError");
    } catch (const PathSyntaxError& e) {
        CHECK(e.column() == 5);
        CHECK(doctest::Contains("column 5").checkWith(e.what()));
    }
}

TEST_CASE("creates the root for an empty document") {
    xml::XmlDocument doc;
    const ResolveResult result = resolveOrCreate(doc, parseContainer("/parameters"));
    REQUIRE(doc.hasRoot());
    CHECK(doc.root->name == "parameters");
    REQUIRE(result.nodes.size() == 1);
    CHECK(result.nodes[0] == doc.root.get());
    CHECK(result.created == 1);
}

TEST_CASE("returns an existing container without creating anything") {
    xml::XmlDocument doc = xml::parseXml("<parameters><parameter/></parameters>");
    const std::size_t before = countElements(doc);
    const ResolveResult result = resolveOrCreate(doc, parseContainer("/parameters"));
    REQUIRE(result.nodes.size() == 1);
    CHECK(result.nodes[0] == doc.root.get());
    CHECK(result.created == 0);
    CHECK(countElements(doc) == before);
}

TEST_CASE("returns every matching node in document order") {
    xml::XmlDocument doc = xml::parseXml(
        "<root><group name='g'><x/></group><other/><group name='g'/><group name='h'/></root>");
    const ResolveResult result = resolveOrCreate(doc, parseContainer("/root/group[@name='g']"));
    REQUIRE(result.nodes.size() == 2);
    CHECK(result.created == 0);
    const auto children = doc.root->childElements();
    CHECK(result.nodes[0] == children[0]);
    CHECK(result.nodes[1] == children[2]);
}

TEST_CASE("builds the full chain under an empty document") {
    xml::XmlDocument doc;
    doc.hasDeclaration = false;
    const ResolveResult result =
        resolveOrCreate(doc, parseContainer("/robot[@id='ABC']/arms/arm[@side='left']"));
    CHECK(result.created == 3);
    REQUIRE(result.nodes.size() == 1);
    CHECK(xml::serializeXml(doc) ==
          "<robot id=\"ABC\"><arms><arm side=\"left\"/></arms></robot>\n");
}

TEST_CASE("creates only the missing tail of a path") {
    xml::XmlDocument doc = xml::parseXml("<a><b><keep/></b></a>");
    const ResolveResult result = resolveOrCreate(doc, parseContainer("/a/b/c"));
    CHECK(result.created == 1);
    REQUIRE(result.nodes.size() == 1);
    CHECK(result.nodes[0]->name == "c");
    CHECK(xml::serializeElement(*doc.root) == "<a><b><keep/><c/></b></a>");
}

TEST_CASE("creates under the first parent when several could host the step") {
    xml::XmlDocument doc = xml::parseXml("<r><g/><g/></r>");
    const ResolveResult result = resolveOrCreate(doc, parseContainer("/r/g/x"));
    CHECK(result.created == 1);
    REQUIRE(result.nodes.size() == 1);
    CHECK(xml::serializeElement(*doc.root) == "<r><g><x/></g><g/></r>");
}

TEST_CASE("does not create when any branch already matches") {
    xml::XmlDocument doc = xml::parseXml("<r><a><x/></a><a/></r>");
    const ResolveResult result = resolveOrCreate(doc, parseContainer("/r/a/x"));
    CHECK(result.created == 0);
    REQUIRE(result.nodes.size() == 1);
    CHECK(xml::serializeElement(*doc.root) == "<r><a><x/></a><a/></r>");
}

TEST_CASE("sibling with the wrong attribute does not satisfy a predicate step") {
    xml::XmlDocument doc = xml::parseXml("<r><g name='other'/></r>");
    const ResolveResult result = resolveOrCreate(doc, parseContainer("/r/g[@name='g']"));
    CHECK(result.created == 1);
    CHECK(xml::serializeElement(*doc.root) == "<r><g name=\"other\"/><g name=\"g\"/></r>");
}

TEST_CASE("conflicting root names are an error") {
    xml::XmlDocument doc = xml::parseXml("<arm/>");
    CHECK_THROWS_WITH_AS(resolveOrCreate(doc, parseContainer("/robot")),
                         doctest::Contains("document root is <arm>"), RootConflictError);
}

TEST_CASE("a root that fails the first step's predicate is an error") {
    xml::XmlDocument doc = xml::parseXml("<robot id='XYZ'/>");
    CHECK_THROWS_WITH_AS(resolveOrCreate(doc, parseContainer("/robot[@id='ABC']/parameters")),
                         doctest::Contains("does not satisfy /robot[@id='ABC']"),
                         RootConflictError);
}

TEST_CASE("resolution is idempotent and creation stays within the path length") {
    testgen::Rng rng(90210);
    for (int round = 0; round < 120; ++round) {
        xml::XmlDocument doc;
        if (testgen::pick(rng, 4) != 0) {
            doc.root = std::make_unique<xml::XmlElement>(testgen::randomXmlElement(rng, 0));
        }
        ContainerPath path = randomPath(rng);
        if (doc.hasRoot()) {
            // Steer the first step onto the existing root so resolution is a
            // walk, not a root conflict.
            path.steps[0].elementName = doc.root->name;
            path.steps[0].predicates.clear();
        }

        ResolveResult first;
        try {
            first = resolveOrCreate(doc, path);
        } catch (const RootConflictError&) {
            continue;
        }
        const std::size_t afterFirst = countElements(doc);
        CHECK(first.created <= path.steps.size());
        CHECK_FALSE(first.nodes.empty());
        for (const xml::XmlElement* node : first.nodes) {
            CHECK(nodeMatchesStep(*node, path.steps.back()));
        }

        const ResolveResult second = resolveOrCreate(doc, path);
        CHECK(second.created == 0);
        CHECK(countElements(doc) == afterFirst);
        const bool sameNodes = second.nodes == first.nodes;
        CHECK(sameNodes);
        if (!sameNodes) {
            MESSAGE("after first resolve:\n" << xml::serializeElement(*doc.root));
            break;
        }
    }
}

}  // TEST_SUITE
