#include <chrono>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "doctest.h"
#include "endpoint/client.hpp"
#include "httplib.h"
#include "rdf/turtle.hpp"
#include "sparql/eval.hpp"
#include "sparql/parser.hpp"
#include "stubserver.hpp"
#include "testutil.hpp"

using namespace olmap;
using endpoint::EndpointConfig;
using endpoint::executeSelect;
using endpoint::NetworkError;
using endpoint::parseResultsJson;
using endpoint::ProtocolError;
using endpoint::ResultFormatError;

namespace {

const std::string kRobotQuery = R"(
    PREFIX ex: <http://example.org/robot#>
    SELECT ?parameterName ?parameterValue
    WHERE {
        ex:RobotConfiguration_ABC ex:hasParameter ?parameter .
        ?parameter ex:hasName ?parameterName .
        ?parameter ex:hasValue ?parameterValue .
    }
)";

sparql::ResultSet localRobotRows() {
    const rdf::Graph graph =
        rdf::parseTurtle(testutil::readFile(testutil::fixturePath("parameters.ttl")));
    return sparql::evaluate(sparql::parseQuery(kRobotQuery), graph);
}

using testutil::StubServer;

}  // namespace

TEST_SUITE("endpoint") {

TEST_CASE("zero bindings decode to an empty result set with variables") {
    const auto result =
        parseResultsJson(R"({"head":{"vars":["a","b"]},"results":{"bindings":[]}})");
    CHECK(result.variables == std::vector<std::string>{"a", "b"});
    CHECK(result.rows.empty());
}

TEST_CASE("a plain literal binding decodes as an xsd:string literal") {
    const auto result = parseResultsJson(
        R"({"head":{"vars":["parameterName"]},)"
        R"("results":{"bindings":[{"parameterName":{"type":"literal","value":"arm1"}}]}})");
    REQUIRE(result.rows.size() == 1);
    const rdf::Term* term = result.rows[0].find("parameterName");
    REQUIRE(term != nullptr);
    CHECK(*term == rdf::Term::literal("arm1"));
}

TEST_CASE("each binding type decodes to the matching term") {
    const auto result = parseResultsJson(R"({
        "head": {"vars": ["i", "b", "l", "t", "g"]},
        "results": {"bindings": [{
            "i": {"type": "uri", "value": "http://example.org/thing"},
            "b": {"type": "bnode", "value": "b0"},
            "l": {"type": "literal", "value": "Wert", "xml:lang": "de"},
            "t": {"type": "typed-literal",
                  "datatype": "http://www.w3.org/2001/XMLSchema#integer",
                  "value": "200"},
            "g": {"type": "literal", "value": "tagged", "xml:lang": "en",
                  "datatype": "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString"}
        }]}
    })");
    REQUIRE(result.rows.size() == 1);
    const auto& row = result.rows[0];
    CHECK(*row.find("i") == rdf::Term::iri("http://example.org/thing"));
    CHECK(*row.find("b") == rdf::Term::blankNode("b0"));
    CHECK(*row.find("l") == rdf::Term::langLiteral("Wert", "de"));
    CHECK(*row.find("t") == rdf::Term::literal("200", rdf::iris::xsdInteger));
    CHECK(*row.find("g") == rdf::Term::langLiteral("tagged", "en"));
}

TEST_CASE("the fixture document equals local evaluation of the same query") {
    const auto fromJson =
        parseResultsJson(testutil::readFile(testutil::fixturePath("robot-results.json")));
    const auto local = localRobotRows();

    CHECK(fromJson == local);
    // The fixture lists arm2 first; decoding must have restored the
    // deterministic order.
    REQUIRE(fromJson.rows.size() == 3);
    CHECK(*fromJson.rows[0].find("parameterName") == rdf::Term::literal("arm1"));
}

TEST_CASE("malformed results are rejected with a reason") {
    const std::vector<std::pair<std::string, std::string>> cases = {
        {"{", "cannot parse"},
        {"[]", "top level"},
        {"{}", "missing \"head\""},
        {R"({"head":{},"results":{"bindings":[]}})", "\"vars\""},
        {R"({"head":{"vars":"x"},"results":{"bindings":[]}})", "\"vars\""},
        {R"({"head":{"vars":[1]},"results":{"bindings":[]}})", "must be strings"},
        {R"({"head":{"vars":[]}})", "missing \"results\""},
        {R"({"head":{"vars":[]},"results":{}})", "\"bindings\""},
        {R"({"head":{"vars":[]},"results":{"bindings":{}}})", "\"bindings\""},
        {R"({"head":{"vars":["a"]},"results":{"bindings":[42]}})", "row 1 is not an object"},
        {R"({"head":{"vars":["a"]},"results":{"bindings":[{"a":7}]}})", "not an object"},
        {R"({"head":{"vars":["a"]},"results":{"bindings":[{"a":{"value":"v"}}]}})",
         "no \"type\""},
        {R"({"head":{"vars":["a"]},"results":{"bindings":[{"a":{"type":"literal"}}]}})",
         "no \"value\""},
        {R"({"head":{"vars":["a"]},"results":{"bindings":[{"a":{"type":"thing","value":"v"}}]}})",
         "unknown binding type 'thing'"},
        {R"({"head":{"vars":["a"]},"results":{"bindings":[{"b":{"type":"literal","value":"v"}}]}})",
         "does not declare"},
        {R"({"head":{"vars":["a"]},"results":{"bindings":[{"a":{"type":"uri","value":"no-scheme"}}]}})",
         "row 1, variable 'a'"},
    };
    for (const auto& [body, expected] : cases) {
        CAPTURE(body);
        CHECK_THROWS_WITH_AS(parseResultsJson(body), doctest::Contains(expected.c_str()),
                             ResultFormatError);
    }
}

TEST_CASE("the client speaks the protocol and decodes the answer") {
    std::string seenMethod;
    std::string seenPath;
    std::string seenAccept;
    std::string seenContentType;
    std::string seenToken;
    std::string seenQuery;
    StubServer server([&](const httplib::Request& request, httplib::Response& response) {
        seenMethod = request.method;
        seenPath = request.path;
        seenAccept = request.get_header_value("Accept");
        seenContentType = request.get_header_value("Content-Type");
        seenToken = request.get_header_value("X-Auth");
        seenQuery = request.get_param_value("query");
        response.set_content(testutil::readFile(testutil::fixturePath("robot-results.json")),
                             "application/sparql-results+json");
    });

    EndpointConfig config{server.url(), 5, {{"X-Auth", "token-123"}}};
    const auto result = executeSelect(config, kRobotQuery);

    CHECK(result == localRobotRows());
    CHECK(seenMethod == "POST");
    CHECK(seenPath == "/sparql");
    CHECK(seenAccept == "application/sparql-results+json");
    CHECK(seenContentType == "application/x-www-form-urlencoded");
    CHECK(seenToken == "token-123");
    // The query must arrive verbatim, which exercises the form encoding of
    // newlines, '#' and '?'.
    CHECK(seenQuery == kRobotQuery);
}

TEST_CASE("a URL without a path posts to the server root") {
    std::string seenPath;
    StubServer server([&](const httplib::Request& request, httplib::Response& response) {
        seenPath = request.path;
        response.set_content(R"({"head":{"vars":[]},"results":{"bindings":[]}})",
                             "application/sparql-results+json");
    });

    EndpointConfig config{server.origin(), 5, {}};
    const auto result = executeSelect(config, "SELECT ?s WHERE { ?s ?p ?o }");
    CHECK(result.rows.empty());
    CHECK(seenPath == "/");
}

TEST_CASE("an error status becomes ProtocolError carrying the body") {
    StubServer server([](const httplib::Request&, httplib::Response& response) {
        response.status = 503;
        response.set_content("service overloaded,\ntry again later", "text/plain");
    });

    EndpointConfig config{server.url(), 5, {}};
    try {
        executeSelect(config, "SELECT ?s WHERE { ?s ?p ?o }");
        FAIL("expected ProtocolError");
    } catch (const ProtocolError& error) {
        CHECK(error.status() == 503);
        const std::string message = error.what();
        CHECK(message.find("503") != std::string::npos);
        // The excerpt is flattened onto one line.
        CHECK(message.find("service overloaded, try again later") != std::string::npos);
    }
}

TEST_CASE("a response that is not results JSON becomes ResultFormatError") {
    StubServer server([](const httplib::Request&, httplib::Response& response) {
        response.set_content("<html>definitely not JSON</html>", "text/html");
    });

    EndpointConfig config{server.url(), 5, {}};
    CHECK_THROWS_AS(executeSelect(config, "SELECT ?s WHERE { ?s ?p ?o }"), ResultFormatError);
}

TEST_CASE("an unreachable endpoint becomes NetworkError") {
    std::string url;
    {
        StubServer server([](const httplib::Request&, httplib::Response&) {});
        url = server.url();
    }

    EndpointConfig config{url, 2, {}};
    CHECK_THROWS_WITH_AS(executeSelect(config, "SELECT ?s WHERE { ?s ?p ?o }"),
                         doctest::Contains("cannot reach"), NetworkError);
}

TEST_CASE("an https URL reaches the TLS client rather than being rejected") {
    // Port 1 is essentially never open; the point is that the https scheme
    // is routed to a working client and fails like any unreachable host.
    EndpointConfig config{"https://127.0.0.1:1/sparql", 1, {}};
    CHECK_THROWS_AS(executeSelect(config, "SELECT ?s WHERE { ?s ?p ?o }"), NetworkError);
}

TEST_CASE("a stalled endpoint times out close to the configured limit") {
    StubServer server([](const httplib::Request&, httplib::Response& response) {
        std::this_thread::sleep_for(std::chrono::milliseconds(2500));
        response.set_content(R"({"head":{"vars":[]},"results":{"bindings":[]}})",
                             "application/sparql-results+json");
    });

    EndpointConfig config{server.url(), 1, {}};
    const auto start = std::chrono::steady_clock::now();
    CHECK_THROWS_AS(executeSelect(config, "SELECT ?s WHERE { ?s ?p ?o }"), NetworkError);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(elapsed >= 0.9);
    CHECK(elapsed <= 2.0);
}

TEST_CASE("bad configuration is rejected before any request") {
    CHECK_THROWS_WITH_AS(
        executeSelect(EndpointConfig{"ftp://example.org/sparql", 5, {}}, "SELECT"),
        doctest::Contains("absolute http(s) URL"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(executeSelect(EndpointConfig{"http://example.org/", 0, {}}, "SELECT"),
                         doctest::Contains("timeout must be positive"), std::invalid_argument);
}

}  // TEST_SUITE
