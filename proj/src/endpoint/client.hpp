#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sparql/result.hpp"
#include "support/error.hpp"

namespace olmap::endpoint {

// The endpoint could not be reached or did not answer in time.
class NetworkError : public Error {
public:
    explicit NetworkError(std::string message) : Error(std::move(message)) {}
};

// The endpoint answered outside the protocol (a non-2xx status). The message
// carries a short excerpt of the response body.
class ProtocolError : public Error {
public:
    ProtocolError(int status, std::string message)
        : Error(std::move(message)), status_(status) {}

    int status() const { return status_; }

private:
    int status_;
};

// The response claimed success but its body is not the SPARQL JSON results
// format.
class ResultFormatError : public Error {
public:
    explicit ResultFormatError(std::string message) : Error(std::move(message)) {}
};

struct EndpointConfig {
    // Absolute http:// or https:// URL of the SPARQL endpoint.
    std::string url;
    // Applied to connecting, writing and reading; must be positive.
    int timeoutSeconds = 30;
    // Sent with every request, in order, after the Accept header.
    std::vector<std::pair<std::string, std::string>> extraHeaders;
};

// Runs a SELECT query against a remote endpoint using the SPARQL 1.1
// Protocol: one POST with a `query=<urlencoded>` form body, asking for
// application/sparql-results+json. The query text is sent verbatim. Rows in
// the decoded result are sorted the same way local evaluation sorts them,
// so the two paths are interchangeable.
sparql::ResultSet executeSelect(const EndpointConfig& config, const std::string& queryText);

// Decodes a SPARQL JSON results document (head.vars + results.bindings,
// including the legacy "typed-literal" spelling). Exposed separately so
// fixture documents can be decoded without a live server.
sparql::ResultSet parseResultsJson(const std::string& body);

}  // namespace olmap::endpoint
