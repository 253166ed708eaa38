#include <stdexcept>
#include <string>

#include "endpoint/client.hpp"
#include "httplib.h"

namespace olmap::endpoint {
namespace {

// httplib wants the origin ("http://host:1234") and the request target
// ("/sparql") separately.
struct SplitUrl {
    std::string origin;
    std::string target;
};

SplitUrl splitUrl(const std::string& url) {
    const std::size_t schemeEnd = url.find("://");
    const std::size_t pathStart = url.find('/', schemeEnd + 3);
    if (pathStart == std::string::npos) return {url, "/"};
    return {url.substr(0, pathStart), url.substr(pathStart)};
}

// First part of a response body, flattened for a one-line error message.
std::string excerptOf(const std::string& body) {
    constexpr std::size_t kLimit = 200;
    std::string excerpt = body.substr(0, kLimit);
    for (char& c : excerpt) {
        if (c == '\n' || c == '\r' || c == '\t') c = ' ';
    }
    if (body.size() > kLimit) excerpt += "...";
    if (excerpt.empty()) return "(empty body)";
    return excerpt;
}

}  // namespace

sparql::ResultSet executeSelect(const EndpointConfig& config, const std::string& queryText) {
    if (config.url.rfind("http://", 0) != 0 && config.url.rfind("https://", 0) != 0) {
        throw std::invalid_argument("endpoint URL must be an absolute http(s) URL, got '" +
                                    config.url + "'");
    }
    if (config.timeoutSeconds <= 0) {
        throw std::invalid_argument("endpoint timeout must be positive, got " +
                                    std::to_string(config.timeoutSeconds));
    }

    const SplitUrl split = splitUrl(config.url);
    httplib::Client client(split.origin);
    client.set_connection_timeout(config.timeoutSeconds, 0);
    client.set_read_timeout(config.timeoutSeconds, 0);
    client.set_write_timeout(config.timeoutSeconds, 0);

    httplib::Headers headers{{"Accept", "application/sparql-results+json"}};
    for (const auto& [name, value] : config.extraHeaders) {
        headers.emplace(name, value);
    }

    // POST keeps long queries out of the URL; Params produces the
    // `query=<urlencoded>` form body the SPARQL 1.1 Protocol asks for.
    const httplib::Params params{{"query", queryText}};
    const httplib::Result response = client.Post(split.target, headers, params);

    if (!response) {
        throw NetworkError("cannot reach SPARQL endpoint '" + config.url +
                           "': " + httplib::to_string(response.error()));
    }
    if (response->status < 200 || response->status >= 300) {
        throw ProtocolError(response->status,
                            "SPARQL endpoint '" + config.url + "' answered HTTP " +
                                std::to_string(response->status) + ": " +
                                excerptOf(response->body));
    }
    return parseResultsJson(response->body);
}

}  // namespace olmap::endpoint
