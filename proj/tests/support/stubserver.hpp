#pragma once

#include <stdexcept>
#include <string>
#include <thread>
#include <utility>

#include "httplib.h"

namespace testutil {

// Serves one handler on 127.0.0.1 (at "/" and "/sparql") for the duration
// of a test case.
class StubServer {
public:
    explicit StubServer(httplib::Server::Handler handler) {
        server_.Post("/", handler);
        server_.Post("/sparql", std::move(handler));
        port_ = server_.bind_to_any_port("127.0.0.1");
        if (port_ <= 0) throw std::runtime_error("stub server could not bind a port");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }

    ~StubServer() {
        server_.stop();
        thread_.join();
    }

    StubServer(const StubServer&) = delete;
    StubServer& operator=(const StubServer&) = delete;

    std::string origin() const { return "http://127.0.0.1:" + std::to_string(port_); }
    std::string url() const { return origin() + "/sparql"; }

private:
    httplib::Server server_;
    int port_ = 0;
    std::thread thread_;
};

}  // namespace testutil
