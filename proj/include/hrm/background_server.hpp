#pragma once

#include <memory>
#include <string>
#include <thread>

#include "hrm/result.hpp"

namespace httplib {
class Server;
}

namespace hrm {

/// Owns an httplib::Server and the thread running its accept loop.
class BackgroundServer {
public:
    BackgroundServer();
    ~BackgroundServer();

    BackgroundServer(const BackgroundServer&) = delete;
    BackgroundServer& operator=(const BackgroundServer&) = delete;

    httplib::Server& server() { return *server_; }

    /// Binds (port 0 picks a free port) and starts serving. Returns the bound port.
    Result<int> start(const std::string& host, int port);
    void stop();

    int port() const { return port_; }
    const std::string& host() const { return host_; }
    std::string base_url() const;

private:
    std::unique_ptr<httplib::Server> server_;
    std::thread thread_;
    std::string host_;
    int port_ = -1;
};

}  // namespace hrm
