#include "hrm/background_server.hpp"

#include <httplib.h>
#include <sys/socket.h>

namespace hrm {

BackgroundServer::BackgroundServer() : server_(std::make_unique<httplib::Server>()) {
    // httplib's default also sets SO_REUSEPORT, which would let two servers share a port.
    server_->set_socket_options([](socket_t sock) {
        int yes = 1;
        ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
    });
}

BackgroundServer::~BackgroundServer() { stop(); }

Result<int> BackgroundServer::start(const std::string& host, int port) {
    host_ = host;
    if (port == 0) {
        port_ = server_->bind_to_any_port(host);
    } else {
        port_ = server_->bind_to_port(host, port) ? port : -1;
    }
    if (port_ < 0) {
        return make_error(ErrorCode::TransportError,
                          "cannot bind " + host + ":" + std::to_string(port));
    }
    thread_ = std::thread([this] { server_->listen_after_bind(); });
    server_->wait_until_ready();
    return port_;
}

void BackgroundServer::stop() {
    if (thread_.joinable()) {
        server_->stop();
        thread_.join();
    }
}

std::string BackgroundServer::base_url() const {
    return "http://" + host_ + ":" + std::to_string(port_);
}

}  // namespace hrm
