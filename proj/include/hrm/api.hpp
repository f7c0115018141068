#pragma once

#include <atomic>
#include <string>

#include "hrm/background_server.hpp"
#include "hrm/result.hpp"
#include "hrm/service.hpp"

namespace hrm {

/// HTTP status for every error code.
int http_status(ErrorCode code) noexcept;

/// Header carrying the optimistic-concurrency version for procedure events.
inline constexpr const char* kExpectedVersionHeader = "If-Match";

/// REST/JSON surface over HrService. Every route except /health/ready needs
/// "Authorization: Bearer <token>" with a token from the service config.
class ApiServer {
public:
    explicit ApiServer(HrService& service);

    Result<int> start(const std::string& host, int port);
    void stop() { server_.stop(); }
    std::string base_url() const { return server_.base_url(); }

    /// Readiness probe turns healthy once the grade catalog has been checked.
    void set_ready(bool ready) { ready_ = ready; }

private:
    void install_routes();

    HrService& service_;
    BackgroundServer server_;
    std::atomic<bool> ready_{false};
};

}  // namespace hrm
