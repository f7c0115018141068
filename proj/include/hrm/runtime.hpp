#pragma once

#include <memory>

#include "hrm/api.hpp"
#include "hrm/config.hpp"
#include "hrm/external.hpp"
#include "hrm/service.hpp"
#include "hrm/store.hpp"

namespace hrm {

/// Everything a running service owns: the store, the external clients (or
/// the in-process stubs in stub mode), the business tier and the HTTP server.
class Runtime {
public:
    /// With `offline` set no external client or stub is created; for one-shot
    /// commands that never reach the ministry or the bibliography service.
    static Result<std::unique_ptr<Runtime>> create(const ServiceConfig& config, Clock clock = system_clock(),
                                                   bool offline = false);
    ~Runtime();

    HrService& service() { return *service_; }
    Store& store() { return *store_; }
    ApiServer& api() { return *api_; }

    // Only set in stub mode.
    MinistryStub* ministry_stub() { return ministry_stub_.get(); }
    BibliographyStub* bibliography_stub() { return bibliography_stub_.get(); }

    /// Binds the configured address and marks the service ready. Returns the port.
    Result<int> serve();
    void stop();

private:
    Runtime() = default;

    ServiceConfig config_;
    std::unique_ptr<Store> store_;
    std::unique_ptr<MinistryStub> ministry_stub_;
    std::unique_ptr<BibliographyStub> bibliography_stub_;
    std::unique_ptr<MinistryClient> ministry_;
    std::unique_ptr<BibliographyClient> bibliography_;
    std::unique_ptr<HrService> service_;
    std::unique_ptr<ApiServer> api_;
};

/// Reads a whole file; FileUnreadable when it cannot be opened.
Result<std::string> read_file(const std::string& path);

}  // namespace hrm
