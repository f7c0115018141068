#include "hrm/runtime.hpp"

#include <fstream>
#include <sstream>

namespace hrm {

Result<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return make_error(ErrorCode::FileUnreadable, "cannot read " + path, path);
    }
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

Result<std::unique_ptr<Runtime>> Runtime::create(const ServiceConfig& config, Clock clock, bool offline) {
    if (auto ok = config.validate(); !ok) {
        return ok.error();
    }
    if (!config.grade_catalog.empty()) {
        auto seed = read_file(config.grade_catalog);
        if (!seed) {
            return std::move(seed).error();
        }
        if (auto ok = verify_catalog_seed(*seed); !ok) {
            return ok.error();
        }
    }

    std::unique_ptr<Runtime> rt(new Runtime());
    rt->config_ = config;
    auto store = Store::open(config.store_path);
    if (!store) {
        return std::move(store).error();
    }
    rt->store_ = std::move(*store);

    if (offline) {
        // no external endpoints
    } else if (config.stub_mode) {
        rt->ministry_stub_ = std::make_unique<MinistryStub>();
        rt->ministry_stub_->set_auto_approve(true);
        rt->bibliography_stub_ = std::make_unique<BibliographyStub>();
        if (!config.bibliography_fixtures.empty()) {
            if (auto n = rt->bibliography_stub_->load_fixtures(config.bibliography_fixtures); !n) {
                return std::move(n).error();
            }
        }
        if (auto p = rt->ministry_stub_->start(); !p) {
            return std::move(p).error();
        }
        if (auto p = rt->bibliography_stub_->start(); !p) {
            return std::move(p).error();
        }
        rt->ministry_ = std::make_unique<HttpMinistryClient>(rt->ministry_stub_->base_url());
        rt->bibliography_ = std::make_unique<HttpBibliographyClient>(rt->bibliography_stub_->base_url());
    } else {
        if (!config.ministry_url.empty()) {
            rt->ministry_ = std::make_unique<HttpMinistryClient>(config.ministry_url);
        }
        if (!config.bibliography_url.empty()) {
            rt->bibliography_ = std::make_unique<HttpBibliographyClient>(config.bibliography_url);
        }
    }

    rt->service_ = std::make_unique<HrService>(*rt->store_, config, std::move(clock), rt->ministry_.get(),
                                               rt->bibliography_.get());
    rt->api_ = std::make_unique<ApiServer>(*rt->service_);
    return rt;
}

Runtime::~Runtime() { stop(); }

Result<int> Runtime::serve() {
    auto port = api_->start(config_.listen_address, config_.port);
    if (!port) {
        return port;
    }
    // Store migration and the catalog check both happened in create().
    api_->set_ready(true);
    return port;
}

void Runtime::stop() {
    if (api_) {
        api_->set_ready(false);
        api_->stop();
    }
    if (ministry_stub_) {
        ministry_stub_->stop();
    }
    if (bibliography_stub_) {
        bibliography_stub_->stop();
    }
}

}  // namespace hrm
