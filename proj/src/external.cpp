#include "hrm/external.hpp"

#include <fstream>
#include <sstream>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "hrm/codec.hpp"

namespace hrm {

namespace {

using nlohmann::json;

constexpr const char* kJson = "application/json";

httplib::Client make_client(const std::string& base_url, std::chrono::milliseconds timeout) {
    httplib::Client cli(base_url);
    cli.set_connection_timeout(timeout);
    cli.set_read_timeout(timeout);
    cli.set_write_timeout(timeout);
    return cli;
}

// Maps transport-level outcomes; on success yields the parsed JSON body.
Result<json> interpret(const httplib::Result& res, const std::string& what) {
    if (!res) {
        return make_error(ErrorCode::TransportError,
                          what + ": " + httplib::to_string(res.error()));
    }
    if (res->status >= 500) {
        return make_error(ErrorCode::TransportError, what + ": remote answered " + std::to_string(res->status));
    }
    if (res->status != 200) {
        return make_error(ErrorCode::ProtocolError, what + ": unexpected status " + std::to_string(res->status));
    }
    auto body = json::parse(res->body, nullptr, false);
    if (body.is_discarded() || !body.is_object()) {
        return make_error(ErrorCode::ProtocolError, what + ": response is not a JSON object");
    }
    return body;
}

bool stub_interferes(StubMode mode, httplib::Response& res) {
    switch (mode) {
        case StubMode::Unavailable:
            res.status = 503;
            res.set_content(R"({"error":"unavailable"})", kJson);
            return true;
        case StubMode::Malformed:
            res.status = 200;
            res.set_content("<<not the wire format>>", "text/plain");
            return true;
        case StubMode::Normal:
            break;
    }
    return false;
}

}  // namespace

HttpMinistryClient::HttpMinistryClient(std::string base_url, std::chrono::milliseconds timeout)
    : base_url_(std::move(base_url)), timeout_(timeout) {}

Result<std::string> HttpMinistryClient::submit(const MinistryRequest& request) {
    json body{{"application_id", request.application_id},
              {"person", {{"name", request.full_name}, {"date_of_birth", format_date(request.date_of_birth)}}},
              {"category", to_string(request.category)},
              {"documents", request.documents}};
    auto cli = make_client(base_url_, timeout_);
    auto parsed = interpret(cli.Post("/applications", body.dump(), kJson), "ministry submit");
    if (!parsed) {
        return std::move(parsed).error();
    }
    auto it = parsed->find("ack");
    if (it == parsed->end() || !it->is_string() || it->get<std::string>().empty()) {
        return make_error(ErrorCode::ProtocolError, "ministry submit: response lacks an ack token");
    }
    return it->get<std::string>();
}

Result<std::optional<MinistryDecision>> HttpMinistryClient::fetch_decision(const std::string& application_id) {
    auto cli = make_client(base_url_, timeout_);
    auto parsed = interpret(cli.Get("/applications/" + httplib::detail::encode_url(application_id) + "/decision"),
                            "ministry decision");
    if (!parsed) {
        return std::move(parsed).error();
    }
    const auto decision = parsed->value("decision", std::string());
    if (decision == "pending") {
        return std::optional<MinistryDecision>{};
    }
    if (decision == "approved") {
        auto id = parsed->value("scientist_id", std::string());
        if (id.empty()) {
            return make_error(ErrorCode::ProtocolError, "ministry decision: approval without scientist_id");
        }
        return std::optional{MinistryDecision::approve(std::move(id))};
    }
    if (decision == "rejected") {
        return std::optional{MinistryDecision::reject(parsed->value("reason", std::string()))};
    }
    return make_error(ErrorCode::ProtocolError, "ministry decision: unknown decision '" + decision + "'");
}

HttpBibliographyClient::HttpBibliographyClient(std::string base_url, std::chrono::milliseconds timeout)
    : base_url_(std::move(base_url)), timeout_(timeout) {}

Result<std::vector<PublicationRecord>> HttpBibliographyClient::fetch(const std::string& author_id) {
    auto cli = make_client(base_url_, timeout_);
    auto parsed = interpret(cli.Get("/authors/" + httplib::detail::encode_url(author_id) + "/records"),
                            "bibliography fetch");
    if (!parsed) {
        return std::move(parsed).error();
    }
    auto it = parsed->find("records");
    if (it == parsed->end() || !it->is_array()) {
        return make_error(ErrorCode::ProtocolError, "bibliography fetch: response lacks a records array");
    }
    std::vector<PublicationRecord> out;
    for (const auto& item : *it) {
        auto rec = codec::decode_publication(item);
        if (!rec) {
            return make_error(ErrorCode::ProtocolError, "bibliography fetch: " + rec.error().message);
        }
        out.push_back(std::move(*rec));
    }
    return out;
}

MinistryStub::MinistryStub() {
    auto& svr = server_.server();
    svr.Post("/applications", [this](const httplib::Request& req, httplib::Response& res) {
        if (stub_interferes(mode_, res)) {
            return;
        }
        auto body = json::parse(req.body, nullptr, false);
        if (body.is_discarded() || !body.is_object() || !body.contains("application_id") ||
            !body["application_id"].is_string() || !body.contains("person") || !body.contains("category")) {
            res.status = 400;
            res.set_content(R"({"error":"malformed submission"})", kJson);
            return;
        }
        std::lock_guard lock(mutex_);
        auto& sub = submissions_[body["application_id"].get<std::string>()];
        if (sub.count == 0) {
            sub.ack = "ACK-" + std::to_string(next_id_++);
            if (auto_approve_) {
                sub.decision = MinistryDecision::approve("SID-" + sub.ack.substr(4));
            }
        }
        ++sub.count;
        res.set_content(json{{"ack", sub.ack}}.dump(), kJson);
    });
    svr.Get(R"(/applications/([^/]+)/decision)", [this](const httplib::Request& req, httplib::Response& res) {
        if (stub_interferes(mode_, res)) {
            return;
        }
        std::lock_guard lock(mutex_);
        auto it = submissions_.find(req.matches[1]);
        if (it == submissions_.end()) {
            res.status = 404;
            res.set_content(R"({"error":"unknown application"})", kJson);
            return;
        }
        json out;
        if (!it->second.decision) {
            out = {{"decision", "pending"}};
        } else if (it->second.decision->approved) {
            out = {{"decision", "approved"}, {"scientist_id", it->second.decision->scientist_id}};
        } else {
            out = {{"decision", "rejected"}, {"reason", it->second.decision->reason}};
        }
        res.set_content(out.dump(), kJson);
    });
    // Operator hook for scripted demos: record the ministry's decision.
    svr.Post(R"(/applications/([^/]+)/decision)", [this](const httplib::Request& req, httplib::Response& res) {
        auto body = json::parse(req.body, nullptr, false);
        if (body.is_discarded() || !body.is_object()) {
            res.status = 400;
            return;
        }
        const auto decision = body.value("decision", std::string());
        if (decision == "approved") {
            decide(req.matches[1], MinistryDecision::approve(body.value("scientist_id", std::string())));
        } else if (decision == "rejected") {
            decide(req.matches[1], MinistryDecision::reject(body.value("reason", std::string())));
        } else {
            res.status = 400;
            return;
        }
        res.set_content(R"({"ok":true})", kJson);
    });
}

MinistryStub::~MinistryStub() { stop(); }

Result<int> MinistryStub::start(const std::string& host, int port) { return server_.start(host, port); }

void MinistryStub::stop() { server_.stop(); }

void MinistryStub::decide(const std::string& application_id, MinistryDecision decision) {
    std::lock_guard lock(mutex_);
    submissions_[application_id].decision = std::move(decision);
}

std::size_t MinistryStub::submissions() const {
    std::lock_guard lock(mutex_);
    std::size_t n = 0;
    for (const auto& [_, s] : submissions_) {
        n += s.count;
    }
    return n;
}

std::size_t MinistryStub::submissions_of(const std::string& application_id) const {
    std::lock_guard lock(mutex_);
    auto it = submissions_.find(application_id);
    return it == submissions_.end() ? 0 : it->second.count;
}

BibliographyStub::BibliographyStub() {
    server_.server().Get(R"(/authors/([^/]+)/records)", [this](const httplib::Request& req,
                                                                httplib::Response& res) {
        if (stub_interferes(mode_, res)) {
            return;
        }
        const std::string author = req.matches[1];
        json records = json::array();
        for (const auto& r : this->records(author)) {
            records.push_back(codec::encode(r));
        }
        res.set_content(json{{"author_id", author}, {"records", records}}.dump(), kJson);
    });
}

BibliographyStub::~BibliographyStub() { stop(); }

Result<int> BibliographyStub::start(const std::string& host, int port) { return server_.start(host, port); }

void BibliographyStub::stop() { server_.stop(); }

void BibliographyStub::set_records(const std::string& author_id, std::vector<PublicationRecord> records) {
    std::lock_guard lock(mutex_);
    records_[author_id] = std::move(records);
}

std::vector<PublicationRecord> BibliographyStub::records(const std::string& author_id) const {
    std::lock_guard lock(mutex_);
    auto it = records_.find(author_id);
    return it == records_.end() ? std::vector<PublicationRecord>{} : it->second;
}

Result<std::size_t> BibliographyStub::load_fixtures(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::directory_iterator it(dir, ec);
    if (ec) {
        return make_error(ErrorCode::FileUnreadable, "cannot read fixture directory " + dir.string());
    }
    std::size_t loaded = 0;
    for (const auto& entry : it) {
        if (entry.path().extension() != ".json") {
            continue;
        }
        std::ifstream in(entry.path());
        std::stringstream buf;
        buf << in.rdbuf();
        auto body = json::parse(buf.str(), nullptr, false);
        if (body.is_discarded() || !body.contains("records") || !body["records"].is_array()) {
            return make_error(ErrorCode::FormatError, "fixture " + entry.path().string() + " is malformed");
        }
        std::vector<PublicationRecord> records;
        for (const auto& item : body["records"]) {
            auto rec = codec::decode_publication(item);
            if (!rec) {
                return make_error(ErrorCode::FormatError,
                                  "fixture " + entry.path().string() + ": " + rec.error().message);
            }
            records.push_back(std::move(*rec));
        }
        set_records(body.value("author_id", entry.path().stem().string()), std::move(records));
        ++loaded;
    }
    return loaded;
}

}  // namespace hrm
