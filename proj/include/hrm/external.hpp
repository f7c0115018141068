#pragma once

// Clients for the Ministry registry endpoint and the national bibliography
// service, plus the stub servers that speak the same wire formats.
//
// Ministry wire format
//   POST /applications
//     {"application_id", "person": {"name", "date_of_birth"}, "category", "documents": [...]}
//     -> 200 {"ack": "<token>"}   (resubmitting an application_id returns the same token)
//   GET  /applications/{application_id}/decision
//     -> 200 {"decision": "pending"}
//      | 200 {"decision": "approved", "scientist_id": "..."}
//      | 200 {"decision": "rejected", "reason": "..."}
//
// Bibliography wire format
//   GET /authors/{author_id}/records
//     -> 200 {"author_id", "records": [{"source_key", "title", "type_of_work",
//                                       "publishing_date", "url"}, ...]}
//
// Connection failures and 5xx responses are TransportError; anything else
// that does not match the format is ProtocolError.

#include <atomic>
#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hrm/background_server.hpp"
#include "hrm/bibliography.hpp"
#include "hrm/registry.hpp"
#include "hrm/result.hpp"

namespace hrm {

struct MinistryRequest {
    std::string application_id;
    std::string full_name;
    Date date_of_birth;
    RegistryCategory category = RegistryCategory::ResearchAssociate;
    std::vector<std::string> documents;
};

class MinistryClient {
public:
    virtual ~MinistryClient() = default;
    /// Returns the acknowledgment token.
    virtual Result<std::string> submit(const MinistryRequest& request) = 0;
    /// nullopt while the ministry has not decided.
    virtual Result<std::optional<MinistryDecision>> fetch_decision(const std::string& application_id) = 0;
};

class BibliographyClient {
public:
    virtual ~BibliographyClient() = default;
    virtual Result<std::vector<PublicationRecord>> fetch(const std::string& author_id) = 0;
};

class HttpMinistryClient final : public MinistryClient {
public:
    explicit HttpMinistryClient(std::string base_url,
                                std::chrono::milliseconds timeout = std::chrono::seconds(5));
    Result<std::string> submit(const MinistryRequest& request) override;
    Result<std::optional<MinistryDecision>> fetch_decision(const std::string& application_id) override;

private:
    std::string base_url_;
    std::chrono::milliseconds timeout_;
};

class HttpBibliographyClient final : public BibliographyClient {
public:
    explicit HttpBibliographyClient(std::string base_url,
                                    std::chrono::milliseconds timeout = std::chrono::seconds(5));
    Result<std::vector<PublicationRecord>> fetch(const std::string& author_id) override;

private:
    std::string base_url_;
    std::chrono::milliseconds timeout_;
};

enum class StubMode {
    Normal,
    // Every request answers 503.
    Unavailable,
    // Every request answers 200 with a body that is not the wire format.
    Malformed,
};

class MinistryStub {
public:
    MinistryStub();
    ~MinistryStub();

    Result<int> start(const std::string& host = "127.0.0.1", int port = 0);
    void stop();
    std::string base_url() const { return server_.base_url(); }

    void set_mode(StubMode mode) { mode_ = mode; }
    /// When set, every new submission is approved with a fresh "SID-<n>".
    void set_auto_approve(bool on) { auto_approve_ = on; }
    void decide(const std::string& application_id, MinistryDecision decision);

    std::size_t submissions() const;
    std::size_t submissions_of(const std::string& application_id) const;

private:
    struct Submission {
        std::string ack;
        std::size_t count = 0;
        std::optional<MinistryDecision> decision;
    };

    BackgroundServer server_;
    std::atomic<StubMode> mode_{StubMode::Normal};
    std::atomic<bool> auto_approve_{false};
    mutable std::mutex mutex_;
    std::map<std::string, Submission> submissions_;
    std::size_t next_id_ = 1;
};

class BibliographyStub {
public:
    BibliographyStub();
    ~BibliographyStub();

    Result<int> start(const std::string& host = "127.0.0.1", int port = 0);
    void stop();
    std::string base_url() const { return server_.base_url(); }

    void set_mode(StubMode mode) { mode_ = mode; }
    void set_records(const std::string& author_id, std::vector<PublicationRecord> records);
    std::vector<PublicationRecord> records(const std::string& author_id) const;

    /// Loads every "<author_id>.json" file (wire-format body) in `dir`.
    Result<std::size_t> load_fixtures(const std::filesystem::path& dir);

private:
    BackgroundServer server_;
    std::atomic<StubMode> mode_{StubMode::Normal};
    mutable std::mutex mutex_;
    std::map<std::string, std::vector<PublicationRecord>> records_;
};

}  // namespace hrm
