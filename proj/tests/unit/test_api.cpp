#include <catch_amalgamated.hpp>

#include <httplib.h>

#include "harness.hpp"
#include "hrm/api.hpp"
#include "hrm/runtime.hpp"

using hrm::ErrorCode;
using testing::ApiClient;
using testing::D;
using testing::json;

namespace {

struct ApiFixture {
    ApiFixture() : fx({}, &ministry, &bibliography), api(*fx.service) {
        REQUIRE(api.start("127.0.0.1", 0));
        api.set_ready(true);
        client = ApiClient(api.base_url());
    }
    ~ApiFixture() { api.stop(); }

    testing::FakeMinistry ministry;
    testing::FakeBibliography bibliography;
    testing::ServiceFixture fx;
    hrm::ApiServer api;
    ApiClient client{""};
};

std::string create_person(ApiClient& c, const std::string& name) {
    auto r = c.post("/persons", {{"full_name", name}, {"date_of_birth", "1970-03-12"}, {"doctoral_degree", true}});
    REQUIRE(r.status == 201);
    return r.body["person_id"];
}

}  // namespace

TEST_CASE("every error code has its status", "[api]") {
    const std::map<std::string, int> expected{
        {"NotFound", 404},          {"VersionConflict", 409},   {"AlreadyDecided", 409},
        {"AlreadyRegistered", 409}, {"DuplicateScientistId", 409},
        {"ValidationError", 422},   {"UnknownGrade", 422},      {"TrackMismatch", 422},
        {"InvalidTrack", 422},      {"IllegalTransition", 422}, {"GuardViolation", 422},
        {"NonExpiring", 422},       {"CategoryNotRegistrable", 422}, {"MissingDoctorate", 422},
        {"NoAuthorMapping", 422},   {"OwnerNotFound", 422},     {"EmptyPath", 422},
        {"FileUnreadable", 422},    {"FormatError", 422},       {"TransportError", 502},
        {"ProtocolError", 502},     {"Unauthorized", 401},      {"StorageError", 500},
    };
    REQUIRE(hrm::kAllErrorCodes.size() == expected.size());
    for (auto code : hrm::kAllErrorCodes) {
        INFO(hrm::to_string(code));
        CHECK(hrm::http_status(code) == expected.at(std::string(hrm::to_string(code))));
    }
}

TEST_CASE("authentication and readiness", "[api]") {
    ApiFixture f;
    CHECK(ApiClient(f.api.base_url(), "wrong").get("/grades").status == 401);
    httplib::Client raw(f.api.base_url());
    auto anonymous = raw.Get("/persons");
    REQUIRE(anonymous);
    CHECK(anonymous->status == 401);
    CHECK(json::parse(anonymous->body)["error"] == "Unauthorized");

    auto ready = raw.Get("/health/ready");
    REQUIRE(ready);
    CHECK(ready->status == 200);
    f.api.set_ready(false);
    CHECK(raw.Get("/health/ready")->status == 503);

    auto grades = f.client.get("/grades");
    CHECK(grades.status == 200);
    CHECK(grades.body.size() == hrm::GradeCatalog::all().size());
    auto classified = f.client.get("/grades/classify?name=senior%20assistant");
    CHECK(classified.status == 200);
    CHECK(f.client.get("/grades/classify?name=wizard").status == 422);
}

TEST_CASE("committee selection with optimistic versions", "[api]") {
    ApiFixture f;
    auto opened = f.client.post("/procedures", {{"grade", "assistant professor"}, {"council_ref", "FC-2024/7"}});
    REQUIRE(opened.status == 201);
    const std::string id = opened.body["procedure_id"];
    CHECK(opened.body["state"] == "Initiated");
    CHECK(opened.body["version"] == 1);

    const json select{{"event", "SelectCommittee"}, {"payload", {{"members", {"p-10", "p-11", "p-12"}}}}};
    auto ok = f.client.post("/procedures/" + id + "/events", select, {{"If-Match", "1"}});
    REQUIRE(ok.status == 200);
    CHECK(ok.body["state"] == "CommitteeSelected");
    CHECK(ok.body["version"] == 2);
    CHECK(ok.body["legal_events"] == json{"AnnounceVacancy", "Terminate"});

    auto stale = f.client.post("/procedures/" + id + "/events", select, {{"If-Match", "1"}});
    CHECK(stale.status == 409);
    CHECK(stale.body["error"] == "VersionConflict");

    auto missing = f.client.post("/procedures/" + id + "/events", select);
    CHECK(missing.status == 422);
    CHECK(missing.body["detail"] == "expected_version");

    auto illegal = f.client.post("/procedures/" + id + "/events", {{"event", "SenateConfirmation"}},
                                 {{"X-Expected-Version", "\"2\""}});
    CHECK(illegal.status == 422);
    CHECK(illegal.body["error"] == "IllegalTransition");

    CHECK(f.client.post("/procedures/procedure-99/events", select, {{"If-Match", "1"}}).status == 404);
    CHECK(f.client.post("/procedures", {{"grade", "wizard"}, {"council_ref", "x"}}).status == 422);
    CHECK(f.client.post("/procedures", {{"grade", {{"name", "research advisor"}, {"track", "Scientist"}}},
                                        {"council_ref", "x"}})
              .body["error"] == "InvalidTrack");
    CHECK(f.client.get("/procedures/" + id).body["history"].size() == 2);
    CHECK(f.client.get("/procedures/" + id + "/log").text.find("SelectCommittee") != std::string::npos);
}

TEST_CASE("expiry review over http matches the oracle", "[api][expiry]") {
    ApiFixture f;
    namespace e = hrm::events;
    const auto person = create_person(f.client, "Ana Horvat");
    auto& svc = *f.fx.service;
    const std::vector<std::pair<std::string, std::string>> promotions{{"associate professor", "2010-01-15"},
                                                                      {"assistant professor", "2009-12-01"}};
    for (const auto& [grade, effective] : promotions) {
        auto p = svc.open_procedure(f.fx.actor, *hrm::resolve_grade(grade, {}), "FC");
        REQUIRE(p);
        auto cur = *p;
        for (hrm::EventPayload ev : std::vector<hrm::EventPayload>{
                 e::SelectCommittee{{"c1", "c2", "c3"}}, e::AnnounceVacancy{D("2009-01-01")},
                 e::ReceiveApplication{person, {}}, e::CloseApplications{}, e::SubmitReport{"r", {}},
                 e::BoardDecision{{person}}, e::SenateConfirmation{}, e::RecognizeAppointments{D(effective)}}) {
            auto next = svc.advance(f.fx.actor, cur.procedure_id, ev, cur.version);
            REQUIRE(next);
            cur = *next;
        }
    }
    for (const auto* as_of : {"2014-08-31", "2014-09-01", "2014-11-20", "2014-12-01", "2015-02-01"}) {
        INFO(as_of);
        auto r = f.client.get(std::string("/expiry-review?as_of=") + as_of);
        REQUIRE(r.status == 200);
        std::size_t due = 0;
        for (const auto* valid_to : {"2014-12-01", "2015-01-15"}) {
            auto v = oracle::evaluate(oracle::from_date(D(valid_to)), oracle::from_date(D(as_of)));
            if (v.state == "Active") continue;
            REQUIRE(r.body["rows"].size() > due);
            const auto& row = r.body["rows"][due++];
            CHECK(row["valid_to"] == valid_to);
            CHECK(row["status"] == v.state);
            CHECK(row["days_remaining"] == v.days_remaining);
            CHECK(row["deadline_to_initiate"] == oracle::to_string(v.deadline));
        }
        CHECK(r.body["rows"].size() == due);
    }
    CHECK(f.client.get("/expiry-review").status == 422);
    CHECK(f.client.get("/expiry-review?as_of=2014-02-30").status == 422);
    auto csv = f.client.get("/expiry-review/report?as_of=2014-11-20");
    CHECK(csv.text.rfind("person,grade,valid_to,status,deadline_to_initiate\n", 0) == 0);

    auto generated = f.client.post("/expiry-review/notifications?as_of=2014-11-20");
    REQUIRE(generated.status == 200);
    CHECK(generated.body.size() == 2);
    const std::string nid = generated.body[0]["notification_id"];
    auto closed = f.client.post("/expiry-review/notifications/" + nid + "/close");
    CHECK(closed.body["open"] == false);
}

TEST_CASE("registry, publications, documents and requirements over http", "[api]") {
    ApiFixture f;
    const auto person = create_person(f.client, "Ana Horvat");

    auto submitted = f.client.post("/registry/applications", {{"person_id", person}, {"category", "full professor"}});
    REQUIRE(submitted.status == 201);
    const std::string app = submitted.body["application_id"];
    CHECK(f.client.post("/registry/applications", {{"person_id", person}, {"category", "full professor"}}).status ==
          409);
    CHECK(f.client.post("/registry/applications", {{"person_id", person}, {"category", "lecturer"}}).status == 422);
    CHECK(f.client.post("/registry/applications/" + app + "/decision", {{"decision", "maybe"}}).status == 422);
    auto approved = f.client.post("/registry/applications/" + app + "/decision",
                                  {{"decision", "approved"}, {"scientist_id", "SID-9"}});
    CHECK(approved.status == 200);
    CHECK(approved.body["status"] == "Approved");
    CHECK(f.client.get("/registry/entries").body.size() == 1);

    f.bibliography.records["A"] = {{"k1", "T", "journal article", D("2020-01-01"), "https://x/1"}};
    CHECK(f.client.post("/publications/sync/" + person).status == 422);
    CHECK(f.client.put("/publications/authors/" + person, {{"author_id", "A"}}).status == 200);
    auto sync = f.client.post("/publications/sync/" + person);
    CHECK(sync.body["added"] == 1);
    f.bibliography.fail = true;
    CHECK(f.client.post("/publications/sync/" + person).status == 502);
    CHECK(f.client.get("/publications?person=" + person).body.size() == 1);
    CHECK(f.client.del("/publications/" + person + "/k1").status == 200);

    auto doc = f.client.post("/documents", {{"owner", {{"kind", "registry_application"}, {"id", app}}},
                                            {"path", "repo://x.pdf"},
                                            {"declared_format", "pdf"}});
    REQUIRE(doc.status == 201);
    const std::string did = doc.body["document_id"];
    CHECK(f.client.get("/documents/" + did).body["path"] == "repo://x.pdf");
    CHECK(f.client.get("/documents?owner_kind=registry_application&owner_id=" + app).body.size() == 1);
    CHECK(f.client.post("/documents", {{"owner", {{"kind", "procedure"}, {"id", "procedure-9"}}}, {"path", "x"}})
              .body["error"] == "OwnerNotFound");
    CHECK(f.client.del("/documents/" + did).status == 200);
    CHECK(f.client.get("/documents/" + did).status == 404);

    CHECK(f.client.post("/requirements", {{"text", "a"}, {"category", "Usability"}, {"priority", "S"}}).status == 201);
    auto imported = f.client.post_text("/requirements/import", ",Functionality,M,b\n", "text/csv");
    CHECK(imported.body["created"] == 1);
    auto exported = f.client.get("/requirements/export");
    CHECK(exported.text == "id,category,priority,text\nrequirement-2,Functionality,M,b\n"
                           "requirement-1,Usability,S,a\n");

    auto audit = f.client.get("/audit");
    REQUIRE(audit.status == 200);
    CHECK(audit.body[0]["actor"] == "hr-officer");
    CHECK(f.client.post("/persons", json::array()).status == 422);
}

TEST_CASE("runtime with the default configuration serves", "[api][runtime]") {
    hrm::ServiceConfig config;
    config.store_path = ":memory:";
    config.port = 0;
    auto rt = hrm::Runtime::create(config);
    REQUIRE(rt);
    auto port = (*rt)->serve();
    REQUIRE(port);
    ApiClient client("http://127.0.0.1:" + std::to_string(*port));
    auto ready = client.get("/health/ready");
    CHECK(ready.status == 200);
    CHECK(ready.body["ready"] == true);
    CHECK((*rt)->ministry_stub() != nullptr);

    // A second server on the same port fails to start.
    hrm::ApiServer clash((*rt)->service());
    auto second = clash.start("127.0.0.1", *port);
    REQUIRE_FALSE(second);
    (*rt)->stop();
}

TEST_CASE("runtime rejects a mismatched grade seed", "[runtime]") {
    hrm::ServiceConfig config;
    config.store_path = ":memory:";
    config.grade_catalog = testing::fixture("employees.csv");
    CHECK_FALSE(hrm::Runtime::create(config, hrm::system_clock(), true));
    config.grade_catalog = std::string(HRM_SOURCE_DIR) + "/data/grades.jsonl";
    CHECK(hrm::Runtime::create(config, hrm::system_clock(), true));
    config.grade_catalog = "/nonexistent/grades.jsonl";
    CHECK(hrm::Runtime::create(config, hrm::system_clock(), true).error().code == ErrorCode::FileUnreadable);
}
