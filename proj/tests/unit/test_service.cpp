#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "harness.hpp"
#include "hrm/event_log.hpp"

using hrm::ErrorCode;
using testing::D;

namespace {

std::string read(const std::string& path) {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

// Drives a fresh procedure to SenateConfirmed with `person` promoted.
hrm::AppointmentProcedure confirmed(testing::ServiceFixture& fx, const std::string& person,
                                    std::string_view grade_name) {
    namespace e = hrm::events;
    auto& svc = *fx.service;
    auto p = svc.open_procedure(fx.actor, *hrm::GradeCatalog::find(grade_name, hrm::GradeTrack::ScientificResearch),
                                "FC-1");
    REQUIRE(p);
    const std::vector<hrm::EventPayload> steps{
        e::SelectCommittee{{"c1", "c2", "c3"}},
        e::AnnounceVacancy{D("2020-01-10")},
        e::ReceiveApplication{person, {"repo://cv.pdf"}},
        e::CloseApplications{},
        e::SubmitReport{"repo://report.pdf", {{person, "excellent"}}},
        e::BoardDecision{{person}},
        e::SenateConfirmation{},
    };
    auto current = *p;
    for (const auto& step : steps) {
        auto next = svc.advance(fx.actor, current.procedure_id, step, current.version);
        INFO((next ? "" : next.error().message));
        REQUIRE(next);
        current = *next;
    }
    return current;
}

hrm::AppointmentProcedure promote(testing::ServiceFixture& fx, const std::string& person, const std::string& date,
                                  std::string_view grade_name = "associate professor") {
    const auto p = confirmed(fx, person, grade_name);
    auto done = fx.service->advance(fx.actor, p.procedure_id, hrm::events::RecognizeAppointments{D(date)}, p.version);
    REQUIRE(done);
    return *done;
}

}  // namespace

TEST_CASE("employee import reports created, skipped and failed rows", "[service]") {
    testing::ServiceFixture fx;
    auto report = fx.service->import_employees(fx.actor, read(testing::fixture("employees.csv")));
    REQUIRE(report);
    CHECK(report->created == 3);
    REQUIRE(report->skipped.size() == 1);
    CHECK(report->skipped[0].line == 6);
    REQUIRE(report->errors.size() == 1);
    CHECK(report->errors[0].line == 4);
    CHECK(report->errors[0].reason.find("employment_start") != std::string::npos);

    auto persons = fx.service->list_persons();
    REQUIRE(persons->size() == 3);
    CHECK((*persons)[2].full_name == "Novak, Luka");
    CHECK(fx.service->list_employees()->size() == 3);

    // Importing again creates nothing new.
    auto again = fx.service->import_employees(fx.actor, read(testing::fixture("employees.csv")));
    CHECK(again->created == 0);
    CHECK(again->skipped.size() == 4);
}

TEST_CASE("every successful mutation writes one audit entry", "[service][audit]") {
    testing::FakeMinistry ministry;
    testing::FakeBibliography bib;
    bib.records["A"] = {};
    testing::ServiceFixture fx({}, &ministry, &bib);
    auto& svc = *fx.service;
    const auto& a = fx.actor;
    std::size_t expected = 0;
    auto audited = [&] { return svc.audit_log()->size(); };

    const auto p = fx.person("Ana Horvat");
    CHECK(audited() == ++expected);
    REQUIRE(svc.add_employee(a, p, hrm::StaffGroup::Academic, D("2010-01-01")));
    CHECK(audited() == ++expected);
    CHECK_FALSE(svc.add_employee(a, "person-99", hrm::StaffGroup::Academic, D("2010-01-01")));
    CHECK(audited() == expected);

    promote(fx, p, "2020-03-01");
    expected += 9;
    CHECK(audited() == expected);

    REQUIRE(svc.generate_review(a, D("2024-12-15")));
    CHECK(audited() == ++expected);
    auto notes = svc.list_notifications();
    REQUIRE(notes->size() == 1);
    REQUIRE(svc.close_notification(a, (*notes)[0].notification_id));
    CHECK(audited() == ++expected);

    auto app = svc.submit_registration(a, p, "associate professor", {});
    REQUIRE(app);
    CHECK(audited() == ++expected);
    REQUIRE(svc.forward_application(a, app->application_id));
    CHECK(audited() == ++expected);
    REQUIRE(svc.poll_ministry(a, app->application_id));
    CHECK(audited() == ++expected);
    ministry.decide(app->application_id, hrm::MinistryDecision::approve("SID-1"));
    REQUIRE(svc.poll_ministry(a, app->application_id));
    CHECK(audited() == ++expected);

    REQUIRE(svc.map_author(a, p, "A"));
    CHECK(audited() == ++expected);
    REQUIRE(svc.sync_publications(a, p));
    CHECK(audited() == ++expected);

    auto proc = svc.list_procedures();
    auto doc = svc.attach(a, {hrm::OwnerKind::Procedure, (*proc)[0].procedure_id}, "repo://x", "pdf", "");
    REQUIRE(doc);
    CHECK(audited() == ++expected);
    REQUIRE(svc.detach(a, doc->document_id));
    CHECK(audited() == ++expected);

    REQUIRE(svc.add_requirement(a, "x", "Usability", "C"));
    CHECK(audited() == ++expected);
    REQUIRE(svc.import_requirements(a, ""));
    CHECK(audited() == ++expected);

    auto log = svc.audit_log();
    CHECK((*log)[0].operation == "register_person");
    CHECK((*log)[0].actor == "tester");
    CHECK(log->back().operation == "import_requirements");
}

TEST_CASE("re-appointment ends the earlier term", "[service]") {
    testing::ServiceFixture fx;
    const auto p = fx.person("Ana Horvat");
    promote(fx, p, "2020-03-01");
    promote(fx, p, "2023-06-01");
    auto appts = fx.service->list_appointments(p);
    REQUIRE(appts);
    REQUIRE(appts->size() == 2);
    CHECK((*appts)[0].valid_to == D("2023-06-01"));
    CHECK((*appts)[1].valid_from == D("2023-06-01"));
    CHECK((*appts)[1].valid_to == D("2028-06-01"));

    // A recognition that starts before an existing term is refused and nothing changes.
    const auto pending = confirmed(fx, p, "associate professor");
    const auto before = fx.store->dump();
    auto refused = fx.service->advance(fx.actor, pending.procedure_id,
                                       hrm::events::RecognizeAppointments{D("2019-01-01")}, pending.version);
    REQUIRE_FALSE(refused);
    CHECK(refused.error().code == ErrorCode::GuardViolation);
    CHECK(fx.store->dump() == before);

    // Different grades do not interact.
    promote(fx, p, "2024-01-01", "full professor");
    CHECK(fx.service->list_appointments(p)->size() == 3);
}

TEST_CASE("stored procedures round trip through the event log", "[service]") {
    testing::ServiceFixture fx;
    const auto p = fx.person("Ana Horvat");
    const auto done = promote(fx, p, "2020-03-01");
    auto loaded = fx.service->get_procedure(done.procedure_id);
    REQUIRE(loaded);
    CHECK(*loaded == done);
    CHECK(loaded->version == 9);

    auto log = fx.service->export_procedure_log(done.procedure_id);
    REQUIRE(log);
    auto events = hrm::parse_event_log(*log);
    REQUIRE(events);
    CHECK(hrm::replay(*events) == hrm::ProcedureState::Recognized);
    REQUIRE(events->size() == done.history.size());
    for (std::size_t i = 0; i < events->size(); ++i) {
        CHECK((*events)[i] == done.history[i].event);
    }

    CHECK(fx.service->get_procedure("procedure-99").error().code == ErrorCode::NotFound);
    CHECK(fx.service->advance(fx.actor, done.procedure_id, hrm::events::Terminate{"x"}, 9).error().code ==
          ErrorCode::IllegalTransition);
}

TEST_CASE("expiry review reads stored appointments", "[service][expiry]") {
    testing::ServiceFixture fx;
    const auto p = fx.person("Ana Horvat");
    promote(fx, p, "2010-01-15");
    auto rows = fx.service->expiry_review(D("2014-11-20"));
    REQUIRE(rows);
    REQUIRE(rows->size() == 1);
    CHECK(rows->front().valid_to == D("2015-01-15"));
    CHECK(rows->front().status.state == hrm::ExpiryState::InitiationDue);

    auto first = fx.service->generate_review(fx.actor, D("2014-11-20"));
    REQUIRE(first->size() == 1);
    CHECK(fx.service->generate_review(fx.actor, D("2014-11-21"))->empty());
    CHECK(fx.service->close_notification(fx.actor, "notification-99").error().code == ErrorCode::NotFound);
}
