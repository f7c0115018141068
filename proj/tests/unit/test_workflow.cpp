#include <catch_amalgamated.hpp>

#include <functional>

#include <random>

#include "harness.hpp"
#include "hrm/workflow.hpp"

using hrm::ProcedureState;
using testing::D;
using testing::T;

namespace {

hrm::AcademicGrade grade(std::string_view name, hrm::GradeTrack track = hrm::GradeTrack::ScientificResearch) {
    return *hrm::GradeCatalog::find(name, track);
}

oracle::RefEvent ref(std::string kind, std::vector<std::string> people = {}, std::string text = {}) {
    return oracle::RefEvent{std::move(kind), std::move(people), std::move(text), {}, true};
}

hrm::ProcedureEvent ev(const oracle::RefEvent& r) { return testing::to_event(r, T("2020-01-01T09:00:00Z")); }

hrm::AppointmentProcedure opened(std::string_view grade_name = "assistant professor") {
    auto p = hrm::open_procedure("p-1", grade(grade_name), ev(ref("InitiateDecision", {}, "FC-2024/7")));
    REQUIRE(p);
    return *p;
}

hrm::AppointmentProcedure apply(hrm::AppointmentProcedure p, const oracle::RefEvent& r) {
    auto next = hrm::advance(p, ev(r), p.version);
    INFO(r.kind << ": " << (next ? "" : next.error().message));
    REQUIRE(next);
    return *next;
}

// Runs the same event list through the library and the reference machine,
// checking each step agrees.
void compare_with_reference(const std::vector<oracle::RefEvent>& events) {
    oracle::RefMachine machine;
    std::vector<hrm::ProcedureEvent> history;
    std::optional<hrm::AppointmentProcedure> proc;
    for (const auto& r : events) {
        const auto expected = machine.apply(r);
        const auto e = ev(r);
        hrm::Result<hrm::AppointmentProcedure> got =
            proc ? hrm::advance(*proc, e, proc->version) : hrm::open_procedure("p", grade("full professor"), e);
        INFO("event " << r.kind);
        REQUIRE(got.has_value() == expected.ok);
        if (!expected.ok) {
            CHECK(hrm::to_string(got.error().code) == expected.error);
            history.push_back(e);
            auto replayed = hrm::replay(history);
            REQUIRE_FALSE(replayed);
            CHECK(replayed.error().code == got.error().code);
            return;
        }
        history.push_back(e);
        proc = *got;
        CHECK(hrm::to_string(proc->state()) == expected.state);
        CHECK(proc->version == static_cast<std::int64_t>(history.size()));
        auto replayed = hrm::replay(history);
        REQUIRE(replayed);
        CHECK(*replayed == proc->state());
    }
}

}  // namespace

TEST_CASE("open_procedure starts in Initiated", "[workflow]") {
    auto p = opened();
    CHECK(p.state() == ProcedureState::Initiated);
    CHECK(p.version == 1);
    REQUIRE(p.history.size() == 1);
    CHECK(p.history[0].event.kind() == hrm::EventKind::InitiateDecision);
    CHECK(p.current.council_ref == "FC-2024/7");
}

TEST_CASE("open_procedure refuses registry tracks", "[workflow]") {
    auto p = hrm::open_procedure("p-1", grade("research advisor", hrm::GradeTrack::Scientist),
                                 ev(ref("InitiateDecision", {}, "FC-1")));
    REQUIRE_FALSE(p);
    CHECK(p.error().code == hrm::ErrorCode::InvalidTrack);
    auto r = hrm::open_procedure("p-1", grade("assistant", hrm::GradeTrack::Researcher),
                                 ev(ref("InitiateDecision", {}, "FC-1")));
    CHECK(r.error().code == hrm::ErrorCode::InvalidTrack);
    CHECK(hrm::open_procedure("p-1", grade("assistant", hrm::GradeTrack::Associate),
                              ev(ref("InitiateDecision", {}, "FC-1"))));
    CHECK(hrm::open_procedure("p-1", grade("lector", hrm::GradeTrack::Teaching),
                              ev(ref("InitiateDecision", {}, "FC-1"))));
}

TEST_CASE("select committee moves to CommitteeSelected", "[workflow]") {
    auto p = apply(opened(), ref("SelectCommittee", {"c1", "c2", "c3"}));
    CHECK(p.state() == ProcedureState::CommitteeSelected);
    CHECK(p.version == 2);
}

TEST_CASE("stale version is a conflict", "[workflow]") {
    auto p = apply(opened(), ref("SelectCommittee", {"c1", "c2", "c3"}));
    auto stale = hrm::advance(p, ev(ref("AnnounceVacancy")), 1);
    REQUIRE_FALSE(stale);
    CHECK(stale.error().code == hrm::ErrorCode::VersionConflict);
}

TEST_CASE("report before closing applications is illegal", "[workflow]") {
    auto p = opened();
    p = apply(p, ref("SelectCommittee", {"c1", "c2", "c3"}));
    p = apply(p, ref("AnnounceVacancy"));
    p = apply(p, ref("ReceiveApplication", {"a1"}));
    REQUIRE(p.state() == ProcedureState::AcceptingApplications);
    auto r = hrm::advance(p, ev(ref("SubmitReport", {}, "r")), p.version);
    REQUIRE_FALSE(r);
    CHECK(r.error().code == hrm::ErrorCode::IllegalTransition);
}

TEST_CASE("full procedure recognizes one appointment", "[workflow]") {
    auto p = opened("associate professor");
    p = apply(p, ref("SelectCommittee", {"c1", "c2", "c3"}));
    p = apply(p, ref("AnnounceVacancy"));
    p = apply(p, ref("ReceiveApplication", {"a1"}));
    p = apply(p, ref("ReceiveApplication", {"a2"}));
    p = apply(p, ref("CloseApplications"));
    auto report = ref("SubmitReport", {}, "repo://reports/1.pdf");
    report.assessed = {"a1", "a2"};
    p = apply(p, report);
    p = apply(p, ref("BoardDecision", {"a1"}));
    p = apply(p, ref("SenateConfirmation"));

    auto appts = hrm::recognize(p, D("2020-03-01"), hrm::AppointmentTerms{});
    REQUIRE(appts);
    REQUIRE(appts->size() == 1);
    CHECK((*appts)[0].person_id == "a1");
    CHECK((*appts)[0].valid_from == D("2020-03-01"));
    CHECK((*appts)[0].valid_to == D("2025-03-01"));
    CHECK((*appts)[0].procedure_id == "p-1");

    p = apply(p, ref("RecognizeAppointments"));
    CHECK(p.state() == ProcedureState::Recognized);
    CHECK(p.version == 10);
    auto events = p.events();
    CHECK(hrm::replay(events) == ProcedureState::Recognized);
}

TEST_CASE("recognize with nobody promoted and for non-expiring grades", "[workflow]") {
    auto p = opened("professor emeritus");
    p = apply(p, ref("SelectCommittee", {"c1", "c2", "c3"}));
    p = apply(p, ref("AnnounceVacancy"));
    p = apply(p, ref("ReceiveApplication", {"a1"}));
    p = apply(p, ref("CloseApplications"));
    p = apply(p, ref("SubmitReport", {}, "r"));

    auto none = apply(p, ref("BoardDecision", {}));
    none = apply(none, ref("SenateConfirmation"));
    auto empty = hrm::recognize(none, D("2020-03-01"), {});
    REQUIRE(empty);
    CHECK(empty->empty());
    CHECK(apply(none, ref("RecognizeAppointments")).state() == ProcedureState::Recognized);

    auto one = apply(p, ref("BoardDecision", {"a1"}));
    one = apply(one, ref("SenateConfirmation"));
    auto emeritus = hrm::recognize(one, D("2020-03-01"), {});
    REQUIRE(emeritus);
    REQUIRE(emeritus->size() == 1);
    CHECK_FALSE((*emeritus)[0].valid_to.has_value());

    hrm::AppointmentTerms seven{7, {}};
    auto configured = hrm::recognize(one, D("2020-03-01"), seven);
    CHECK((*configured)[0].valid_to == D("2027-03-01"));

    auto early = hrm::recognize(p, D("2020-03-01"), {});
    REQUIRE_FALSE(early);
    CHECK(early.error().code == hrm::ErrorCode::IllegalTransition);
}

TEST_CASE("zero applicants may close", "[workflow]") {
    auto p = opened();
    p = apply(p, ref("SelectCommittee", {"c1", "c2", "c3"}));
    p = apply(p, ref("AnnounceVacancy"));
    p = apply(p, ref("CloseApplications"));
    CHECK(p.state() == ProcedureState::ApplicationsClosed);
}

TEST_CASE("guards name what failed", "[workflow]") {
    auto p = opened();
    auto guard_of = [](const hrm::AppointmentProcedure& proc, const oracle::RefEvent& r) {
        auto res = hrm::advance(proc, ev(r), proc.version);
        REQUIRE_FALSE(res);
        CHECK(res.error().code == hrm::ErrorCode::GuardViolation);
        return res.error().detail;
    };
    CHECK(guard_of(p, ref("SelectCommittee", {"c1", "c2"})) == "committee_size");
    CHECK(guard_of(p, ref("SelectCommittee", {"c1", "c2", "c3", "c4"})) == "committee_size");
    CHECK(guard_of(p, ref("SelectCommittee", {"c1", "c1", "c2"})) == "committee_distinct");
    CHECK(guard_of(p, ref("Terminate", {}, "")) == "terminate_reason");

    p = apply(p, ref("SelectCommittee", {"c1", "c2", "c3", "c4", "c5"}));
    p = apply(p, ref("AnnounceVacancy"));
    CHECK(guard_of(p, ref("ReceiveApplication", {"c2"})) == "applicant_is_committee_member");
    p = apply(p, ref("ReceiveApplication", {"a1"}));
    CHECK(guard_of(p, ref("ReceiveApplication", {"a1"})) == "duplicate_applicant");
    p = apply(p, ref("CloseApplications"));
    auto report = ref("SubmitReport", {}, "r");
    report.assessed = {"zz"};
    CHECK(guard_of(p, report) == "assessment_not_applicant");
    p = apply(p, ref("SubmitReport", {}, "r"));
    CHECK(guard_of(p, ref("BoardDecision", {"zz"})) == "promoted_not_applicant");
    CHECK(guard_of(p, ref("BoardDecision", {"a1", "a1"})) == "promoted_distinct");
}

TEST_CASE("committee rule is configurable", "[workflow]") {
    auto p = opened();
    hrm::WorkflowRules two{2, false};
    auto r = hrm::advance(p, ev(ref("SelectCommittee", {"c1", "c2"})), p.version, two);
    REQUIRE(r);
    hrm::WorkflowRules five{5, true};
    CHECK_FALSE(hrm::advance(p, ev(ref("SelectCommittee", {"c1", "c2", "c3"})), p.version, five));
}

TEST_CASE("terminal states accept nothing", "[workflow]") {
    auto p = apply(opened(), ref("Terminate", {}, "cancelled by the council"));
    CHECK(p.state() == ProcedureState::Terminated);
    CHECK(p.current.termination_reason == "cancelled by the council");
    for (const auto& name : oracle::RefMachine::event_names()) {
        oracle::RefMachine m;
        auto r = hrm::advance(p, ev(oracle::canonical_event(name, m)), p.version);
        REQUIRE_FALSE(r);
        CHECK(r.error().code == hrm::ErrorCode::IllegalTransition);
    }
    CHECK(hrm::legal_events(ProcedureState::Terminated).empty());
    CHECK(hrm::legal_events(ProcedureState::Recognized).empty());
}

TEST_CASE("legal events follow the table", "[workflow]") {
    using K = hrm::EventKind;
    CHECK(hrm::legal_events(ProcedureState::ApplicationsClosed) == std::vector<K>{K::SubmitReport, K::Terminate});
    CHECK(hrm::legal_events(ProcedureState::VacancyAnnounced) ==
          std::vector<K>{K::ReceiveApplication, K::CloseApplications, K::Terminate});
    for (auto s : hrm::kAllProcedureStates) {
        for (auto k : hrm::legal_events(s)) {
            CHECK(hrm::next_state(s, k).has_value());
        }
    }
}

TEST_CASE("replay examples", "[workflow]") {
    std::vector<hrm::ProcedureEvent> only{ev(ref("InitiateDecision", {}, "FC-1"))};
    CHECK(hrm::replay(only) == ProcedureState::Initiated);
    only.push_back(ev(ref("AnnounceVacancy")));
    auto r = hrm::replay(only);
    REQUIRE_FALSE(r);
    CHECK(r.error().code == hrm::ErrorCode::IllegalTransition);
    CHECK(hrm::replay(std::vector<hrm::ProcedureEvent>{}).error().code == hrm::ErrorCode::IllegalTransition);
    std::vector<hrm::ProcedureEvent> wrong_start{ev(ref("SelectCommittee", {"c1", "c2", "c3"}))};
    CHECK(hrm::replay(wrong_start).error().code == hrm::ErrorCode::IllegalTransition);
}

TEST_CASE("all event strings up to length 6 agree with the reference interpreter", "[workflow][oracle]") {
    const auto& names = oracle::RefMachine::event_names();
    std::size_t strings = 0;
    // Depth-first over the alphabet, pruned when an event is rejected.
    std::function<void(std::vector<oracle::RefEvent>&, oracle::RefMachine)> walk =
        [&](std::vector<oracle::RefEvent>& prefix, oracle::RefMachine machine) {
            if (prefix.size() == 6) return;
            for (const auto& name : names) {
                auto m = machine;
                auto e = oracle::canonical_event(name, m);
                prefix.push_back(e);
                ++strings;
                compare_with_reference(prefix);
                if (m.apply(e).ok) walk(prefix, m);
                prefix.pop_back();
            }
        };
    std::vector<oracle::RefEvent> prefix;
    walk(prefix, oracle::RefMachine{});
    CHECK(strings > 100);
}

TEST_CASE("random payloads agree with the reference interpreter", "[workflow][oracle]") {
    std::mt19937 rng(20240101);
    const std::vector<std::string> pool{"c1", "c2", "c3", "c4", "c5", "a1", "a2", "a3", ""};
    auto pick = [&](std::size_t n) {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < n; ++i) out.push_back(pool[rng() % pool.size()]);
        return out;
    };
    const auto& names = oracle::RefMachine::event_names();
    for (int round = 0; round < 2000; ++round) {
        std::vector<oracle::RefEvent> events{ref("InitiateDecision", {}, rng() % 20 ? "FC-1" : "")};
        const auto len = 1 + rng() % 12;
        for (std::size_t i = 0; i < len; ++i) {
            // Bias toward the next event on the happy path so deep states are reached.
            oracle::RefEvent e{names[rng() % names.size()], {}, {}, {}, rng() % 10 != 0};
            if (e.kind == "SelectCommittee") e.people = pick(1 + rng() % 5);
            if (e.kind == "ReceiveApplication") e.people = pick(1);
            if (e.kind == "BoardDecision") e.people = pick(rng() % 3);
            if (e.kind == "SubmitReport") e.assessed = pick(rng() % 3);
            if (e.kind == "Terminate" || e.kind == "SubmitReport") e.text = rng() % 5 ? "text" : "";
            events.push_back(e);
        }
        compare_with_reference(events);
    }
}
