#include "hrm/demo.hpp"

namespace hrm {

namespace {

Date ymd(int y, unsigned m, unsigned d) {
    return std::chrono::year{y} / std::chrono::month{m} / std::chrono::day{d};
}

#define TRY_ASSIGN(var, expr)                   \
    auto var = (expr);                          \
    if (!var) return std::move(var).error()

Result<std::string> run_procedure(HrService& svc, const Actor& actor, const std::string& grade_name,
                                  const std::string& council_ref, const std::vector<std::string>& committee,
                                  const std::vector<std::string>& applicants, const std::string& promoted,
                                  const Date& announced, const Date& effective) {
    TRY_ASSIGN(grade, resolve_grade(grade_name, GradeTrack::ScientificResearch));
    TRY_ASSIGN(proc, svc.open_procedure(actor, *grade, council_ref));
    const auto id = proc->procedure_id;
    std::vector<EventPayload> steps;
    steps.push_back(events::SelectCommittee{committee});
    steps.push_back(events::AnnounceVacancy{announced});
    for (const auto& a : applicants) {
        steps.push_back(events::ReceiveApplication{a, {"repo://applications/" + id + "/" + a + ".pdf"}});
    }
    steps.push_back(events::CloseApplications{});
    std::map<std::string, std::string> assessments;
    for (const auto& a : applicants) {
        assessments[a] = a == promoted ? "meets the criteria" : "does not yet meet the criteria";
    }
    steps.push_back(events::SubmitReport{"repo://reports/" + id + ".pdf", assessments});
    steps.push_back(events::BoardDecision{{promoted}});
    steps.push_back(events::SenateConfirmation{});
    steps.push_back(events::RecognizeAppointments{effective});

    std::int64_t version = proc->version;
    for (auto& step : steps) {
        TRY_ASSIGN(next, svc.advance(actor, id, std::move(step), version));
        version = next->version;
    }
    return id;
}

}  // namespace

Result<DemoSummary> seed_demo(HrService& svc, const Actor& actor) {
    TRY_ASSIGN(existing, svc.list_persons());
    if (!existing->empty()) {
        return make_error(ErrorCode::ValidationError, "demo data is only seeded into an empty store", "store");
    }

    struct Seed {
        const char* name;
        Date born;
        bool doctorate;
    };
    const Seed people[] = {
        {"Ana Horvat", ymd(1970, 3, 12), true},     {"Marko Kovac", ymd(1975, 6, 1), true},
        {"Ivana Babic", ymd(1980, 9, 23), false},   {"Petra Juric", ymd(1958, 1, 30), true},
        {"Luka Novak", ymd(1961, 11, 4), true},     {"Maja Knezevic", ymd(1964, 5, 17), true},
    };
    DemoSummary out;
    for (const auto& p : people) {
        TRY_ASSIGN(person, svc.register_person(actor, p.name, p.born, p.doctorate));
        TRY_ASSIGN(employee, svc.add_employee(actor, person->person_id, StaffGroup::Academic, ymd(2005, 9, 1)));
        out.person_ids.push_back(person->person_id);
    }
    const auto& ids = out.person_ids;
    const std::vector<std::string> committee{ids[3], ids[4], ids[5]};

    TRY_ASSIGN(first, run_procedure(svc, actor, "assistant professor", "FC-2009/11", committee, {ids[0], ids[2]},
                                    ids[0], ymd(2009, 9, 15), ymd(2009, 12, 1)));
    TRY_ASSIGN(second, run_procedure(svc, actor, "associate professor", "FC-2009/12", committee, {ids[1]}, ids[1],
                                     ymd(2009, 10, 20), ymd(2010, 1, 15)));
    out.procedure_ids = {*first, *second};

    TRY_ASSIGN(doc, svc.attach(actor, OwnerRef{OwnerKind::Procedure, *first}, "repo://promotions/2009/report.pdf",
                               "pdf", "committee report"));
    TRY_ASSIGN(mapped, svc.map_author(actor, ids[0], "crosbi-1001"));

    const char* requirements[][3] = {
        {"Track grade appointment expiry", "Functionality", "M"},
        {"Respond to expiry review queries within 2 s", "Performance", "S"},
        {"Export the backlog as delimited records", "Interfaces", "C"},
        {"Embedded document viewer", "Usability", "W"},
    };
    for (const auto& r : requirements) {
        TRY_ASSIGN(req, svc.add_requirement(actor, r[0], r[1], r[2]));
    }
    return out;
}

#undef TRY_ASSIGN

}  // namespace hrm
