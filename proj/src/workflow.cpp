#include "hrm/workflow.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace hrm {

namespace {

using S = ProcedureState;
using K = EventKind;

struct Transition {
    S from;
    K kind;
    S to;
};

// Terminate from any non-terminal state is handled separately.
constexpr std::array<Transition, 10> kTransitions{{
    {S::Initiated, K::SelectCommittee, S::CommitteeSelected},
    {S::CommitteeSelected, K::AnnounceVacancy, S::VacancyAnnounced},
    {S::VacancyAnnounced, K::ReceiveApplication, S::AcceptingApplications},
    {S::AcceptingApplications, K::ReceiveApplication, S::AcceptingApplications},
    {S::AcceptingApplications, K::CloseApplications, S::ApplicationsClosed},
    {S::VacancyAnnounced, K::CloseApplications, S::ApplicationsClosed},
    {S::ApplicationsClosed, K::SubmitReport, S::ReportSubmitted},
    {S::ReportSubmitted, K::BoardDecision, S::BoardDecided},
    {S::BoardDecided, K::SenateConfirmation, S::SenateConfirmed},
    {S::SenateConfirmed, K::RecognizeAppointments, S::Recognized},
}};

Error guard_violation(std::string guard, std::string message) {
    return make_error(ErrorCode::GuardViolation, std::move(message), std::move(guard));
}

bool contains(const std::vector<std::string>& v, std::string_view value) {
    return std::ranges::find(v, value) != v.end();
}

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::optional<Error> check_guards(const WorkflowState& st, const ProcedureEvent& event,
                                  const WorkflowRules& rules) {
    return std::visit(
        Overloaded{
            [&](const events::SelectCommittee& e) -> std::optional<Error> {
                const auto n = static_cast<int>(e.members.size());
                if (n < rules.committee_min || (rules.committee_odd && n % 2 == 0)) {
                    return guard_violation("committee_size",
                                           "committee needs an odd number of at least " +
                                               std::to_string(rules.committee_min) + " members, got " +
                                               std::to_string(n));
                }
                std::set<std::string> distinct(e.members.begin(), e.members.end());
                if (distinct.size() != e.members.size()) {
                    return guard_violation("committee_distinct", "committee members must be distinct");
                }
                if (std::ranges::any_of(e.members, [](const std::string& m) { return m.empty(); })) {
                    return guard_violation("committee_member_id", "committee member id is empty");
                }
                return std::nullopt;
            },
            [&](const events::ReceiveApplication& e) -> std::optional<Error> {
                if (e.applicant.empty()) {
                    return guard_violation("applicant_id", "applicant id is empty");
                }
                if (st.has_applicant(e.applicant)) {
                    return guard_violation("duplicate_applicant",
                                           "applicant " + e.applicant + " already applied");
                }
                if (contains(st.committee, e.applicant)) {
                    return guard_violation("applicant_is_committee_member",
                                           "committee member " + e.applicant + " cannot apply");
                }
                return std::nullopt;
            },
            [&](const events::SubmitReport& e) -> std::optional<Error> {
                for (const auto& [who, _] : e.assessments) {
                    if (!st.has_applicant(who)) {
                        return guard_violation("assessment_not_applicant",
                                               "assessment for non-applicant " + who);
                    }
                }
                return std::nullopt;
            },
            [&](const events::BoardDecision& e) -> std::optional<Error> {
                std::set<std::string> distinct(e.promoted.begin(), e.promoted.end());
                if (distinct.size() != e.promoted.size()) {
                    return guard_violation("promoted_distinct", "promoted list has duplicates");
                }
                for (const auto& p : e.promoted) {
                    if (!st.has_applicant(p)) {
                        return guard_violation("promoted_not_applicant",
                                               "promoted person " + p + " is not an applicant");
                    }
                }
                return std::nullopt;
            },
            [&](const events::RecognizeAppointments& e) -> std::optional<Error> {
                if (!e.effective_date.ok()) {
                    return guard_violation("effective_date", "effective_date is not a valid date");
                }
                return std::nullopt;
            },
            [&](const events::Terminate& e) -> std::optional<Error> {
                if (e.reason.empty()) {
                    return guard_violation("terminate_reason", "termination requires a reason");
                }
                return std::nullopt;
            },
            [](const auto&) -> std::optional<Error> { return std::nullopt; },
        },
        event.payload);
}

void apply_payload(WorkflowState& st, const ProcedureEvent& event) {
    std::visit(Overloaded{
                   [&](const events::SelectCommittee& e) { st.committee = e.members; },
                   [&](const events::AnnounceVacancy& e) { st.announcement_date = e.announcement_date; },
                   [&](const events::ReceiveApplication& e) {
                       st.applicants.push_back(Applicant{e.applicant, event.occurred_at, e.documents});
                   },
                   [&](const events::SubmitReport& e) {
                       st.report_ref = e.report_ref;
                       st.assessments = e.assessments;
                   },
                   [&](const events::BoardDecision& e) { st.promoted = e.promoted; },
                   [&](const events::RecognizeAppointments& e) { st.effective_date = e.effective_date; },
                   [&](const events::Terminate& e) { st.termination_reason = e.reason; },
                   [](const auto&) {},
               },
               event.payload);
}

}  // namespace

std::string_view to_string(ProcedureState state) noexcept {
    switch (state) {
        case S::Initiated: return "Initiated";
        case S::CommitteeSelected: return "CommitteeSelected";
        case S::VacancyAnnounced: return "VacancyAnnounced";
        case S::AcceptingApplications: return "AcceptingApplications";
        case S::ApplicationsClosed: return "ApplicationsClosed";
        case S::ReportSubmitted: return "ReportSubmitted";
        case S::BoardDecided: return "BoardDecided";
        case S::SenateConfirmed: return "SenateConfirmed";
        case S::Recognized: return "Recognized";
        case S::Terminated: return "Terminated";
    }
    return "";
}

std::optional<ProcedureState> parse_procedure_state(std::string_view text) noexcept {
    for (auto s : kAllProcedureStates) {
        if (to_string(s) == text) {
            return s;
        }
    }
    return std::nullopt;
}

bool is_terminal(ProcedureState state) noexcept {
    return state == S::Recognized || state == S::Terminated;
}

std::string_view to_string(EventKind kind) noexcept {
    switch (kind) {
        case K::InitiateDecision: return "InitiateDecision";
        case K::SelectCommittee: return "SelectCommittee";
        case K::AnnounceVacancy: return "AnnounceVacancy";
        case K::ReceiveApplication: return "ReceiveApplication";
        case K::CloseApplications: return "CloseApplications";
        case K::SubmitReport: return "SubmitReport";
        case K::BoardDecision: return "BoardDecision";
        case K::SenateConfirmation: return "SenateConfirmation";
        case K::RecognizeAppointments: return "RecognizeAppointments";
        case K::Terminate: return "Terminate";
    }
    return "";
}

std::optional<EventKind> parse_event_kind(std::string_view text) noexcept {
    for (auto k : kAllEventKinds) {
        if (to_string(k) == text) {
            return k;
        }
    }
    return std::nullopt;
}

EventKind kind_of(const EventPayload& payload) noexcept {
    return static_cast<EventKind>(payload.index());
}

std::optional<ProcedureState> next_state(ProcedureState from, EventKind kind) noexcept {
    if (is_terminal(from)) {
        return std::nullopt;
    }
    if (kind == K::Terminate) {
        return S::Terminated;
    }
    for (const auto& t : kTransitions) {
        if (t.from == from && t.kind == kind) {
            return t.to;
        }
    }
    return std::nullopt;
}

std::vector<EventKind> legal_events(ProcedureState from) {
    std::vector<EventKind> out;
    for (auto k : kAllEventKinds) {
        if (next_state(from, k)) {
            out.push_back(k);
        }
    }
    return out;
}

bool WorkflowState::has_applicant(std::string_view person_id) const {
    return std::ranges::any_of(applicants,
                               [&](const Applicant& a) { return a.person_id == person_id; });
}

Result<WorkflowState> initial_state(const ProcedureEvent& initiate) {
    const auto* decision = std::get_if<events::InitiateDecision>(&initiate.payload);
    if (decision == nullptr) {
        return make_error(ErrorCode::IllegalTransition,
                          "a procedure must start with InitiateDecision, got " +
                              std::string(to_string(initiate.kind())));
    }
    if (decision->council_ref.empty()) {
        return make_error(ErrorCode::ValidationError, "council_ref must not be empty", "council_ref");
    }
    WorkflowState st;
    st.state = S::Initiated;
    st.council_ref = decision->council_ref;
    return st;
}

Result<WorkflowState> step(const WorkflowState& current, const ProcedureEvent& event,
                           const WorkflowRules& rules) {
    const auto to = next_state(current.state, event.kind());
    if (!to) {
        return make_error(ErrorCode::IllegalTransition,
                          std::string(to_string(event.kind())) + " is not accepted in state " +
                              std::string(to_string(current.state)));
    }
    if (auto err = check_guards(current, event, rules)) {
        return std::move(*err);
    }
    WorkflowState next = current;
    apply_payload(next, event);
    next.state = *to;
    return next;
}

Result<WorkflowState> replay_state(std::span<const ProcedureEvent> history,
                                   const WorkflowRules& rules) {
    if (history.empty()) {
        return make_error(ErrorCode::IllegalTransition, "empty history has no initial event");
    }
    auto st = initial_state(history.front());
    if (!st) {
        return st;
    }
    for (const auto& event : history.subspan(1)) {
        st = step(*st, event, rules);
        if (!st) {
            return st;
        }
    }
    return st;
}

Result<ProcedureState> replay(std::span<const ProcedureEvent> history, const WorkflowRules& rules) {
    auto st = replay_state(history, rules);
    if (!st) {
        return std::move(st).error();
    }
    return st->state;
}

std::vector<ProcedureEvent> AppointmentProcedure::events() const {
    std::vector<ProcedureEvent> out;
    out.reserve(history.size());
    for (const auto& h : history) {
        out.push_back(h.event);
    }
    return out;
}

bool is_announceable_track(GradeTrack track) noexcept {
    return track == GradeTrack::ScientificResearch || track == GradeTrack::Teaching ||
           track == GradeTrack::Associate;
}

Result<AppointmentProcedure> open_procedure(std::string procedure_id, const AcademicGrade& grade,
                                            const ProcedureEvent& initiate) {
    if (!is_announceable_track(grade.track())) {
        return make_error(ErrorCode::InvalidTrack,
                          std::string(to_string(grade.track())) +
                              " grades are registry grades, not announced posts");
    }
    auto st = initial_state(initiate);
    if (!st) {
        return std::move(st).error();
    }
    return AppointmentProcedure{std::move(procedure_id), grade, *st,
                                {HistoryEntry{initiate, S::Initiated}}, 1};
}

Result<AppointmentProcedure> advance(const AppointmentProcedure& procedure,
                                     const ProcedureEvent& event, std::int64_t expected_version,
                                     const WorkflowRules& rules) {
    if (expected_version != procedure.version) {
        return make_error(ErrorCode::VersionConflict,
                          "expected version " + std::to_string(expected_version) +
                              " but procedure is at version " + std::to_string(procedure.version));
    }
    auto next = step(procedure.current, event, rules);
    if (!next) {
        return std::move(next).error();
    }
    AppointmentProcedure out = procedure;
    out.current = std::move(*next);
    out.history.push_back(HistoryEntry{event, out.current.state});
    out.version += 1;
    return out;
}

Result<std::vector<GradeAppointment>> recognize(const AppointmentProcedure& procedure,
                                                const Date& effective_date,
                                                const AppointmentTerms& terms) {
    if (procedure.state() != S::SenateConfirmed) {
        return make_error(ErrorCode::IllegalTransition,
                          "appointments are recognized only after senate confirmation, state is " +
                              std::string(to_string(procedure.state())));
    }
    std::vector<GradeAppointment> out;
    out.reserve(procedure.current.promoted.size());
    for (const auto& person : procedure.current.promoted) {
        out.push_back(GradeAppointment{{}, person, procedure.target_grade, procedure.procedure_id,
                                       effective_date,
                                       terms.valid_to_for(procedure.target_grade, effective_date)});
    }
    return out;
}

}  // namespace hrm
