#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hrm/appointment.hpp"
#include "hrm/calendar.hpp"
#include "hrm/grades.hpp"
#include "hrm/result.hpp"

namespace hrm {

enum class ProcedureState {
    Initiated,
    CommitteeSelected,
    VacancyAnnounced,
    AcceptingApplications,
    ApplicationsClosed,
    ReportSubmitted,
    BoardDecided,
    SenateConfirmed,
    Recognized,
    Terminated,
};

inline constexpr ProcedureState kAllProcedureStates[] = {
    ProcedureState::Initiated,          ProcedureState::CommitteeSelected,
    ProcedureState::VacancyAnnounced,   ProcedureState::AcceptingApplications,
    ProcedureState::ApplicationsClosed, ProcedureState::ReportSubmitted,
    ProcedureState::BoardDecided,       ProcedureState::SenateConfirmed,
    ProcedureState::Recognized,         ProcedureState::Terminated,
};

std::string_view to_string(ProcedureState state) noexcept;
std::optional<ProcedureState> parse_procedure_state(std::string_view text) noexcept;
bool is_terminal(ProcedureState state) noexcept;

namespace events {

struct InitiateDecision {
    std::string council_ref;
    bool operator==(const InitiateDecision&) const = default;
};
struct SelectCommittee {
    std::vector<std::string> members;
    bool operator==(const SelectCommittee&) const = default;
};
struct AnnounceVacancy {
    Date announcement_date;
    bool operator==(const AnnounceVacancy&) const = default;
};
struct ReceiveApplication {
    std::string applicant;
    std::vector<std::string> documents;
    bool operator==(const ReceiveApplication&) const = default;
};
struct CloseApplications {
    bool operator==(const CloseApplications&) const = default;
};
struct SubmitReport {
    std::string report_ref;
    // applicant person_id -> opaque assessment
    std::map<std::string, std::string> assessments;
    bool operator==(const SubmitReport&) const = default;
};
struct BoardDecision {
    std::vector<std::string> promoted;
    bool operator==(const BoardDecision&) const = default;
};
struct SenateConfirmation {
    bool operator==(const SenateConfirmation&) const = default;
};
struct RecognizeAppointments {
    Date effective_date;
    bool operator==(const RecognizeAppointments&) const = default;
};
struct Terminate {
    std::string reason;
    bool operator==(const Terminate&) const = default;
};

}  // namespace events

// Alternative order matches EventKind.
using EventPayload =
    std::variant<events::InitiateDecision, events::SelectCommittee, events::AnnounceVacancy,
                 events::ReceiveApplication, events::CloseApplications, events::SubmitReport,
                 events::BoardDecision, events::SenateConfirmation, events::RecognizeAppointments,
                 events::Terminate>;

enum class EventKind {
    InitiateDecision,
    SelectCommittee,
    AnnounceVacancy,
    ReceiveApplication,
    CloseApplications,
    SubmitReport,
    BoardDecision,
    SenateConfirmation,
    RecognizeAppointments,
    Terminate,
};

inline constexpr EventKind kAllEventKinds[] = {
    EventKind::InitiateDecision,   EventKind::SelectCommittee,   EventKind::AnnounceVacancy,
    EventKind::ReceiveApplication, EventKind::CloseApplications, EventKind::SubmitReport,
    EventKind::BoardDecision,      EventKind::SenateConfirmation, EventKind::RecognizeAppointments,
    EventKind::Terminate,
};

std::string_view to_string(EventKind kind) noexcept;
std::optional<EventKind> parse_event_kind(std::string_view text) noexcept;
EventKind kind_of(const EventPayload& payload) noexcept;

struct ProcedureEvent {
    Timestamp occurred_at;
    std::string actor;
    EventPayload payload;

    EventKind kind() const noexcept { return kind_of(payload); }
    bool operator==(const ProcedureEvent&) const = default;
};

struct WorkflowRules {
    int committee_min = 3;
    bool committee_odd = true;
};

/// Transition table lookup. Guards are not evaluated here.
std::optional<ProcedureState> next_state(ProcedureState from, EventKind kind) noexcept;

/// Event kinds with an entry in the transition table for `from`.
std::vector<EventKind> legal_events(ProcedureState from);

struct Applicant {
    std::string person_id;
    Timestamp received_at;
    std::vector<std::string> documents;
    bool operator==(const Applicant&) const = default;
};

/// Everything the event stream determines, independent of procedure identity.
struct WorkflowState {
    ProcedureState state = ProcedureState::Initiated;
    std::string council_ref;
    std::vector<std::string> committee;
    std::optional<Date> announcement_date;
    std::vector<Applicant> applicants;
    std::string report_ref;
    std::map<std::string, std::string> assessments;
    std::vector<std::string> promoted;
    std::optional<Date> effective_date;
    std::string termination_reason;

    bool has_applicant(std::string_view person_id) const;
    bool operator==(const WorkflowState&) const = default;
};

/// The initial state produced by an InitiateDecision event.
Result<WorkflowState> initial_state(const ProcedureEvent& initiate);

/// Applies one event: table lookup, then guards. Pure.
Result<WorkflowState> step(const WorkflowState& current, const ProcedureEvent& event,
                           const WorkflowRules& rules = {});

/// Folds a full history starting with InitiateDecision; returns the first
/// error encountered.
Result<WorkflowState> replay_state(std::span<const ProcedureEvent> history,
                                   const WorkflowRules& rules = {});
Result<ProcedureState> replay(std::span<const ProcedureEvent> history,
                              const WorkflowRules& rules = {});

struct HistoryEntry {
    ProcedureEvent event;
    ProcedureState resulting_state;
    bool operator==(const HistoryEntry&) const = default;
};

struct AppointmentProcedure {
    std::string procedure_id;
    AcademicGrade target_grade;
    WorkflowState current;
    std::vector<HistoryEntry> history;
    std::int64_t version = 0;

    ProcedureState state() const noexcept { return current.state; }
    std::vector<ProcedureEvent> events() const;
    bool operator==(const AppointmentProcedure&) const = default;
};

/// Only ScientificResearch, Teaching and Associate grades are announced posts.
bool is_announceable_track(GradeTrack track) noexcept;

Result<AppointmentProcedure> open_procedure(std::string procedure_id, const AcademicGrade& grade,
                                            const ProcedureEvent& initiate);

/// Applies `event` if `expected_version` matches; the returned procedure has
/// the event appended and version incremented by one.
Result<AppointmentProcedure> advance(const AppointmentProcedure& procedure,
                                     const ProcedureEvent& event, std::int64_t expected_version,
                                     const WorkflowRules& rules = {});

/// Appointments produced when a SenateConfirmed procedure is recognized.
/// Returned records carry empty appointment ids.
Result<std::vector<GradeAppointment>> recognize(const AppointmentProcedure& procedure,
                                                const Date& effective_date,
                                                const AppointmentTerms& terms = {});

}  // namespace hrm
