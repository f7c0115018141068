#include "hrm/registry.hpp"

#include <algorithm>

#include "hrm/grades.hpp"

namespace hrm {

std::string_view to_string(RegistryCategory category) noexcept {
    using C = RegistryCategory;
    switch (category) {
        case C::ResearchAssociate: return "research associate";
        case C::SeniorResearchAssociate: return "senior research associate";
        case C::ResearchAdvisor: return "research advisor";
        case C::AssistantProfessor: return "assistant professor";
        case C::AssociateProfessor: return "associate professor";
        case C::FullProfessor: return "full professor";
        case C::ExternalAssistantProfessor: return "external associate: assistant professor";
        case C::ExternalSeniorAssistantProfessor: return "external associate: senior assistant professor";
        case C::DoctoralDegreeHolder: return "person with doctoral degree";
    }
    return "";
}

Result<RegistryCategory> parse_registry_category(std::string_view name) {
    const auto normalized = normalize_grade_name(name);
    for (auto c : kAllRegistryCategories) {
        if (to_string(c) == normalized) {
            return c;
        }
    }
    return make_error(ErrorCode::CategoryNotRegistrable,
                      "'" + normalized + "' cannot be entered in the Register of Researchers");
}

std::string_view to_string(ApplicationStatus status) noexcept {
    switch (status) {
        case ApplicationStatus::Submitted: return "Submitted";
        case ApplicationStatus::Approved: return "Approved";
        case ApplicationStatus::Rejected: return "Rejected";
    }
    return "";
}

std::optional<ApplicationStatus> parse_application_status(std::string_view text) noexcept {
    for (auto s : {ApplicationStatus::Submitted, ApplicationStatus::Approved, ApplicationStatus::Rejected}) {
        if (to_string(s) == text) {
            return s;
        }
    }
    return std::nullopt;
}

Result<void> check_submission(const Person& person, RegistryCategory category,
                              std::span<const RegistryEntry> entries,
                              std::span<const RegistryApplication> applications) {
    const bool has_entry = std::ranges::any_of(entries, [&](const RegistryEntry& e) {
        return e.active && e.person_id == person.person_id;
    });
    if (has_entry) {
        return make_error(ErrorCode::AlreadyRegistered,
                          "person " + person.person_id + " already has an active registry entry");
    }
    const bool pending = std::ranges::any_of(applications, [&](const RegistryApplication& a) {
        return a.person_id == person.person_id && a.status == ApplicationStatus::Submitted;
    });
    if (pending) {
        return make_error(ErrorCode::AlreadyRegistered,
                          "person " + person.person_id + " has an undecided registry application");
    }
    if (category == RegistryCategory::DoctoralDegreeHolder && !person.doctoral_degree) {
        return make_error(ErrorCode::MissingDoctorate,
                          "person " + person.person_id + " has no doctoral degree on record");
    }
    return {};
}

Result<void> check_decision(const RegistryApplication& application, const MinistryDecision& decision,
                            std::span<const RegistryEntry> entries) {
    if (application.status != ApplicationStatus::Submitted) {
        return make_error(ErrorCode::AlreadyDecided,
                          "application " + application.application_id + " is already " +
                              std::string(to_string(application.status)));
    }
    if (!decision.approved) {
        return {};
    }
    if (decision.scientist_id.empty()) {
        return make_error(ErrorCode::ValidationError, "approval requires a scientist_id", "scientist_id");
    }
    const bool duplicate = std::ranges::any_of(
        entries, [&](const RegistryEntry& e) { return e.scientist_id == decision.scientist_id; });
    if (duplicate) {
        return make_error(ErrorCode::DuplicateScientistId,
                          "scientist_id " + decision.scientist_id + " is already assigned");
    }
    return {};
}

}  // namespace hrm
