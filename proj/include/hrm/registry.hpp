#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hrm/calendar.hpp"
#include "hrm/people.hpp"
#include "hrm/result.hpp"

namespace hrm {

// Categories that may be entered in the Register of Researchers.
enum class RegistryCategory {
    ResearchAssociate,
    SeniorResearchAssociate,
    ResearchAdvisor,
    AssistantProfessor,
    AssociateProfessor,
    FullProfessor,
    ExternalAssistantProfessor,
    ExternalSeniorAssistantProfessor,
    DoctoralDegreeHolder,
};

inline constexpr RegistryCategory kAllRegistryCategories[] = {
    RegistryCategory::ResearchAssociate,          RegistryCategory::SeniorResearchAssociate,
    RegistryCategory::ResearchAdvisor,            RegistryCategory::AssistantProfessor,
    RegistryCategory::AssociateProfessor,         RegistryCategory::FullProfessor,
    RegistryCategory::ExternalAssistantProfessor, RegistryCategory::ExternalSeniorAssistantProfessor,
    RegistryCategory::DoctoralDegreeHolder,
};

/// Canonical lower-case name, e.g. "external associate: assistant professor".
std::string_view to_string(RegistryCategory category) noexcept;

/// Case- and whitespace-insensitive; CategoryNotRegistrable otherwise.
Result<RegistryCategory> parse_registry_category(std::string_view name);

enum class ApplicationStatus { Submitted, Approved, Rejected };

std::string_view to_string(ApplicationStatus status) noexcept;
std::optional<ApplicationStatus> parse_application_status(std::string_view text) noexcept;

struct RegistryApplication {
    std::string application_id;
    std::string person_id;
    RegistryCategory category = RegistryCategory::ResearchAssociate;
    std::vector<std::string> documents;
    ApplicationStatus status = ApplicationStatus::Submitted;
    Timestamp submitted_at;
    // Set on approval.
    std::optional<std::string> scientist_id;
    std::string rejection_reason;
    // Set once the ministry acknowledged the submission.
    std::optional<std::string> ack_token;

    bool operator==(const RegistryApplication&) const = default;
};

struct RegistryEntry {
    std::string scientist_id;
    std::string person_id;
    RegistryCategory category = RegistryCategory::ResearchAssociate;
    Date registered_at;
    bool active = true;

    bool operator==(const RegistryEntry&) const = default;
};

struct MinistryDecision {
    bool approved = false;
    std::string scientist_id;  // approved
    std::string reason;        // rejected

    static MinistryDecision approve(std::string id) { return {true, std::move(id), {}}; }
    static MinistryDecision reject(std::string why) { return {false, {}, std::move(why)}; }
    bool operator==(const MinistryDecision&) const = default;
};

/// A person may submit while holding no active entry and no undecided
/// application; the doctoral category requires the degree flag.
Result<void> check_submission(const Person& person, RegistryCategory category,
                              std::span<const RegistryEntry> entries,
                              std::span<const RegistryApplication> applications);

/// Validates a decision against the application and every stored entry.
Result<void> check_decision(const RegistryApplication& application, const MinistryDecision& decision,
                            std::span<const RegistryEntry> entries);

}  // namespace hrm
