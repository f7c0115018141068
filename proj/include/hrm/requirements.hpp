#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hrm/calendar.hpp"
#include "hrm/result.hpp"

namespace hrm {

enum class RequirementKind { Functional, NonFunctional };

// FURPS+ categories; the last five are the ancillary "+" group.
enum class FurpsCategory {
    Functionality,
    Usability,
    Reliability,
    Performance,
    Supportability,
    Implementation,
    Interfaces,
    Operations,
    Packaging,
    Licensing,
};

inline constexpr FurpsCategory kAllFurpsCategories[] = {
    FurpsCategory::Functionality,  FurpsCategory::Usability,      FurpsCategory::Reliability,
    FurpsCategory::Performance,    FurpsCategory::Supportability, FurpsCategory::Implementation,
    FurpsCategory::Interfaces,     FurpsCategory::Operations,     FurpsCategory::Packaging,
    FurpsCategory::Licensing,
};

// MoSCoW, declared in backlog order.
enum class Priority { M, S, C, W };

inline constexpr Priority kAllPriorities[] = {Priority::M, Priority::S, Priority::C, Priority::W};

std::string_view to_string(RequirementKind kind) noexcept;
std::string_view to_string(FurpsCategory category) noexcept;
std::string_view to_string(Priority priority) noexcept;
std::string_view describe(Priority priority) noexcept;

Result<FurpsCategory> parse_furps_category(std::string_view text);
Result<Priority> parse_priority(std::string_view text);

RequirementKind kind_for(FurpsCategory category) noexcept;

struct Requirement {
    std::string requirement_id;
    std::string text;
    RequirementKind kind = RequirementKind::Functional;
    FurpsCategory category = FurpsCategory::Functionality;
    Priority priority = Priority::M;
    Timestamp created_at;

    bool operator==(const Requirement&) const = default;
};

Result<Requirement> make_requirement(std::string requirement_id, std::string_view text,
                                     std::string_view category, std::string_view priority,
                                     Timestamp created_at);

/// Stable sort by priority M < S < C < W.
std::vector<Requirement> prioritized_backlog(std::vector<Requirement> requirements);

/// id,category,priority,text
std::string requirements_csv(std::span<const Requirement> requirements);

struct RequirementRow {
    std::size_t line = 0;
    std::string id;
    std::string category;
    std::string priority;
    std::string text;
};

/// Splits an exported file into rows. A header row is recognised and skipped.
Result<std::vector<RequirementRow>> parse_requirements_csv(std::string_view text);

/// Backlog grouped under "Must Have", "Should Have", ... headings.
std::string render_backlog(std::span<const Requirement> backlog);

}  // namespace hrm
