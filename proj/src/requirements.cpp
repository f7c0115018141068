#include "hrm/requirements.hpp"

#include <algorithm>
#include <cctype>

#include "hrm/csv.hpp"

namespace hrm {

std::string_view to_string(RequirementKind kind) noexcept {
    return kind == RequirementKind::Functional ? "Functional" : "NonFunctional";
}

std::string_view to_string(FurpsCategory category) noexcept {
    using F = FurpsCategory;
    switch (category) {
        case F::Functionality: return "Functionality";
        case F::Usability: return "Usability";
        case F::Reliability: return "Reliability";
        case F::Performance: return "Performance";
        case F::Supportability: return "Supportability";
        case F::Implementation: return "Implementation";
        case F::Interfaces: return "Interfaces";
        case F::Operations: return "Operations";
        case F::Packaging: return "Packaging";
        case F::Licensing: return "Licensing";
    }
    return "";
}

std::string_view to_string(Priority priority) noexcept {
    switch (priority) {
        case Priority::M: return "M";
        case Priority::S: return "S";
        case Priority::C: return "C";
        case Priority::W: return "W";
    }
    return "";
}

std::string_view describe(Priority priority) noexcept {
    switch (priority) {
        case Priority::M: return "Must Have";
        case Priority::S: return "Should Have";
        case Priority::C: return "Could Have";
        case Priority::W: return "Won't Have This Time Around";
    }
    return "";
}

Result<FurpsCategory> parse_furps_category(std::string_view text) {
    for (auto c : kAllFurpsCategories) {
        if (to_string(c) == text) {
            return c;
        }
    }
    return make_error(ErrorCode::ValidationError, "unknown FURPS+ category '" + std::string(text) + "'",
                      "category");
}

Result<Priority> parse_priority(std::string_view text) {
    for (auto p : kAllPriorities) {
        if (to_string(p) == text) {
            return p;
        }
    }
    return make_error(ErrorCode::ValidationError,
                      "priority must be one of M, S, C, W; got '" + std::string(text) + "'", "priority");
}

RequirementKind kind_for(FurpsCategory category) noexcept {
    return category == FurpsCategory::Functionality ? RequirementKind::Functional
                                                    : RequirementKind::NonFunctional;
}

Result<Requirement> make_requirement(std::string requirement_id, std::string_view text,
                                     std::string_view category, std::string_view priority,
                                     Timestamp created_at) {
    if (std::ranges::all_of(text, [](unsigned char c) { return std::isspace(c) != 0; })) {
        return make_error(ErrorCode::ValidationError, "requirement text must not be empty", "text");
    }
    auto cat = parse_furps_category(category);
    if (!cat) {
        return std::move(cat).error();
    }
    auto prio = parse_priority(priority);
    if (!prio) {
        return std::move(prio).error();
    }
    return Requirement{std::move(requirement_id), std::string(text), kind_for(*cat), *cat, *prio,
                       created_at};
}

std::vector<Requirement> prioritized_backlog(std::vector<Requirement> requirements) {
    std::ranges::stable_sort(requirements, {}, &Requirement::priority);
    return requirements;
}

std::string requirements_csv(std::span<const Requirement> requirements) {
    std::string out = csv_row({"id", "category", "priority", "text"});
    for (const auto& r : requirements) {
        out += csv_row({r.requirement_id, std::string(to_string(r.category)),
                        std::string(to_string(r.priority)), r.text});
    }
    return out;
}

Result<std::vector<RequirementRow>> parse_requirements_csv(std::string_view text) {
    auto records = parse_csv(text);
    if (!records) {
        return std::move(records).error();
    }
    std::vector<RequirementRow> rows;
    for (auto& rec : *records) {
        if (rec.fields.size() != 4) {
            return make_error(ErrorCode::FormatError,
                              "line " + std::to_string(rec.line) + ": expected 4 fields, got " +
                                  std::to_string(rec.fields.size()));
        }
        if (rows.empty() && rec.fields[0] == "id" && rec.fields[1] == "category") {
            continue;
        }
        rows.push_back(RequirementRow{rec.line, std::move(rec.fields[0]), std::move(rec.fields[1]),
                                      std::move(rec.fields[2]), std::move(rec.fields[3])});
    }
    return rows;
}

std::string render_backlog(std::span<const Requirement> backlog) {
    std::string out;
    for (auto p : kAllPriorities) {
        out += "[" + std::string(to_string(p)) + "] " + std::string(describe(p)) + "\n";
        bool any = false;
        for (const auto& r : backlog) {
            if (r.priority == p) {
                out += "  " + r.requirement_id + "  (" + std::string(to_string(r.category)) + ") " + r.text +
                       "\n";
                any = true;
            }
        }
        if (!any) {
            out += "  (none)\n";
        }
    }
    return out;
}

}  // namespace hrm
