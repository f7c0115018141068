#include "hrm/people.hpp"

#include <algorithm>
#include <cctype>

namespace hrm {

std::string_view to_string(StaffGroup group) noexcept {
    return group == StaffGroup::Administrative ? "Administrative" : "Academic";
}

std::optional<StaffGroup> parse_staff_group(std::string_view text) noexcept {
    if (text == "Administrative") {
        return StaffGroup::Administrative;
    }
    if (text == "Academic") {
        return StaffGroup::Academic;
    }
    return std::nullopt;
}

Result<void> validate_new_person(std::string_view full_name, const Date& date_of_birth) {
    const bool blank = std::ranges::all_of(full_name, [](unsigned char c) { return std::isspace(c) != 0; });
    if (blank) {
        return make_error(ErrorCode::ValidationError, "full_name must not be empty", "full_name");
    }
    if (!date_of_birth.ok()) {
        return make_error(ErrorCode::ValidationError, "date_of_birth is not a valid date", "date_of_birth");
    }
    return {};
}

Result<void> validate_new_employee(const Date& employment_start, const Date& today) {
    if (!employment_start.ok()) {
        return make_error(ErrorCode::ValidationError, "employment_start is not a valid date",
                          "employment_start");
    }
    if (employment_start > today) {
        return make_error(ErrorCode::ValidationError, "employment_start lies in the future",
                          "employment_start");
    }
    return {};
}

}  // namespace hrm
