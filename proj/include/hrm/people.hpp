#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "hrm/calendar.hpp"
#include "hrm/result.hpp"

namespace hrm {

enum class StaffGroup { Administrative, Academic };

std::string_view to_string(StaffGroup group) noexcept;
std::optional<StaffGroup> parse_staff_group(std::string_view text) noexcept;

struct Person {
    std::string person_id;
    std::string full_name;
    Date date_of_birth;
    bool doctoral_degree = false;

    bool operator==(const Person&) const = default;
};

struct Employee {
    std::string person_id;
    StaffGroup staff_group = StaffGroup::Academic;
    Date employment_start;
    bool active = true;

    bool operator==(const Employee&) const = default;
};

Result<void> validate_new_person(std::string_view full_name, const Date& date_of_birth);
Result<void> validate_new_employee(const Date& employment_start, const Date& today);

}  // namespace hrm
