#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hrm/calendar.hpp"
#include "hrm/grades.hpp"

namespace hrm {

struct GradeAppointment {
    std::string appointment_id;
    std::string person_id;
    AcademicGrade grade;
    std::string procedure_id;
    Date valid_from;
    // Absent for non-expiring grades.
    std::optional<Date> valid_to;

    bool operator==(const GradeAppointment&) const = default;
};

/// Term length and the grades that never expire. Defaults: five-year terms,
/// professor emeritus non-expiring.
struct AppointmentTerms {
    int term_years = 5;
    std::vector<std::string> non_expiring_grades{"professor emeritus"};

    bool is_non_expiring(const AcademicGrade& grade) const;
    std::optional<Date> valid_to_for(const AcademicGrade& grade, const Date& valid_from) const;
};

/// Half-open intervals [valid_from, valid_to); an absent end is unbounded.
bool validity_overlaps(const GradeAppointment& a, const GradeAppointment& b);

}  // namespace hrm
