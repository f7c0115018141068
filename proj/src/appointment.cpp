#include "hrm/appointment.hpp"

#include <algorithm>

namespace hrm {

bool AppointmentTerms::is_non_expiring(const AcademicGrade& grade) const {
    return std::ranges::any_of(non_expiring_grades, [&](const std::string& name) {
        return normalize_grade_name(name) == grade.name();
    });
}

std::optional<Date> AppointmentTerms::valid_to_for(const AcademicGrade& grade,
                                                   const Date& valid_from) const {
    if (is_non_expiring(grade)) {
        return std::nullopt;
    }
    return add_years(valid_from, term_years);
}

bool validity_overlaps(const GradeAppointment& a, const GradeAppointment& b) {
    const bool a_before_b = a.valid_to && *a.valid_to <= b.valid_from;
    const bool b_before_a = b.valid_to && *b.valid_to <= a.valid_from;
    return !a_before_b && !b_before_a;
}

}  // namespace hrm
