#include "hrm/expiry.hpp"

#include <algorithm>
#include <tuple>

#include "hrm/csv.hpp"

namespace hrm {

std::string_view to_string(ExpiryState state) noexcept {
    switch (state) {
        case ExpiryState::Active: return "Active";
        case ExpiryState::InitiationDue: return "InitiationDue";
        case ExpiryState::Expired: return "Expired";
    }
    return "";
}

std::optional<ExpiryState> parse_expiry_state(std::string_view text) noexcept {
    for (auto s : {ExpiryState::Active, ExpiryState::InitiationDue, ExpiryState::Expired}) {
        if (to_string(s) == text) {
            return s;
        }
    }
    return std::nullopt;
}

Result<ExpiryStatus> evaluate(const GradeAppointment& appointment, const Date& as_of,
                              int warning_months) {
    if (!appointment.valid_to) {
        return make_error(ErrorCode::NonExpiring,
                          "appointment " + appointment.appointment_id + " does not expire");
    }
    ExpiryStatus status;
    status.deadline_to_initiate = subtract_months(*appointment.valid_to, warning_months);
    status.days_remaining = days_between(as_of, *appointment.valid_to);
    if (status.days_remaining <= 0) {
        status.state = ExpiryState::Expired;
    } else if (as_of >= status.deadline_to_initiate) {
        status.state = ExpiryState::InitiationDue;
    } else {
        status.state = ExpiryState::Active;
    }
    return status;
}

std::vector<ReviewRow> review_rows(std::span<const GradeAppointment> appointments, const Date& as_of,
                                   int warning_months) {
    std::vector<ReviewRow> rows;
    for (const auto& a : appointments) {
        if (!a.valid_to) {
            continue;
        }
        auto status = evaluate(a, as_of, warning_months);
        if (status->state == ExpiryState::Active) {
            continue;
        }
        rows.push_back(ReviewRow{a.appointment_id, a.person_id, std::string(a.grade.name()), *a.valid_to,
                                 *status});
    }
    std::ranges::stable_sort(rows, [](const ReviewRow& l, const ReviewRow& r) {
        return std::tie(l.valid_to, l.person_id) < std::tie(r.valid_to, r.person_id);
    });
    return rows;
}

std::vector<ExpiryNotification> pending_notifications(
    std::span<const GradeAppointment> appointments, std::span<const ExpiryNotification> ledger,
    const Date& as_of, Timestamp generated_at, int warning_months) {
    std::vector<ExpiryNotification> out;
    for (const auto& row : review_rows(appointments, as_of, warning_months)) {
        const bool already_open = std::ranges::any_of(ledger, [&](const ExpiryNotification& n) {
            return n.open && n.appointment_id == row.appointment_id &&
                   n.status.state == row.status.state;
        });
        if (already_open) {
            continue;
        }
        out.push_back(ExpiryNotification{{}, row.appointment_id, row.person_id, row.grade_name,
                                         row.valid_to, row.status, generated_at, true});
    }
    return out;
}

std::string review_report_csv(std::span<const ReviewRow> rows) {
    std::string out = csv_row({"person", "grade", "valid_to", "status", "deadline_to_initiate"});
    for (const auto& r : rows) {
        out += csv_row({r.person_id, r.grade_name, format_date(r.valid_to),
                        std::string(to_string(r.status.state)),
                        format_date(r.status.deadline_to_initiate)});
    }
    return out;
}

}  // namespace hrm
