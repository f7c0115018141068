#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hrm/appointment.hpp"
#include "hrm/calendar.hpp"
#include "hrm/result.hpp"

namespace hrm {

enum class ExpiryState { Active, InitiationDue, Expired };

std::string_view to_string(ExpiryState state) noexcept;
std::optional<ExpiryState> parse_expiry_state(std::string_view text) noexcept;

struct ExpiryStatus {
    ExpiryState state = ExpiryState::Active;
    // valid_to - as_of; zero or negative means expired.
    long days_remaining = 0;
    Date deadline_to_initiate;

    bool operator==(const ExpiryStatus&) const = default;
};

inline constexpr int kDefaultWarningMonths = 3;

/// Renewal must be initiated `warning_months` calendar months before valid_to.
Result<ExpiryStatus> evaluate(const GradeAppointment& appointment, const Date& as_of,
                              int warning_months = kDefaultWarningMonths);

struct ExpiryNotification {
    std::string notification_id;
    std::string appointment_id;
    std::string person_id;
    std::string grade_name;
    Date valid_to;
    ExpiryStatus status;
    Timestamp generated_at;
    bool open = true;

    bool operator==(const ExpiryNotification&) const = default;
};

struct ReviewRow {
    std::string appointment_id;
    std::string person_id;
    std::string grade_name;
    Date valid_to;
    ExpiryStatus status;

    bool operator==(const ReviewRow&) const = default;
};

/// Every InitiationDue or Expired appointment as of `as_of`, ordered by
/// valid_to then person_id. Non-expiring appointments are skipped.
std::vector<ReviewRow> review_rows(std::span<const GradeAppointment> appointments, const Date& as_of,
                                   int warning_months = kDefaultWarningMonths);

/// Flagged rows that have no open notification with the same
/// (appointment_id, status). Notification ids are left empty.
std::vector<ExpiryNotification> pending_notifications(
    std::span<const GradeAppointment> appointments, std::span<const ExpiryNotification> ledger,
    const Date& as_of, Timestamp generated_at, int warning_months = kDefaultWarningMonths);

/// person,grade,valid_to,status,deadline_to_initiate
std::string review_report_csv(std::span<const ReviewRow> rows);

}  // namespace hrm
