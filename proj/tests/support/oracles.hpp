#pragma once

// Reference implementations used as test oracles. None of them calls into the
// library's logic: the calendar is built by stepping one day at a time, the
// workflow interpreter reads its transition table from text, and the backlog
// sort is a bucket pass.

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "hrm/calendar.hpp"
#include "hrm/grades.hpp"

namespace oracle {

struct Ymd {
    int y = 0;
    int m = 0;
    int d = 0;
    auto operator<=>(const Ymd&) const = default;
};

Ymd from_date(const hrm::Date& d);
hrm::Date to_date(const Ymd& d);
std::string to_string(const Ymd& d);

/// Every day from 1980-01-01 through 2060-12-31, generated with a successor
/// function.
class DayTable {
public:
    static const DayTable& instance();
    std::size_t index_of(const Ymd& d) const;
    const Ymd& at(std::size_t i) const { return days_[i]; }
    std::size_t size() const { return days_.size(); }

private:
    DayTable();
    std::vector<Ymd> days_;
    std::map<Ymd, std::size_t> index_;
};

/// Walks forward from `d` and keeps the last day in the same month `n` years
/// on whose day-of-month does not exceed d's.
Ymd add_years(const Ymd& d, int n);
/// Walks backward from `d` to the first day in the month `n` months earlier
/// whose day-of-month does not exceed d's.
Ymd subtract_months(const Ymd& d, int n);
/// Counted in table steps.
long days_between(const Ymd& from, const Ymd& to);

struct ExpiryVerdict {
    std::string state;  // "Active", "InitiationDue", "Expired"
    long days_remaining = 0;
    Ymd deadline;
};

ExpiryVerdict evaluate(const Ymd& valid_to, const Ymd& as_of, int warning_months = 3);

// --- workflow ---------------------------------------------------------------

struct RefEvent {
    std::string kind;
    std::vector<std::string> people;  // committee, applicant, promoted
    std::string text;                 // council_ref, report_ref, reason
    std::vector<std::string> assessed;
    bool date_ok = true;
};

struct RefOutcome {
    bool ok = false;
    std::string state;  // resulting state when ok
    std::string error;  // "IllegalTransition", "GuardViolation", "ValidationError"
};

class RefMachine {
public:
    explicit RefMachine(int committee_min = 3, bool committee_odd = true);

    /// The first event must be InitiateDecision.
    RefOutcome apply(const RefEvent& e);

    bool started() const { return !state_.empty(); }
    const std::string& state() const { return state_; }
    const std::vector<std::string>& applicants() const { return applicants_; }
    const std::vector<std::string>& promoted() const { return promoted_; }

    static const std::vector<std::string>& event_names();
    static bool terminal(const std::string& state);

private:
    int committee_min_;
    bool committee_odd_;
    std::string state_;
    std::vector<std::string> committee_;
    std::vector<std::string> applicants_;
    std::vector<std::string> promoted_;
};

/// The event of kind `kind` used when enumerating event strings: a valid
/// committee, the next fresh applicant, the first applicant promoted.
RefEvent canonical_event(const std::string& kind, const RefMachine& m);

// --- backlog -----------------------------------------------------------------

/// Indices of `priorities` (letters M/S/C/W) in stable priority order.
std::vector<std::size_t> stable_priority_order(const std::vector<char>& priorities);

// --- grades -------------------------------------------------------------------

/// The catalog as listed, per track in ascending seniority.
const std::vector<std::pair<hrm::GradeTrack, std::vector<std::string>>>& listed_grades();

}  // namespace oracle
