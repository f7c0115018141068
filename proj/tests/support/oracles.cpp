#include "oracles.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

namespace oracle {

namespace {

bool leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int month_length(int y, int m) {
    static const int lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    return m == 2 && leap(y) ? 29 : lengths[m - 1];
}

Ymd successor(Ymd d) {
    if (++d.d > month_length(d.y, d.m)) {
        d.d = 1;
        if (++d.m > 12) {
            d.m = 1;
            ++d.y;
        }
    }
    return d;
}

}  // namespace

Ymd from_date(const hrm::Date& d) {
    return {static_cast<int>(d.year()), static_cast<int>(static_cast<unsigned>(d.month())),
            static_cast<int>(static_cast<unsigned>(d.day()))};
}

hrm::Date to_date(const Ymd& d) {
    return std::chrono::year{d.y} / std::chrono::month{static_cast<unsigned>(d.m)} /
           std::chrono::day{static_cast<unsigned>(d.d)};
}

std::string to_string(const Ymd& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", d.y, d.m, d.d);
    return buf;
}

DayTable::DayTable() {
    for (Ymd d{1980, 1, 1}; d.y <= 2060; d = successor(d)) {
        index_.emplace(d, days_.size());
        days_.push_back(d);
    }
}

const DayTable& DayTable::instance() {
    static const DayTable table;
    return table;
}

std::size_t DayTable::index_of(const Ymd& d) const {
    auto it = index_.find(d);
    if (it == index_.end()) {
        throw std::out_of_range("date outside oracle table: " + to_string(d));
    }
    return it->second;
}

Ymd add_years(const Ymd& d, int n) {
    const auto& t = DayTable::instance();
    const int target = d.y + n;
    Ymd found{};
    for (std::size_t i = t.index_of(d); i < t.size() && t.at(i).y <= target; ++i) {
        const auto& c = t.at(i);
        if (c.y == target && c.m == d.m && c.d <= d.d) {
            found = c;
        }
    }
    return found;
}

Ymd subtract_months(const Ymd& d, int n) {
    const auto& t = DayTable::instance();
    const int total = d.y * 12 + (d.m - 1) - n;
    const int ty = total / 12;
    const int tm = total % 12 + 1;
    for (std::size_t i = t.index_of(d) + 1; i-- > 0;) {
        const auto& c = t.at(i);
        if (c.y == ty && c.m == tm && c.d <= d.d) {
            return c;
        }
    }
    throw std::out_of_range("subtract_months walked off the table");
}

long days_between(const Ymd& from, const Ymd& to) {
    const auto& t = DayTable::instance();
    return static_cast<long>(t.index_of(to)) - static_cast<long>(t.index_of(from));
}

ExpiryVerdict evaluate(const Ymd& valid_to, const Ymd& as_of, int warning_months) {
    ExpiryVerdict v;
    v.days_remaining = days_between(as_of, valid_to);
    v.deadline = subtract_months(valid_to, warning_months);
    if (v.days_remaining <= 0) {
        v.state = "Expired";
    } else if (days_between(v.deadline, as_of) >= 0) {
        v.state = "InitiationDue";
    } else {
        v.state = "Active";
    }
    return v;
}

// --- workflow ---------------------------------------------------------------

namespace {

const char* const kTable = R"(
Initiated             SelectCommittee       CommitteeSelected
CommitteeSelected     AnnounceVacancy       VacancyAnnounced
VacancyAnnounced      ReceiveApplication    AcceptingApplications
AcceptingApplications ReceiveApplication    AcceptingApplications
AcceptingApplications CloseApplications     ApplicationsClosed
VacancyAnnounced      CloseApplications     ApplicationsClosed
ApplicationsClosed    SubmitReport          ReportSubmitted
ReportSubmitted       BoardDecision         BoardDecided
BoardDecided          SenateConfirmation    SenateConfirmed
SenateConfirmed       RecognizeAppointments Recognized
)";

const std::map<std::pair<std::string, std::string>, std::string>& table() {
    static const auto parsed = [] {
        std::map<std::pair<std::string, std::string>, std::string> out;
        std::istringstream in(kTable);
        std::string from, event, to;
        while (in >> from >> event >> to) {
            out[{from, event}] = to;
        }
        return out;
    }();
    return parsed;
}

bool has(const std::vector<std::string>& v, const std::string& x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

bool distinct(const std::vector<std::string>& v) {
    return std::set<std::string>(v.begin(), v.end()).size() == v.size();
}

RefOutcome reject(std::string error) { return {false, "", std::move(error)}; }

}  // namespace

RefMachine::RefMachine(int committee_min, bool committee_odd)
    : committee_min_(committee_min), committee_odd_(committee_odd) {}

const std::vector<std::string>& RefMachine::event_names() {
    static const std::vector<std::string> names{
        "InitiateDecision", "SelectCommittee",    "AnnounceVacancy", "ReceiveApplication",
        "CloseApplications", "SubmitReport",      "BoardDecision",   "SenateConfirmation",
        "RecognizeAppointments", "Terminate"};
    return names;
}

bool RefMachine::terminal(const std::string& state) { return state == "Recognized" || state == "Terminated"; }

RefOutcome RefMachine::apply(const RefEvent& e) {
    if (state_.empty()) {
        if (e.kind != "InitiateDecision") {
            return reject("IllegalTransition");
        }
        if (e.text.empty()) {
            return reject("ValidationError");
        }
        state_ = "Initiated";
        return {true, state_, ""};
    }
    std::string to;
    if (terminal(state_)) {
        return reject("IllegalTransition");
    }
    if (e.kind == "Terminate") {
        to = "Terminated";
    } else if (auto it = table().find({state_, e.kind}); it != table().end()) {
        to = it->second;
    } else {
        return reject("IllegalTransition");
    }

    if (e.kind == "SelectCommittee") {
        const int n = static_cast<int>(e.people.size());
        const bool size_ok = n >= committee_min_ && (!committee_odd_ || n % 2 == 1);
        const bool ids_ok = std::none_of(e.people.begin(), e.people.end(), [](auto& p) { return p.empty(); });
        if (!size_ok || !distinct(e.people) || !ids_ok) return reject("GuardViolation");
        committee_ = e.people;
    } else if (e.kind == "ReceiveApplication") {
        const auto& who = e.people.at(0);
        if (who.empty() || has(applicants_, who) || has(committee_, who)) return reject("GuardViolation");
        applicants_.push_back(who);
    } else if (e.kind == "SubmitReport") {
        for (const auto& a : e.assessed) {
            if (!has(applicants_, a)) return reject("GuardViolation");
        }
    } else if (e.kind == "BoardDecision") {
        if (!distinct(e.people)) return reject("GuardViolation");
        for (const auto& p : e.people) {
            if (!has(applicants_, p)) return reject("GuardViolation");
        }
        promoted_ = e.people;
    } else if (e.kind == "RecognizeAppointments") {
        if (!e.date_ok) return reject("GuardViolation");
    } else if (e.kind == "Terminate") {
        if (e.text.empty()) return reject("GuardViolation");
    }
    state_ = to;
    return {true, state_, ""};
}

RefEvent canonical_event(const std::string& kind, const RefMachine& m) {
    RefEvent e{kind, {}, {}, {}, true};
    if (kind == "InitiateDecision") {
        e.text = "FC-1";
    } else if (kind == "SelectCommittee") {
        e.people = {"c1", "c2", "c3"};
    } else if (kind == "ReceiveApplication") {
        e.people = {"a" + std::to_string(m.applicants().size() + 1)};
    } else if (kind == "SubmitReport") {
        e.text = "repo://reports/1.pdf";
        e.assessed = m.applicants();
    } else if (kind == "BoardDecision") {
        if (!m.applicants().empty()) e.people = {m.applicants().front()};
    } else if (kind == "Terminate") {
        e.text = "withdrawn";
    }
    return e;
}

// --- backlog -----------------------------------------------------------------

std::vector<std::size_t> stable_priority_order(const std::vector<char>& priorities) {
    std::vector<std::size_t> out;
    for (char letter : {'M', 'S', 'C', 'W'}) {
        for (std::size_t i = 0; i < priorities.size(); ++i) {
            if (priorities[i] == letter) {
                out.push_back(i);
            }
        }
    }
    return out;
}

// --- grades -------------------------------------------------------------------

const std::vector<std::pair<hrm::GradeTrack, std::vector<std::string>>>& listed_grades() {
    using hrm::GradeTrack;
    static const std::vector<std::pair<GradeTrack, std::vector<std::string>>> listed{
        {GradeTrack::Scientist, {"research associate", "senior research associate", "research advisor"}},
        {GradeTrack::Researcher, {"expert assistant", "younger assistant", "assistant", "senior assistant"}},
        {GradeTrack::ScientificResearch,
         {"assistant professor", "associate professor", "full professor", "professor emeritus"}},
        {GradeTrack::Teaching,
         {"lecturer", "senior lecturer", "professor of high school", "lector", "senior lector", "repetiteur",
          "senior repetiteur"}},
        {GradeTrack::Associate,
         {"expert assistant", "younger assistant", "assistant", "high school assistant", "senior assistant"}},
    };
    return listed;
}

}  // namespace oracle
