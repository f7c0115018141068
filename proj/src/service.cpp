#include "hrm/service.hpp"

#include <cctype>
#include <algorithm>
#include <set>
#include <tuple>

#include "hrm/csv.hpp"
#include "service_internal.hpp"

namespace hrm {

using detail::decode_all;
using detail::decode_stored;
using nlohmann::json;

Clock system_clock() {
    return [] { return std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now()); };
}

HrService::HrService(Store& store, ServiceConfig config, Clock clock, MinistryClient* ministry,
                     BibliographyClient* bibliography)
    : store_(store),
      config_(std::move(config)),
      clock_(std::move(clock)),
      ministry_(ministry),
      bibliography_(bibliography) {}

void HrService::audit(Transaction& tx, const Actor& actor, std::string operation, std::string entity,
                      std::string outcome) {
    const auto id = tx.next_id("audit");
    tx.put(Collection::Audit, id,
           json{{"audit_id", id},
                {"actor", actor.name},
                {"at", format_timestamp(clock_())},
                {"operation", std::move(operation)},
                {"entity", std::move(entity)},
                {"outcome", std::move(outcome)}});
}

Result<std::vector<AuditEntry>> HrService::audit_log() {
    return store_.transact([&](Transaction& tx) -> Result<std::vector<AuditEntry>> {
        std::vector<AuditEntry> out;
        for (const auto& j : tx.all(Collection::Audit)) {
            out.push_back(AuditEntry{j.at("audit_id"), j.at("actor"),
                                     parse_timestamp(j.at("at").get<std::string>()).value_or(Timestamp{}),
                                     j.at("operation"), j.at("entity"), j.at("outcome")});
        }
        return out;
    });
}

Result<Person> HrService::register_person(const Actor& actor, const std::string& full_name,
                                          const Date& date_of_birth, bool doctoral_degree) {
    if (auto ok = validate_new_person(full_name, date_of_birth); !ok) {
        return ok.error();
    }
    return store_.transact([&](Transaction& tx) -> Result<Person> {
        Person p{tx.next_id("person"), full_name, date_of_birth, doctoral_degree};
        tx.put(Collection::Persons, p.person_id, codec::encode(p));
        audit(tx, actor, "register_person", p.person_id);
        return p;
    });
}

Result<Person> HrService::get_person(const std::string& person_id) {
    return store_.transact([&](Transaction& tx) -> Result<Person> {
        auto body = tx.get(Collection::Persons, person_id);
        if (!body) {
            return make_error(ErrorCode::NotFound, "person " + person_id + " not found");
        }
        return decode_stored<Person>(*body, codec::decode_person);
    });
}

Result<std::vector<Person>> HrService::list_persons() {
    return store_.transact([&](Transaction& tx) -> Result<std::vector<Person>> {
        return decode_all<Person>(tx.all(Collection::Persons), codec::decode_person);
    });
}

Result<Employee> HrService::add_employee(const Actor& actor, const std::string& person_id, StaffGroup group,
                                         const Date& employment_start) {
    if (auto ok = validate_new_employee(employment_start, date_of(clock_())); !ok) {
        return ok.error();
    }
    return store_.transact([&](Transaction& tx) -> Result<Employee> {
        if (!tx.get(Collection::Persons, person_id)) {
            return make_error(ErrorCode::NotFound, "person " + person_id + " not found");
        }
        if (tx.get(Collection::Employees, person_id)) {
            return make_error(ErrorCode::ValidationError, "person " + person_id + " is already an employee",
                              "employee_exists");
        }
        Employee e{person_id, group, employment_start, true};
        tx.put(Collection::Employees, person_id, codec::encode(e), person_id);
        audit(tx, actor, "add_employee", person_id);
        return e;
    });
}

Result<std::vector<Employee>> HrService::list_employees() {
    return store_.transact([&](Transaction& tx) -> Result<std::vector<Employee>> {
        return decode_all<Employee>(tx.all(Collection::Employees), codec::decode_employee);
    });
}

namespace {

std::optional<bool> parse_flag(const std::string& text) {
    static const std::set<std::string> yes{"1", "true", "yes", "y"};
    static const std::set<std::string> no{"0", "false", "no", "n", ""};
    std::string lower;
    for (char c : text) {
        lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    if (yes.contains(lower)) return true;
    if (no.contains(lower)) return false;
    return std::nullopt;
}

}  // namespace

Result<ImportReport> HrService::import_employees(const Actor& actor, std::string_view csv) {
    auto records = parse_csv(csv);
    if (!records) {
        return std::move(records).error();
    }
    const auto today = date_of(clock_());
    return store_.transact([&](Transaction& tx) -> Result<ImportReport> {
        ImportReport report;
        std::set<std::pair<std::string, std::string>> known;
        for (const auto& p : decode_all<Person>(tx.all(Collection::Persons), codec::decode_person)) {
            known.emplace(normalize_grade_name(p.full_name), format_date(p.date_of_birth));
        }
        bool first = true;
        for (const auto& rec : *records) {
            const auto& f = rec.fields;
            if (first && !f.empty() && f[0] == "full_name") {
                first = false;
                continue;
            }
            first = false;
            auto fail = [&](std::string why) { report.errors.push_back(RowIssue{rec.line, std::move(why)}); };
            if (f.size() != 5) {
                fail("expected 5 fields, got " + std::to_string(f.size()));
                continue;
            }
            auto dob = parse_date(f[1]);
            auto doctoral = parse_flag(f[2]);
            auto group = parse_staff_group(f[3]);
            auto start = parse_date(f[4]);
            if (!dob) { fail("malformed date_of_birth '" + f[1] + "'"); continue; }
            if (!doctoral) { fail("malformed doctoral_degree '" + f[2] + "'"); continue; }
            if (!group) { fail("unknown staff_group '" + f[3] + "'"); continue; }
            if (!start) { fail("malformed employment_start '" + f[4] + "'"); continue; }
            if (auto ok = validate_new_person(f[0], *dob); !ok) { fail(ok.error().message); continue; }
            if (auto ok = validate_new_employee(*start, today); !ok) { fail(ok.error().message); continue; }
            auto key = std::make_pair(normalize_grade_name(f[0]), format_date(*dob));
            if (known.contains(key)) {
                report.skipped.push_back(RowIssue{rec.line, "person '" + f[0] + "' born " + f[1] + " already exists"});
                continue;
            }
            known.insert(key);
            Person p{tx.next_id("person"), f[0], *dob, *doctoral};
            tx.put(Collection::Persons, p.person_id, codec::encode(p));
            Employee e{p.person_id, *group, *start, true};
            tx.put(Collection::Employees, p.person_id, codec::encode(e), p.person_id);
            ++report.created;
        }
        audit(tx, actor, "import_employees", "employees",
              "created " + std::to_string(report.created) + ", skipped " + std::to_string(report.skipped.size()) +
                  ", errors " + std::to_string(report.errors.size()));
        return report;
    });
}

}  // namespace hrm
