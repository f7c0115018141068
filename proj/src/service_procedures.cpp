#include <algorithm>
#include <cstdio>

#include "hrm/event_log.hpp"
#include "hrm/service.hpp"
#include "service_internal.hpp"

namespace hrm {

using detail::decode_all;
using detail::decode_stored;
using nlohmann::json;

namespace {

std::string event_row_id(const std::string& procedure_id, std::size_t index) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%06zu", index);
    return procedure_id + "#" + buf;
}

}  // namespace

Result<AppointmentProcedure> HrService::load_procedure(Transaction& tx, const std::string& procedure_id) {
    auto summary = tx.get(Collection::Procedures, procedure_id);
    if (!summary) {
        return make_error(ErrorCode::NotFound, "procedure " + procedure_id + " not found");
    }
    auto grade = codec::decode_grade(summary->at("target_grade"));
    if (!grade) {
        throw StoreFailure("procedure " + procedure_id + " has a corrupt grade");
    }
    const auto rows = tx.by_owner(Collection::ProcedureEvents, procedure_id);
    if (rows.empty()) {
        throw StoreFailure("procedure " + procedure_id + " has no events");
    }
    const auto rules = config_.workflow_rules();
    std::optional<AppointmentProcedure> p;
    for (const auto& row : rows) {
        auto event = decode_stored<ProcedureEvent>(row, codec::decode_event);
        Result<AppointmentProcedure> next =
            p ? hrm::advance(*p, event, p->version, rules) : hrm::open_procedure(procedure_id, *grade, event);
        if (!next) {
            throw StoreFailure("procedure " + procedure_id + " history does not replay: " + next.error().message);
        }
        if (to_string(next->state()) != row.value("resulting_state", std::string())) {
            throw StoreFailure("procedure " + procedure_id + " recorded state disagrees with replay");
        }
        p = std::move(*next);
    }
    if (p->version != summary->at("version").get<std::int64_t>() ||
        to_string(p->state()) != summary->at("state").get<std::string>()) {
        throw StoreFailure("procedure " + procedure_id + " summary disagrees with its history");
    }
    return std::move(*p);
}

void HrService::save_procedure(Transaction& tx, const AppointmentProcedure& p, std::size_t first_new_event) {
    for (std::size_t i = first_new_event; i < p.history.size(); ++i) {
        auto row = codec::encode(p.history[i].event);
        row["resulting_state"] = to_string(p.history[i].resulting_state);
        tx.put(Collection::ProcedureEvents, event_row_id(p.procedure_id, i), row, p.procedure_id);
    }
    tx.put(Collection::Procedures, p.procedure_id,
           json{{"procedure_id", p.procedure_id},
                {"target_grade", codec::encode(p.target_grade)},
                {"state", to_string(p.state())},
                {"version", p.version}});
}

Result<AppointmentProcedure> HrService::open_procedure(const Actor& actor, const AcademicGrade& grade,
                                                       const std::string& council_ref) {
    return store_.transact([&](Transaction& tx) -> Result<AppointmentProcedure> {
        ProcedureEvent initiate{clock_(), actor.name, events::InitiateDecision{council_ref}};
        if (!is_announceable_track(grade.track())) {
            return hrm::open_procedure({}, grade, initiate);
        }
        auto p = hrm::open_procedure(tx.next_id("procedure"), grade, initiate);
        if (!p) {
            return p;
        }
        save_procedure(tx, *p, 0);
        audit(tx, actor, "open_procedure", p->procedure_id);
        return p;
    });
}

Result<void> HrService::store_appointments(Transaction& tx, std::vector<GradeAppointment> appointments) {
    auto existing = decode_all<GradeAppointment>(tx.all(Collection::Appointments), codec::decode_appointment);
    for (auto& a : appointments) {
        for (auto& old : existing) {
            if (old.person_id != a.person_id || !(old.grade == a.grade) || !validity_overlaps(old, a)) {
                continue;
            }
            // Re-appointment: the earlier term ends where the new one starts.
            if (old.valid_from >= a.valid_from) {
                return make_error(ErrorCode::GuardViolation,
                                  "appointment " + old.appointment_id + " for " + a.person_id +
                                      " already covers " + format_date(a.valid_from),
                                  "appointment_overlap");
            }
            old.valid_to = a.valid_from;
            tx.put(Collection::Appointments, old.appointment_id, codec::encode(old), old.person_id);
        }
        a.appointment_id = tx.next_id("appointment");
        tx.put(Collection::Appointments, a.appointment_id, codec::encode(a), a.person_id);
        existing.push_back(a);
    }
    return {};
}

Result<AppointmentProcedure> HrService::advance(const Actor& actor, const std::string& procedure_id,
                                                EventPayload payload, std::int64_t expected_version) {
    return store_.transact([&](Transaction& tx) -> Result<AppointmentProcedure> {
        auto current = load_procedure(tx, procedure_id);
        if (!current) {
            return current;
        }
        ProcedureEvent event{clock_(), actor.name, std::move(payload)};
        auto next = hrm::advance(*current, event, expected_version, config_.workflow_rules());
        if (!next) {
            return next;
        }
        if (const auto* rec = std::get_if<events::RecognizeAppointments>(&event.payload)) {
            auto appointments = recognize(*current, rec->effective_date, config_.appointment_terms());
            if (!appointments) {
                return std::move(appointments).error();
            }
            if (auto ok = store_appointments(tx, std::move(*appointments)); !ok) {
                return ok.error();
            }
        }
        save_procedure(tx, *next, current->history.size());
        audit(tx, actor, "advance:" + std::string(to_string(event.kind())), procedure_id,
              std::string(to_string(next->state())));
        return next;
    });
}

Result<AppointmentProcedure> HrService::get_procedure(const std::string& procedure_id) {
    return store_.transact([&](Transaction& tx) { return load_procedure(tx, procedure_id); });
}

Result<std::vector<AppointmentProcedure>> HrService::list_procedures() {
    return store_.transact([&](Transaction& tx) -> Result<std::vector<AppointmentProcedure>> {
        std::vector<AppointmentProcedure> out;
        for (const auto& rec : tx.records(Collection::Procedures)) {
            auto p = load_procedure(tx, rec.id);
            if (!p) {
                return std::move(p).error();
            }
            out.push_back(std::move(*p));
        }
        return out;
    });
}

Result<std::string> HrService::export_procedure_log(const std::string& procedure_id) {
    auto p = get_procedure(procedure_id);
    if (!p) {
        return std::move(p).error();
    }
    const auto events = p->events();
    return export_event_log(events);
}

Result<std::vector<GradeAppointment>> HrService::list_appointments(const std::optional<std::string>& person_id) {
    return store_.transact([&](Transaction& tx) -> Result<std::vector<GradeAppointment>> {
        const auto bodies =
            person_id ? tx.by_owner(Collection::Appointments, *person_id) : tx.all(Collection::Appointments);
        return decode_all<GradeAppointment>(bodies, codec::decode_appointment);
    });
}

Result<std::vector<ReviewRow>> HrService::expiry_review(const Date& as_of) {
    auto appointments = list_appointments();
    if (!appointments) {
        return std::move(appointments).error();
    }
    return review_rows(*appointments, as_of, config_.warning_months);
}

Result<std::vector<ExpiryNotification>> HrService::generate_review(const Actor& actor, const Date& as_of) {
    // One transaction: concurrent runs are serialized, keeping the ledger idempotent.
    return store_.transact([&](Transaction& tx) -> Result<std::vector<ExpiryNotification>> {
        const auto appointments =
            decode_all<GradeAppointment>(tx.all(Collection::Appointments), codec::decode_appointment);
        const auto ledger =
            decode_all<ExpiryNotification>(tx.all(Collection::Notifications), codec::decode_notification);
        auto fresh = pending_notifications(appointments, ledger, as_of, clock_(), config_.warning_months);
        for (auto& n : fresh) {
            n.notification_id = tx.next_id("notification");
            tx.put(Collection::Notifications, n.notification_id, codec::encode(n), n.appointment_id);
        }
        audit(tx, actor, "generate_review", format_date(as_of),
              std::to_string(fresh.size()) + " new notifications");
        return fresh;
    });
}

Result<std::vector<ExpiryNotification>> HrService::list_notifications() {
    return store_.transact([&](Transaction& tx) -> Result<std::vector<ExpiryNotification>> {
        return decode_all<ExpiryNotification>(tx.all(Collection::Notifications), codec::decode_notification);
    });
}

Result<ExpiryNotification> HrService::close_notification(const Actor& actor, const std::string& notification_id) {
    return store_.transact([&](Transaction& tx) -> Result<ExpiryNotification> {
        auto body = tx.get(Collection::Notifications, notification_id);
        if (!body) {
            return make_error(ErrorCode::NotFound, "notification " + notification_id + " not found");
        }
        auto n = decode_stored<ExpiryNotification>(*body, codec::decode_notification);
        n.open = false;
        tx.put(Collection::Notifications, n.notification_id, codec::encode(n), n.appointment_id);
        audit(tx, actor, "close_notification", notification_id);
        return n;
    });
}

}  // namespace hrm
