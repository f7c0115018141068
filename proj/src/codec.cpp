#include "hrm/codec.hpp"

#include <stdexcept>

namespace hrm::codec {

namespace {

struct DecodeFailure : std::runtime_error {
    std::string field;
    DecodeFailure(std::string f, const std::string& what) : std::runtime_error(what), field(std::move(f)) {}
};

const json& member(const json& j, const char* key) {
    if (!j.is_object()) {
        throw DecodeFailure(key, "expected a JSON object");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        throw DecodeFailure(key, std::string("missing field '") + key + "'");
    }
    return *it;
}

std::string str(const json& j, const char* key) {
    const auto& v = member(j, key);
    if (!v.is_string()) {
        throw DecodeFailure(key, std::string("field '") + key + "' must be a string");
    }
    return v.get<std::string>();
}

std::string str_or(const json& j, const char* key, std::string fallback) {
    if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) {
        return fallback;
    }
    return str(j, key);
}

bool boolean(const json& j, const char* key, std::optional<bool> fallback = std::nullopt) {
    if (fallback && (!j.is_object() || !j.contains(key))) {
        return *fallback;
    }
    const auto& v = member(j, key);
    if (!v.is_boolean()) {
        throw DecodeFailure(key, std::string("field '") + key + "' must be a boolean");
    }
    return v.get<bool>();
}

std::int64_t integer(const json& j, const char* key) {
    const auto& v = member(j, key);
    if (!v.is_number_integer()) {
        throw DecodeFailure(key, std::string("field '") + key + "' must be an integer");
    }
    return v.get<std::int64_t>();
}

std::vector<std::string> strings(const json& j, const char* key, bool optional = false) {
    if (optional && (!j.is_object() || !j.contains(key))) {
        return {};
    }
    const auto& v = member(j, key);
    if (!v.is_array()) {
        throw DecodeFailure(key, std::string("field '") + key + "' must be an array of strings");
    }
    std::vector<std::string> out;
    for (const auto& item : v) {
        if (!item.is_string()) {
            throw DecodeFailure(key, std::string("field '") + key + "' must be an array of strings");
        }
        out.push_back(item.get<std::string>());
    }
    return out;
}

Date date(const json& j, const char* key) {
    auto parsed = parse_date(str(j, key));
    if (!parsed) {
        throw DecodeFailure(key, std::string("field '") + key + "' must be an ISO 8601 date");
    }
    return *parsed;
}

std::optional<Date> optional_date(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) {
        return std::nullopt;
    }
    return date(j, key);
}

Timestamp timestamp(const json& j, const char* key) {
    auto parsed = parse_timestamp(str(j, key));
    if (!parsed) {
        throw DecodeFailure(key, std::string("field '") + key + "' must be an ISO 8601 UTC timestamp");
    }
    return *parsed;
}

json optional_date_json(const std::optional<Date>& d) {
    return d ? json(format_date(*d)) : json(nullptr);
}

template <class F>
auto guarded(F&& f) -> Result<decltype(f())> {
    try {
        return f();
    } catch (const DecodeFailure& e) {
        return make_error(ErrorCode::ValidationError, e.what(), e.field);
    } catch (const json::exception& e) {
        return make_error(ErrorCode::ValidationError, e.what());
    }
}

template <class T>
T unwrap(Result<T> r, const char* field) {
    if (!r) {
        throw DecodeFailure(field, r.error().message);
    }
    return std::move(r).value();
}

}  // namespace

json encode(const AcademicGrade& g) {
    return {{"name", g.name()}, {"track", to_string(g.track())}, {"rank", g.rank_in_track()}};
}

Result<AcademicGrade> decode_grade(const json& j) {
    std::string name;
    std::optional<GradeTrack> track;
    try {
        if (j.is_string()) {
            name = j.get<std::string>();
        } else {
            name = str(j, "name");
            if (j.contains("track") && !j.at("track").is_null()) {
                track = parse_track(str(j, "track"));
                if (!track) {
                    return make_error(ErrorCode::ValidationError, "unknown grade track", "track");
                }
            }
        }
    } catch (const DecodeFailure& e) {
        return make_error(ErrorCode::ValidationError, e.what(), e.field);
    }
    return resolve_grade(name, track);
}

json encode(const Person& p) {
    return {{"person_id", p.person_id},
            {"full_name", p.full_name},
            {"date_of_birth", format_date(p.date_of_birth)},
            {"doctoral_degree", p.doctoral_degree}};
}

Result<Person> decode_person(const json& j) {
    return guarded([&] {
        return Person{str_or(j, "person_id", ""), str(j, "full_name"), date(j, "date_of_birth"),
                      boolean(j, "doctoral_degree", false)};
    });
}

json encode(const Employee& e) {
    return {{"person_id", e.person_id},
            {"staff_group", to_string(e.staff_group)},
            {"employment_start", format_date(e.employment_start)},
            {"active", e.active}};
}

Result<Employee> decode_employee(const json& j) {
    return guarded([&] {
        auto group = parse_staff_group(str(j, "staff_group"));
        if (!group) {
            throw DecodeFailure("staff_group", "staff_group must be Administrative or Academic");
        }
        return Employee{str(j, "person_id"), *group, date(j, "employment_start"), boolean(j, "active", true)};
    });
}

json encode_payload(const EventPayload& payload) {
    return std::visit(
        [](const auto& e) -> json {
            using E = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<E, events::InitiateDecision>) {
                return {{"council_ref", e.council_ref}};
            } else if constexpr (std::is_same_v<E, events::SelectCommittee>) {
                return {{"members", e.members}};
            } else if constexpr (std::is_same_v<E, events::AnnounceVacancy>) {
                return {{"announcement_date", format_date(e.announcement_date)}};
            } else if constexpr (std::is_same_v<E, events::ReceiveApplication>) {
                return {{"applicant", e.applicant}, {"documents", e.documents}};
            } else if constexpr (std::is_same_v<E, events::SubmitReport>) {
                return {{"report_ref", e.report_ref}, {"assessments", e.assessments}};
            } else if constexpr (std::is_same_v<E, events::BoardDecision>) {
                return {{"promoted", e.promoted}};
            } else if constexpr (std::is_same_v<E, events::RecognizeAppointments>) {
                return {{"effective_date", format_date(e.effective_date)}};
            } else if constexpr (std::is_same_v<E, events::Terminate>) {
                return {{"reason", e.reason}};
            } else {
                return json::object();
            }
        },
        payload);
}

Result<EventPayload> decode_payload(EventKind kind, const json& p) {
    return guarded([&]() -> EventPayload {
        const json& body = p.is_null() ? json::object() : p;
        if (!body.is_object()) {
            throw DecodeFailure("payload", "payload must be a JSON object");
        }
        switch (kind) {
            case EventKind::InitiateDecision: return events::InitiateDecision{str(body, "council_ref")};
            case EventKind::SelectCommittee: return events::SelectCommittee{strings(body, "members")};
            case EventKind::AnnounceVacancy:
                return events::AnnounceVacancy{date(body, "announcement_date")};
            case EventKind::ReceiveApplication:
                return events::ReceiveApplication{str(body, "applicant"), strings(body, "documents", true)};
            case EventKind::CloseApplications: return events::CloseApplications{};
            case EventKind::SubmitReport: {
                events::SubmitReport r{str(body, "report_ref"), {}};
                if (body.contains("assessments")) {
                    const auto& a = body.at("assessments");
                    if (!a.is_object()) {
                        throw DecodeFailure("assessments", "assessments must be an object of strings");
                    }
                    for (const auto& [who, text] : a.items()) {
                        if (!text.is_string()) {
                            throw DecodeFailure("assessments", "assessments must be an object of strings");
                        }
                        r.assessments.emplace(who, text.get<std::string>());
                    }
                }
                return r;
            }
            case EventKind::BoardDecision: return events::BoardDecision{strings(body, "promoted")};
            case EventKind::SenateConfirmation: return events::SenateConfirmation{};
            case EventKind::RecognizeAppointments:
                return events::RecognizeAppointments{date(body, "effective_date")};
            case EventKind::Terminate: return events::Terminate{str(body, "reason")};
        }
        throw DecodeFailure("event", "unknown event kind");
    });
}

json encode(const ProcedureEvent& e) {
    return {{"ts", format_timestamp(e.occurred_at)},
            {"actor", e.actor},
            {"event", to_string(e.kind())},
            {"payload", encode_payload(e.payload)}};
}

Result<ProcedureEvent> decode_event(const json& j) {
    return guarded([&] {
        auto kind = parse_event_kind(str(j, "event"));
        if (!kind) {
            throw DecodeFailure("event", "unknown event tag '" + str(j, "event") + "'");
        }
        auto payload = unwrap(decode_payload(*kind, j.contains("payload") ? j.at("payload") : json::object()),
                              "payload");
        return ProcedureEvent{timestamp(j, "ts"), str(j, "actor"), std::move(payload)};
    });
}

json encode(const WorkflowState& st) {
    json applicants = json::array();
    for (const auto& a : st.applicants) {
        applicants.push_back({{"person_id", a.person_id},
                              {"received_at", format_timestamp(a.received_at)},
                              {"documents", a.documents}});
    }
    return {{"state", to_string(st.state)},
            {"council_ref", st.council_ref},
            {"committee", st.committee},
            {"announcement_date", optional_date_json(st.announcement_date)},
            {"applicants", applicants},
            {"report_ref", st.report_ref},
            {"assessments", st.assessments},
            {"promoted", st.promoted},
            {"effective_date", optional_date_json(st.effective_date)},
            {"termination_reason", st.termination_reason}};
}

json encode(const AppointmentProcedure& p) {
    json history = json::array();
    for (const auto& h : p.history) {
        auto e = encode(h.event);
        e["resulting_state"] = to_string(h.resulting_state);
        history.push_back(std::move(e));
    }
    json out = encode(p.current);
    out["procedure_id"] = p.procedure_id;
    out["target_grade"] = encode(p.target_grade);
    out["version"] = p.version;
    out["history"] = std::move(history);
    json legal = json::array();
    for (auto k : legal_events(p.state())) {
        legal.push_back(to_string(k));
    }
    out["legal_events"] = std::move(legal);
    return out;
}

json encode(const GradeAppointment& a) {
    return {{"appointment_id", a.appointment_id}, {"person_id", a.person_id},
            {"grade", encode(a.grade)},           {"procedure_id", a.procedure_id},
            {"valid_from", format_date(a.valid_from)}, {"valid_to", optional_date_json(a.valid_to)}};
}

Result<GradeAppointment> decode_appointment(const json& j) {
    return guarded([&] {
        return GradeAppointment{str(j, "appointment_id"),
                                str(j, "person_id"),
                                unwrap(decode_grade(member(j, "grade")), "grade"),
                                str(j, "procedure_id"),
                                date(j, "valid_from"),
                                optional_date(j, "valid_to")};
    });
}

json encode(const ExpiryStatus& s) {
    return {{"status", to_string(s.state)},
            {"days_remaining", s.days_remaining},
            {"deadline_to_initiate", format_date(s.deadline_to_initiate)}};
}

json encode(const ExpiryNotification& n) {
    json out = encode(n.status);
    out["notification_id"] = n.notification_id;
    out["appointment_id"] = n.appointment_id;
    out["person_id"] = n.person_id;
    out["grade"] = n.grade_name;
    out["valid_to"] = format_date(n.valid_to);
    out["generated_at"] = format_timestamp(n.generated_at);
    out["open"] = n.open;
    return out;
}

Result<ExpiryNotification> decode_notification(const json& j) {
    return guarded([&] {
        auto state = parse_expiry_state(str(j, "status"));
        if (!state) {
            throw DecodeFailure("status", "unknown expiry status");
        }
        ExpiryStatus status{*state, static_cast<long>(integer(j, "days_remaining")),
                            date(j, "deadline_to_initiate")};
        return ExpiryNotification{str(j, "notification_id"), str(j, "appointment_id"),
                                  str(j, "person_id"),       str(j, "grade"),
                                  date(j, "valid_to"),       status,
                                  timestamp(j, "generated_at"), boolean(j, "open", true)};
    });
}

json encode(const RegistryApplication& a) {
    return {{"application_id", a.application_id},
            {"person_id", a.person_id},
            {"category", to_string(a.category)},
            {"documents", a.documents},
            {"status", to_string(a.status)},
            {"submitted_at", format_timestamp(a.submitted_at)},
            {"scientist_id", a.scientist_id ? json(*a.scientist_id) : json(nullptr)},
            {"rejection_reason", a.rejection_reason},
            {"ack_token", a.ack_token ? json(*a.ack_token) : json(nullptr)}};
}

Result<RegistryApplication> decode_registry_application(const json& j) {
    return guarded([&] {
        auto status = parse_application_status(str(j, "status"));
        if (!status) {
            throw DecodeFailure("status", "unknown application status");
        }
        RegistryApplication a;
        a.application_id = str(j, "application_id");
        a.person_id = str(j, "person_id");
        a.category = unwrap(parse_registry_category(str(j, "category")), "category");
        a.documents = strings(j, "documents", true);
        a.status = *status;
        a.submitted_at = timestamp(j, "submitted_at");
        if (j.contains("scientist_id") && !j.at("scientist_id").is_null()) {
            a.scientist_id = str(j, "scientist_id");
        }
        a.rejection_reason = str_or(j, "rejection_reason", "");
        if (j.contains("ack_token") && !j.at("ack_token").is_null()) {
            a.ack_token = str(j, "ack_token");
        }
        return a;
    });
}

json encode(const RegistryEntry& e) {
    return {{"scientist_id", e.scientist_id},
            {"person_id", e.person_id},
            {"category", to_string(e.category)},
            {"registered_at", format_date(e.registered_at)},
            {"active", e.active}};
}

Result<RegistryEntry> decode_registry_entry(const json& j) {
    return guarded([&] {
        return RegistryEntry{str(j, "scientist_id"), str(j, "person_id"),
                             unwrap(parse_registry_category(str(j, "category")), "category"),
                             date(j, "registered_at"), boolean(j, "active", true)};
    });
}

json encode(const PublicationRecord& r) {
    return {{"source_key", r.source_key},
            {"title", r.title},
            {"type_of_work", r.type_of_work},
            {"publishing_date", format_date(r.publishing_date)},
            {"url", r.url}};
}

Result<PublicationRecord> decode_publication(const json& j) {
    return guarded([&] {
        return PublicationRecord{str(j, "source_key"), str(j, "title"), str(j, "type_of_work"),
                                 date(j, "publishing_date"), str(j, "url")};
    });
}

json encode(const SyncReport& r) {
    return {{"added", r.added}, {"updated", r.updated}, {"unchanged", r.unchanged}};
}

json encode(const OwnerRef& o) { return {{"kind", to_string(o.kind)}, {"id", o.id}}; }

Result<OwnerRef> decode_owner(const json& j) {
    return guarded([&] {
        auto kind = parse_owner_kind(str(j, "kind"));
        if (!kind) {
            throw DecodeFailure("kind", "owner kind must be procedure, registry_application or employee");
        }
        return OwnerRef{*kind, str(j, "id")};
    });
}

json encode(const AttachedDocument& d) {
    return {{"document_id", d.document_id},
            {"owner", encode(d.owner)},
            {"path", d.path},
            {"declared_format", d.declared_format},
            {"attached_at", format_timestamp(d.attached_at)},
            {"description", d.description},
            {"deleted", d.deleted}};
}

Result<AttachedDocument> decode_document(const json& j) {
    return guarded([&] {
        return AttachedDocument{str(j, "document_id"),
                                unwrap(decode_owner(member(j, "owner")), "owner"),
                                str(j, "path"),
                                str(j, "declared_format"),
                                timestamp(j, "attached_at"),
                                str_or(j, "description", ""),
                                boolean(j, "deleted", false)};
    });
}

json encode(const Requirement& r) {
    return {{"requirement_id", r.requirement_id},
            {"text", r.text},
            {"kind", to_string(r.kind)},
            {"category", to_string(r.category)},
            {"priority", to_string(r.priority)},
            {"created_at", format_timestamp(r.created_at)}};
}

Result<Requirement> decode_requirement(const json& j) {
    return guarded([&] {
        return unwrap(make_requirement(str(j, "requirement_id"), str(j, "text"), str(j, "category"),
                                       str(j, "priority"), timestamp(j, "created_at")),
                      "requirement");
    });
}

}  // namespace hrm::codec
