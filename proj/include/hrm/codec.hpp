#pragma once

// JSON encodings shared by the store, the HTTP API and the event log.

#include <nlohmann/json.hpp>

#include "hrm/appointment.hpp"
#include "hrm/bibliography.hpp"
#include "hrm/documents.hpp"
#include "hrm/expiry.hpp"
#include "hrm/people.hpp"
#include "hrm/registry.hpp"
#include "hrm/requirements.hpp"
#include "hrm/result.hpp"
#include "hrm/workflow.hpp"

namespace hrm::codec {

using nlohmann::json;

json encode(const AcademicGrade& g);
Result<AcademicGrade> decode_grade(const json& j);

json encode(const Person& p);
Result<Person> decode_person(const json& j);

json encode(const Employee& e);
Result<Employee> decode_employee(const json& j);

json encode_payload(const EventPayload& payload);
Result<EventPayload> decode_payload(EventKind kind, const json& payload);

/// {"actor","event","payload","ts"}
json encode(const ProcedureEvent& e);
Result<ProcedureEvent> decode_event(const json& j);

json encode(const WorkflowState& st);
json encode(const AppointmentProcedure& p);

json encode(const GradeAppointment& a);
Result<GradeAppointment> decode_appointment(const json& j);

json encode(const ExpiryStatus& s);
json encode(const ExpiryNotification& n);
Result<ExpiryNotification> decode_notification(const json& j);

json encode(const RegistryApplication& a);
Result<RegistryApplication> decode_registry_application(const json& j);
json encode(const RegistryEntry& e);
Result<RegistryEntry> decode_registry_entry(const json& j);

json encode(const PublicationRecord& r);
Result<PublicationRecord> decode_publication(const json& j);
json encode(const SyncReport& r);

json encode(const OwnerRef& o);
Result<OwnerRef> decode_owner(const json& j);
json encode(const AttachedDocument& d);
Result<AttachedDocument> decode_document(const json& j);

json encode(const Requirement& r);
Result<Requirement> decode_requirement(const json& j);

}  // namespace hrm::codec
