#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hrm/appointment.hpp"
#include "hrm/bibliography.hpp"
#include "hrm/config.hpp"
#include "hrm/documents.hpp"
#include "hrm/expiry.hpp"
#include "hrm/external.hpp"
#include "hrm/people.hpp"
#include "hrm/registry.hpp"
#include "hrm/requirements.hpp"
#include "hrm/result.hpp"
#include "hrm/store.hpp"
#include "hrm/workflow.hpp"

namespace hrm {

struct Actor {
    std::string name;
};

using Clock = std::function<Timestamp()>;

Clock system_clock();

struct AuditEntry {
    std::string audit_id;
    std::string actor;
    Timestamp at;
    std::string operation;
    std::string entity;
    std::string outcome;
};

struct RowIssue {
    std::size_t line = 0;
    std::string reason;
};

struct ImportReport {
    int created = 0;
    std::vector<RowIssue> skipped;
    std::vector<RowIssue> errors;
};

/// The business tier: every module operation backed by the store. Each
/// successful mutating call appends exactly one audit entry in the same
/// transaction as its last write.
class HrService {
public:
    HrService(Store& store, ServiceConfig config, Clock clock = system_clock(),
              MinistryClient* ministry = nullptr, BibliographyClient* bibliography = nullptr);

    const ServiceConfig& config() const { return config_; }
    Store& store() { return store_; }

    // People
    Result<Person> register_person(const Actor& actor, const std::string& full_name, const Date& date_of_birth,
                                   bool doctoral_degree);
    Result<Person> get_person(const std::string& person_id);
    Result<std::vector<Person>> list_persons();
    Result<Employee> add_employee(const Actor& actor, const std::string& person_id, StaffGroup group,
                                  const Date& employment_start);
    Result<std::vector<Employee>> list_employees();
    /// CSV: full_name,date_of_birth,doctoral_degree,staff_group,employment_start
    Result<ImportReport> import_employees(const Actor& actor, std::string_view csv);

    // Appointment procedures
    Result<AppointmentProcedure> open_procedure(const Actor& actor, const AcademicGrade& grade,
                                                const std::string& council_ref);
    Result<AppointmentProcedure> advance(const Actor& actor, const std::string& procedure_id,
                                         EventPayload payload, std::int64_t expected_version);
    Result<AppointmentProcedure> get_procedure(const std::string& procedure_id);
    Result<std::vector<AppointmentProcedure>> list_procedures();
    /// Line-delimited event log accepted by `replay`.
    Result<std::string> export_procedure_log(const std::string& procedure_id);
    Result<std::vector<GradeAppointment>> list_appointments(const std::optional<std::string>& person_id = {});

    // Expiry
    Result<std::vector<ReviewRow>> expiry_review(const Date& as_of);
    Result<std::vector<ExpiryNotification>> generate_review(const Actor& actor, const Date& as_of);
    Result<std::vector<ExpiryNotification>> list_notifications();
    Result<ExpiryNotification> close_notification(const Actor& actor, const std::string& notification_id);

    // Register of Researchers
    Result<RegistryApplication> submit_registration(const Actor& actor, const std::string& person_id,
                                                    const std::string& category,
                                                    const std::vector<std::string>& documents);
    /// Re-sends an application the ministry has not acknowledged yet.
    Result<RegistryApplication> forward_application(const Actor& actor, const std::string& application_id);
    Result<RegistryApplication> record_ministry_decision(const Actor& actor, const std::string& application_id,
                                                         const MinistryDecision& decision);
    /// Fetches the decision from the ministry and records it when present.
    Result<RegistryApplication> poll_ministry(const Actor& actor, const std::string& application_id);
    Result<RegistryApplication> get_application(const std::string& application_id);
    Result<std::vector<RegistryApplication>> list_applications();
    Result<std::vector<RegistryEntry>> list_registry_entries();

    // Bibliography
    Result<void> map_author(const Actor& actor, const std::string& person_id, const std::string& author_id);
    Result<SyncReport> sync_publications(const Actor& actor, const std::string& person_id);
    Result<std::vector<PublicationRecord>> list_publications(const std::string& person_id,
                                                             const std::optional<std::string>& type_of_work = {});
    Result<void> remove_publication(const Actor& actor, const std::string& person_id,
                                    const std::string& source_key);

    // Attached documents
    Result<AttachedDocument> attach(const Actor& actor, const OwnerRef& owner, const std::string& path,
                                    const std::string& declared_format, const std::string& description);
    Result<std::vector<AttachedDocument>> list_attachments(const OwnerRef& owner);
    Result<ResolvedDocument> resolve(const std::string& document_id);
    Result<AttachedDocument> detach(const Actor& actor, const std::string& document_id);
    Result<std::string> attachment_manifest(const std::string& procedure_id);

    // Requirements
    Result<Requirement> add_requirement(const Actor& actor, const std::string& text, const std::string& category,
                                        const std::string& priority);
    Result<std::vector<Requirement>> backlog();
    Result<ImportReport> import_requirements(const Actor& actor, std::string_view csv);

    Result<std::vector<AuditEntry>> audit_log();

private:
    Result<AppointmentProcedure> load_procedure(Transaction& tx, const std::string& procedure_id);
    void save_procedure(Transaction& tx, const AppointmentProcedure& p, std::size_t first_new_event);
    Result<void> store_appointments(Transaction& tx, std::vector<GradeAppointment> appointments);
    void audit(Transaction& tx, const Actor& actor, std::string operation, std::string entity,
               std::string outcome = "ok");
    bool owner_exists(Transaction& tx, const OwnerRef& owner);
    Result<RegistryApplication> forward(RegistryApplication application, const Actor* audited_as);
    Result<RegistryApplication> apply_decision(Transaction& tx, const Actor& actor, const std::string& application_id,
                                               const MinistryDecision& decision, const char* operation);
    std::shared_ptr<std::mutex> sync_lock_for(const std::string& person_id);

    Store& store_;
    ServiceConfig config_;
    Clock clock_;
    MinistryClient* ministry_;
    BibliographyClient* bibliography_;

    std::mutex sync_locks_guard_;
    std::map<std::string, std::shared_ptr<std::mutex>> sync_locks_;
};

}  // namespace hrm
