#include "hrm/service.hpp"
#include "service_internal.hpp"

namespace hrm {

using detail::decode_all;
using detail::decode_stored;

Result<RegistryApplication> HrService::submit_registration(const Actor& actor, const std::string& person_id,
                                                           const std::string& category,
                                                           const std::vector<std::string>& documents) {
    auto parsed = parse_registry_category(category);
    if (!parsed) {
        return std::move(parsed).error();
    }
    auto stored = store_.transact([&](Transaction& tx) -> Result<RegistryApplication> {
        auto person_body = tx.get(Collection::Persons, person_id);
        if (!person_body) {
            return make_error(ErrorCode::NotFound, "person " + person_id + " not found");
        }
        const auto person = decode_stored<Person>(*person_body, codec::decode_person);
        const auto entries =
            decode_all<RegistryEntry>(tx.by_owner(Collection::RegistryEntries, person_id), codec::decode_registry_entry);
        const auto applications = decode_all<RegistryApplication>(
            tx.by_owner(Collection::RegistryApplications, person_id), codec::decode_registry_application);
        if (auto ok = check_submission(person, *parsed, entries, applications); !ok) {
            return ok.error();
        }
        RegistryApplication app;
        app.application_id = tx.next_id("application");
        app.person_id = person_id;
        app.category = *parsed;
        app.documents = documents;
        app.status = ApplicationStatus::Submitted;
        app.submitted_at = clock_();
        tx.put(Collection::RegistryApplications, app.application_id, codec::encode(app), person_id);
        audit(tx, actor, "submit_registration", app.application_id);
        return app;
    });
    if (!stored) {
        return stored;
    }
    return forward(std::move(*stored), nullptr);
}

// Submission already wrote the audit entry; an explicit re-send passes its actor.
Result<RegistryApplication> HrService::forward(RegistryApplication application, const Actor* audited_as) {
    if (application.ack_token) {
        if (audited_as == nullptr) {
            return application;
        }
        return store_.transact([&](Transaction& tx) -> Result<RegistryApplication> {
            audit(tx, *audited_as, "forward_application", application.application_id, "already acknowledged");
            return application;
        });
    }
    if (ministry_ == nullptr) {
        return make_error(ErrorCode::TransportError,
                          "no ministry endpoint configured; application " + application.application_id +
                              " remains Submitted");
    }
    auto person = get_person(application.person_id);
    if (!person) {
        return std::move(person).error();
    }
    auto ack = ministry_->submit(MinistryRequest{application.application_id, person->full_name,
                                                 person->date_of_birth, application.category,
                                                 application.documents});
    if (!ack) {
        return std::move(ack).error();
    }
    return store_.transact([&](Transaction& tx) -> Result<RegistryApplication> {
        auto body = tx.get(Collection::RegistryApplications, application.application_id);
        if (!body) {
            return make_error(ErrorCode::NotFound, "application " + application.application_id + " not found");
        }
        auto current = decode_stored<RegistryApplication>(*body, codec::decode_registry_application);
        current.ack_token = *ack;
        tx.put(Collection::RegistryApplications, current.application_id, codec::encode(current),
               current.person_id);
        if (audited_as != nullptr) {
            audit(tx, *audited_as, "forward_application", current.application_id, "acknowledged");
        }
        return current;
    });
}

Result<RegistryApplication> HrService::forward_application(const Actor& actor, const std::string& application_id) {
    auto app = get_application(application_id);
    if (!app) {
        return app;
    }
    if (app->status != ApplicationStatus::Submitted) {
        return make_error(ErrorCode::AlreadyDecided, "application " + application_id + " is already decided");
    }
    return forward(std::move(*app), &actor);
}

Result<RegistryApplication> HrService::apply_decision(Transaction& tx, const Actor& actor,
                                                      const std::string& application_id,
                                                      const MinistryDecision& decision, const char* operation) {
    auto body = tx.get(Collection::RegistryApplications, application_id);
    if (!body) {
        return make_error(ErrorCode::NotFound, "application " + application_id + " not found");
    }
    auto app = decode_stored<RegistryApplication>(*body, codec::decode_registry_application);
    const auto entries = decode_all<RegistryEntry>(tx.all(Collection::RegistryEntries), codec::decode_registry_entry);
    if (auto ok = check_decision(app, decision, entries); !ok) {
        return ok.error();
    }
    if (decision.approved) {
        app.status = ApplicationStatus::Approved;
        app.scientist_id = decision.scientist_id;
        RegistryEntry entry{decision.scientist_id, app.person_id, app.category, date_of(clock_()), true};
        tx.put(Collection::RegistryEntries, entry.scientist_id, codec::encode(entry), entry.person_id);
    } else {
        app.status = ApplicationStatus::Rejected;
        app.rejection_reason = decision.reason;
    }
    tx.put(Collection::RegistryApplications, app.application_id, codec::encode(app), app.person_id);
    audit(tx, actor, operation, application_id, std::string(to_string(app.status)));
    return app;
}

Result<RegistryApplication> HrService::record_ministry_decision(const Actor& actor,
                                                                const std::string& application_id,
                                                                const MinistryDecision& decision) {
    return store_.transact([&](Transaction& tx) {
        return apply_decision(tx, actor, application_id, decision, "record_ministry_decision");
    });
}

Result<RegistryApplication> HrService::poll_ministry(const Actor& actor, const std::string& application_id) {
    auto app = get_application(application_id);
    if (!app) {
        return app;
    }
    if (app->status != ApplicationStatus::Submitted) {
        return make_error(ErrorCode::AlreadyDecided, "application " + application_id + " is already decided");
    }
    if (ministry_ == nullptr) {
        return make_error(ErrorCode::TransportError, "no ministry endpoint configured");
    }
    auto decision = ministry_->fetch_decision(application_id);
    if (!decision) {
        return std::move(decision).error();
    }
    return store_.transact([&](Transaction& tx) -> Result<RegistryApplication> {
        if (!*decision) {
            audit(tx, actor, "poll_ministry", application_id, "pending");
            return app;
        }
        return apply_decision(tx, actor, application_id, **decision, "poll_ministry");
    });
}

Result<RegistryApplication> HrService::get_application(const std::string& application_id) {
    return store_.transact([&](Transaction& tx) -> Result<RegistryApplication> {
        auto body = tx.get(Collection::RegistryApplications, application_id);
        if (!body) {
            return make_error(ErrorCode::NotFound, "application " + application_id + " not found");
        }
        return decode_stored<RegistryApplication>(*body, codec::decode_registry_application);
    });
}

Result<std::vector<RegistryApplication>> HrService::list_applications() {
    return store_.transact([&](Transaction& tx) -> Result<std::vector<RegistryApplication>> {
        return decode_all<RegistryApplication>(tx.all(Collection::RegistryApplications),
                                               codec::decode_registry_application);
    });
}

Result<std::vector<RegistryEntry>> HrService::list_registry_entries() {
    return store_.transact([&](Transaction& tx) -> Result<std::vector<RegistryEntry>> {
        return decode_all<RegistryEntry>(tx.all(Collection::RegistryEntries), codec::decode_registry_entry);
    });
}

}  // namespace hrm
