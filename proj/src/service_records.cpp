#include <algorithm>

#include "hrm/service.hpp"
#include "service_internal.hpp"

namespace hrm {

using detail::decode_all;
using detail::decode_stored;
using nlohmann::json;

namespace {

// Imported requirements may carry ids that collide with generated ones.
std::string fresh_requirement_id(Transaction& tx) {
    for (;;) {
        auto id = tx.next_id("requirement");
        if (!tx.get(Collection::Requirements, id)) {
            return id;
        }
    }
}

std::string publication_row_id(const std::string& person_id, const std::string& source_key) {
    return person_id + "/" + source_key;
}

}  // namespace

// --- bibliography ---------------------------------------------------------

Result<void> HrService::map_author(const Actor& actor, const std::string& person_id, const std::string& author_id) {
    if (author_id.empty()) {
        return make_error(ErrorCode::ValidationError, "author_id must not be empty", "author_id");
    }
    return store_.transact([&](Transaction& tx) -> Result<void> {
        if (!tx.get(Collection::Persons, person_id)) {
            return make_error(ErrorCode::NotFound, "person " + person_id + " not found");
        }
        tx.put(Collection::AuthorMappings, person_id, json{{"person_id", person_id}, {"author_id", author_id}},
               person_id);
        audit(tx, actor, "map_author", person_id, author_id);
        return {};
    });
}

std::shared_ptr<std::mutex> HrService::sync_lock_for(const std::string& person_id) {
    std::lock_guard lock(sync_locks_guard_);
    auto& slot = sync_locks_[person_id];
    if (!slot) {
        slot = std::make_shared<std::mutex>();
    }
    return slot;
}

Result<SyncReport> HrService::sync_publications(const Actor& actor, const std::string& person_id) {
    const auto person_lock = sync_lock_for(person_id);
    std::lock_guard serialized(*person_lock);

    auto author = store_.transact([&](Transaction& tx) -> Result<std::string> {
        if (!tx.get(Collection::Persons, person_id)) {
            return make_error(ErrorCode::NotFound, "person " + person_id + " not found");
        }
        auto mapping = tx.get(Collection::AuthorMappings, person_id);
        if (!mapping) {
            return make_error(ErrorCode::NoAuthorMapping,
                              "person " + person_id + " is not mapped to a bibliography author");
        }
        return mapping->at("author_id").get<std::string>();
    });
    if (!author) {
        return std::move(author).error();
    }
    if (bibliography_ == nullptr) {
        return make_error(ErrorCode::TransportError, "no bibliography endpoint configured");
    }
    auto remote = bibliography_->fetch(*author);
    if (!remote) {
        return std::move(remote).error();
    }
    return store_.transact([&](Transaction& tx) -> Result<SyncReport> {
        const auto local =
            decode_all<PublicationRecord>(tx.by_owner(Collection::Publications, person_id), codec::decode_publication);
        auto plan = reconcile(local, *remote);
        if (!plan) {
            return std::move(plan).error();
        }
        for (const auto& rec : plan->upserts) {
            tx.put(Collection::Publications, publication_row_id(person_id, rec.source_key), codec::encode(rec),
                   person_id);
        }
        const auto& r = plan->report;
        audit(tx, actor, "sync_publications", person_id,
              "added " + std::to_string(r.added) + ", updated " + std::to_string(r.updated) + ", unchanged " +
                  std::to_string(r.unchanged));
        return r;
    });
}

Result<std::vector<PublicationRecord>> HrService::list_publications(const std::string& person_id,
                                                                    const std::optional<std::string>& type_of_work) {
    return store_.transact([&](Transaction& tx) -> Result<std::vector<PublicationRecord>> {
        auto records =
            decode_all<PublicationRecord>(tx.by_owner(Collection::Publications, person_id), codec::decode_publication);
        return sorted_publications(std::move(records), type_of_work);
    });
}

Result<void> HrService::remove_publication(const Actor& actor, const std::string& person_id,
                                           const std::string& source_key) {
    return store_.transact([&](Transaction& tx) -> Result<void> {
        if (!tx.erase(Collection::Publications, publication_row_id(person_id, source_key))) {
            return make_error(ErrorCode::NotFound,
                              "publication " + source_key + " of person " + person_id + " not found");
        }
        audit(tx, actor, "remove_publication", publication_row_id(person_id, source_key));
        return {};
    });
}

// --- attached documents ---------------------------------------------------

bool HrService::owner_exists(Transaction& tx, const OwnerRef& owner) {
    switch (owner.kind) {
        case OwnerKind::Procedure: return tx.get(Collection::Procedures, owner.id).has_value();
        case OwnerKind::RegistryApplication: return tx.get(Collection::RegistryApplications, owner.id).has_value();
        case OwnerKind::Employee: return tx.get(Collection::Employees, owner.id).has_value();
    }
    return false;
}

Result<AttachedDocument> HrService::attach(const Actor& actor, const OwnerRef& owner, const std::string& path,
                                           const std::string& declared_format, const std::string& description) {
    if (auto ok = validate_attachment_path(path); !ok) {
        return ok.error();
    }
    return store_.transact([&](Transaction& tx) -> Result<AttachedDocument> {
        if (!owner_exists(tx, owner)) {
            return make_error(ErrorCode::OwnerNotFound,
                              std::string(to_string(owner.kind)) + " " + owner.id + " does not exist");
        }
        AttachedDocument doc{tx.next_id("document"), owner, path, declared_format, clock_(), description, false};
        tx.put(Collection::Documents, doc.document_id, codec::encode(doc),
               std::string(to_string(owner.kind)) + ":" + owner.id);
        audit(tx, actor, "attach", doc.document_id);
        return doc;
    });
}

Result<std::vector<AttachedDocument>> HrService::list_attachments(const OwnerRef& owner) {
    return store_.transact([&](Transaction& tx) -> Result<std::vector<AttachedDocument>> {
        const auto docs = decode_all<AttachedDocument>(
            tx.by_owner(Collection::Documents, std::string(to_string(owner.kind)) + ":" + owner.id),
            codec::decode_document);
        return attachments_of(docs, owner);
    });
}

Result<ResolvedDocument> HrService::resolve(const std::string& document_id) {
    return store_.transact([&](Transaction& tx) -> Result<ResolvedDocument> {
        auto body = tx.get(Collection::Documents, document_id);
        if (!body) {
            return make_error(ErrorCode::NotFound, "document " + document_id + " not found");
        }
        const auto doc = decode_stored<AttachedDocument>(*body, codec::decode_document);
        if (doc.deleted) {
            return make_error(ErrorCode::NotFound, "document " + document_id + " was detached");
        }
        return ResolvedDocument{doc.path, doc.declared_format};
    });
}

Result<AttachedDocument> HrService::detach(const Actor& actor, const std::string& document_id) {
    return store_.transact([&](Transaction& tx) -> Result<AttachedDocument> {
        auto body = tx.get(Collection::Documents, document_id);
        if (!body) {
            return make_error(ErrorCode::NotFound, "document " + document_id + " not found");
        }
        auto doc = decode_stored<AttachedDocument>(*body, codec::decode_document);
        if (doc.deleted) {
            return make_error(ErrorCode::NotFound, "document " + document_id + " was already detached");
        }
        doc.deleted = true;
        tx.put(Collection::Documents, doc.document_id, codec::encode(doc),
               std::string(to_string(doc.owner.kind)) + ":" + doc.owner.id);
        audit(tx, actor, "detach", document_id);
        return doc;
    });
}

Result<std::string> HrService::attachment_manifest(const std::string& procedure_id) {
    auto exists = store_.transact([&](Transaction& tx) -> Result<bool> {
        return tx.get(Collection::Procedures, procedure_id).has_value();
    });
    if (!exists) {
        return std::move(exists).error();
    }
    if (!*exists) {
        return make_error(ErrorCode::NotFound, "procedure " + procedure_id + " not found");
    }
    auto docs = list_attachments(OwnerRef{OwnerKind::Procedure, procedure_id});
    if (!docs) {
        return std::move(docs).error();
    }
    return attachment_manifest_csv(*docs);
}

// --- requirements ---------------------------------------------------------

Result<Requirement> HrService::add_requirement(const Actor& actor, const std::string& text,
                                               const std::string& category, const std::string& priority) {
    if (auto probe = make_requirement({}, text, category, priority, clock_()); !probe) {
        return probe;
    }
    return store_.transact([&](Transaction& tx) -> Result<Requirement> {
        auto req = make_requirement(fresh_requirement_id(tx), text, category, priority, clock_());
        if (!req) {
            return req;
        }
        tx.put(Collection::Requirements, req->requirement_id, codec::encode(*req));
        audit(tx, actor, "add_requirement", req->requirement_id);
        return req;
    });
}

Result<std::vector<Requirement>> HrService::backlog() {
    return store_.transact([&](Transaction& tx) -> Result<std::vector<Requirement>> {
        return prioritized_backlog(decode_all<Requirement>(tx.all(Collection::Requirements), codec::decode_requirement));
    });
}

Result<ImportReport> HrService::import_requirements(const Actor& actor, std::string_view csv) {
    auto rows = parse_requirements_csv(csv);
    if (!rows) {
        return std::move(rows).error();
    }
    return store_.transact([&](Transaction& tx) -> Result<ImportReport> {
        ImportReport report;
        for (const auto& row : *rows) {
            if (!row.id.empty() && tx.get(Collection::Requirements, row.id)) {
                report.skipped.push_back(RowIssue{row.line, "requirement " + row.id + " already exists"});
                continue;
            }
            auto probe = make_requirement(row.id, row.text, row.category, row.priority, clock_());
            if (!probe) {
                report.errors.push_back(RowIssue{row.line, probe.error().message});
                continue;
            }
            if (probe->requirement_id.empty()) {
                probe->requirement_id = fresh_requirement_id(tx);
            }
            tx.put(Collection::Requirements, probe->requirement_id, codec::encode(*probe));
            ++report.created;
        }
        audit(tx, actor, "import_requirements", "requirements",
              "created " + std::to_string(report.created) + ", skipped " + std::to_string(report.skipped.size()) +
                  ", errors " + std::to_string(report.errors.size()));
        return report;
    });
}

}  // namespace hrm
