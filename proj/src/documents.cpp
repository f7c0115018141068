#include "hrm/documents.hpp"

#include <algorithm>

#include "hrm/csv.hpp"

namespace hrm {

std::string_view to_string(OwnerKind kind) noexcept {
    switch (kind) {
        case OwnerKind::Procedure: return "procedure";
        case OwnerKind::RegistryApplication: return "registry_application";
        case OwnerKind::Employee: return "employee";
    }
    return "";
}

std::optional<OwnerKind> parse_owner_kind(std::string_view text) noexcept {
    for (auto k : {OwnerKind::Procedure, OwnerKind::RegistryApplication, OwnerKind::Employee}) {
        if (to_string(k) == text) {
            return k;
        }
    }
    return std::nullopt;
}

Result<void> validate_attachment_path(std::string_view path) {
    if (path.empty()) {
        return make_error(ErrorCode::EmptyPath, "document path must not be empty", "path");
    }
    return {};
}

std::vector<AttachedDocument> attachments_of(std::span<const AttachedDocument> all, const OwnerRef& owner) {
    std::vector<AttachedDocument> out;
    std::ranges::copy_if(all, std::back_inserter(out), [&](const AttachedDocument& d) {
        return !d.deleted && d.owner == owner;
    });
    std::ranges::stable_sort(out, {}, &AttachedDocument::attached_at);
    return out;
}

std::string attachment_manifest_csv(std::span<const AttachedDocument> documents) {
    std::string out = csv_row({"document_id", "path", "declared_format", "attached_at", "description"});
    for (const auto& d : documents) {
        out += csv_row({d.document_id, d.path, d.declared_format, format_timestamp(d.attached_at),
                        d.description});
    }
    return out;
}

}  // namespace hrm
