#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hrm/calendar.hpp"
#include "hrm/result.hpp"

namespace hrm {

enum class OwnerKind { Procedure, RegistryApplication, Employee };

std::string_view to_string(OwnerKind kind) noexcept;
std::optional<OwnerKind> parse_owner_kind(std::string_view text) noexcept;

struct OwnerRef {
    OwnerKind kind = OwnerKind::Procedure;
    std::string id;

    bool operator==(const OwnerRef&) const = default;
};

// A reference into the external document repository. Contents are never read.
struct AttachedDocument {
    std::string document_id;
    OwnerRef owner;
    std::string path;
    std::string declared_format;
    Timestamp attached_at;
    std::string description;
    bool deleted = false;

    bool operator==(const AttachedDocument&) const = default;
};

struct ResolvedDocument {
    std::string path;
    std::string declared_format;

    bool operator==(const ResolvedDocument&) const = default;
};

Result<void> validate_attachment_path(std::string_view path);

/// Live attachments of `owner`, stable-sorted by attached_at.
std::vector<AttachedDocument> attachments_of(std::span<const AttachedDocument> all, const OwnerRef& owner);

/// document_id,path,declared_format,attached_at,description
std::string attachment_manifest_csv(std::span<const AttachedDocument> documents);

}  // namespace hrm
