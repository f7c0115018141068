#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hrm/calendar.hpp"
#include "hrm/result.hpp"

namespace hrm {

struct PublicationRecord {
    std::string source_key;
    std::string title;
    // Open category: "journal article", "conference paper", ...
    std::string type_of_work;
    Date publishing_date;
    std::string url;

    bool operator==(const PublicationRecord&) const = default;
};

/// scheme "://" non-empty rest, scheme of letters/digits/+-.
bool is_well_formed_url(std::string_view url);

Result<void> validate_publication(const PublicationRecord& record);

struct SyncReport {
    int added = 0;
    int updated = 0;
    int unchanged = 0;

    bool operator==(const SyncReport&) const = default;
};

struct Reconciliation {
    SyncReport report;
    // Records to insert or overwrite, keyed by source_key.
    std::vector<PublicationRecord> upserts;
};

/// Diffs a remote snapshot against local records by source_key. Local
/// records missing from the snapshot are left alone. An invalid or
/// duplicate-keyed snapshot is a ProtocolError.
Result<Reconciliation> reconcile(std::span<const PublicationRecord> local,
                                 std::span<const PublicationRecord> remote);

/// publishing_date descending, then title ascending.
std::vector<PublicationRecord> sorted_publications(std::vector<PublicationRecord> records,
                                                   const std::optional<std::string>& type_of_work = {});

}  // namespace hrm
