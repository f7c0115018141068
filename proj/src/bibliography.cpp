#include "hrm/bibliography.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace hrm {

bool is_well_formed_url(std::string_view url) {
    const auto sep = url.find("://");
    if (sep == std::string_view::npos || sep == 0 || sep + 3 >= url.size()) {
        return false;
    }
    if (!std::isalpha(static_cast<unsigned char>(url.front()))) {
        return false;
    }
    const auto scheme = url.substr(0, sep);
    const bool scheme_ok = std::ranges::all_of(scheme, [](unsigned char c) {
        return std::isalnum(c) || c == '+' || c == '-' || c == '.';
    });
    const bool no_space = std::ranges::none_of(url, [](unsigned char c) { return std::isspace(c); });
    return scheme_ok && no_space;
}

Result<void> validate_publication(const PublicationRecord& record) {
    if (record.source_key.empty()) {
        return make_error(ErrorCode::ValidationError, "source_key must not be empty", "source_key");
    }
    if (record.title.empty()) {
        return make_error(ErrorCode::ValidationError, "title must not be empty", "title");
    }
    if (!is_well_formed_url(record.url)) {
        return make_error(ErrorCode::ValidationError, "url is not a well-formed link: '" + record.url + "'",
                          "url");
    }
    if (!record.publishing_date.ok()) {
        return make_error(ErrorCode::ValidationError, "publishing_date is not a valid date",
                          "publishing_date");
    }
    return {};
}

Result<Reconciliation> reconcile(std::span<const PublicationRecord> local,
                                 std::span<const PublicationRecord> remote) {
    std::map<std::string_view, const PublicationRecord*> by_key;
    for (const auto& r : local) {
        by_key.emplace(r.source_key, &r);
    }
    std::map<std::string_view, bool> seen_remote;
    Reconciliation out;
    for (const auto& r : remote) {
        if (auto ok = validate_publication(r); !ok) {
            return make_error(ErrorCode::ProtocolError,
                              "bibliography record '" + r.source_key + "' is invalid: " + ok.error().message);
        }
        if (!seen_remote.emplace(r.source_key, true).second) {
            return make_error(ErrorCode::ProtocolError,
                              "bibliography snapshot repeats source_key '" + r.source_key + "'");
        }
        const auto it = by_key.find(r.source_key);
        if (it == by_key.end()) {
            ++out.report.added;
            out.upserts.push_back(r);
        } else if (*it->second != r) {
            ++out.report.updated;
            out.upserts.push_back(r);
        } else {
            ++out.report.unchanged;
        }
    }
    return out;
}

std::vector<PublicationRecord> sorted_publications(std::vector<PublicationRecord> records,
                                                   const std::optional<std::string>& type_of_work) {
    if (type_of_work) {
        std::erase_if(records, [&](const PublicationRecord& r) { return r.type_of_work != *type_of_work; });
    }
    std::ranges::sort(records, [](const PublicationRecord& a, const PublicationRecord& b) {
        if (a.publishing_date != b.publishing_date) {
            return a.publishing_date > b.publishing_date;
        }
        if (a.title != b.title) {
            return a.title < b.title;
        }
        return a.source_key < b.source_key;
    });
    return records;
}

}  // namespace hrm
