#pragma once

#include <string>
#include <vector>

#include "hrm/service.hpp"

namespace hrm {

struct DemoSummary {
    std::vector<std::string> person_ids;
    std::vector<std::string> procedure_ids;
};

/// Populates an empty store with a small faculty: six people, two recognized
/// procedures (appointments valid to 2014-12-01 and 2015-01-15), an author
/// mapping, an attached document and a few requirements.
Result<DemoSummary> seed_demo(HrService& service, const Actor& actor);

}  // namespace hrm
