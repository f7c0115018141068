#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hrm/result.hpp"
#include "hrm/workflow.hpp"

namespace hrm {

/// One compact JSON object per line, keys in lexicographic order:
///   {"actor":"...","event":"SelectCommittee","payload":{...},"ts":"2020-01-01T09:00:00Z"}
std::string export_event_log(std::span<const ProcedureEvent> events);

/// Inverse of export_event_log. Blank lines are ignored; any malformed line is
/// a FormatError naming its line number.
Result<std::vector<ProcedureEvent>> parse_event_log(std::string_view text);

}  // namespace hrm
