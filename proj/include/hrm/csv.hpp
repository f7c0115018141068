#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hrm/result.hpp"

namespace hrm {

/// RFC 4180 style: fields containing a comma, quote or line break are quoted.
std::string csv_field(std::string_view field);

/// One record terminated by "\n".
std::string csv_row(const std::vector<std::string>& fields);

struct CsvRecord {
    std::size_t line = 0;  // 1-based line where the record starts
    std::vector<std::string> fields;
};

/// Blank lines are skipped. Fails only on an unterminated quoted field.
Result<std::vector<CsvRecord>> parse_csv(std::string_view text);

}  // namespace hrm
