#include "hrm/csv.hpp"

namespace hrm {

std::string csv_field(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += csv_field(fields[i]);
    }
    out += '\n';
    return out;
}

Result<std::vector<CsvRecord>> parse_csv(std::string_view text) {
    std::vector<CsvRecord> records;
    CsvRecord current;
    std::string field;
    std::size_t line = 1;
    current.line = line;
    bool in_quotes = false;
    bool record_has_content = false;

    auto finish_record = [&] {
        current.fields.push_back(std::move(field));
        field.clear();
        if (record_has_content) {
            records.push_back(std::move(current));
        }
        current = CsvRecord{};
        record_has_content = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') {
                    ++line;
                }
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                in_quotes = true;
                record_has_content = true;
                break;
            case ',':
                current.fields.push_back(std::move(field));
                field.clear();
                record_has_content = true;
                break;
            case '\r':
                break;
            case '\n':
                finish_record();
                ++line;
                current.line = line;
                break;
            default:
                field += c;
                record_has_content = true;
        }
    }
    if (in_quotes) {
        return make_error(ErrorCode::FormatError,
                          "unterminated quoted field starting on line " + std::to_string(current.line));
    }
    finish_record();
    return records;
}

}  // namespace hrm
