#include "hrm/event_log.hpp"

#include <sstream>

#include "hrm/codec.hpp"

namespace hrm {

std::string export_event_log(std::span<const ProcedureEvent> events) {
    std::string out;
    for (const auto& e : events) {
        out += codec::encode(e).dump();
        out += '\n';
    }
    return out;
}

Result<std::vector<ProcedureEvent>> parse_event_log(std::string_view text) {
    std::vector<ProcedureEvent> out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) {
            return make_error(ErrorCode::FormatError, "line " + std::to_string(line_no) + ": not valid JSON");
        }
        auto event = codec::decode_event(j);
        if (!event) {
            return make_error(ErrorCode::FormatError,
                              "line " + std::to_string(line_no) + ": " + event.error().message,
                              event.error().detail);
        }
        out.push_back(std::move(*event));
    }
    return out;
}

}  // namespace hrm
