#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hrm/codec.hpp"
#include "hrm/result.hpp"
#include "hrm/store.hpp"

namespace hrm::detail {

// Stored bodies were written by codec::encode; a decode failure means the
// store is damaged.
template <class T, class Decode>
T decode_stored(const nlohmann::json& body, Decode decode) {
    auto r = decode(body);
    if (!r) {
        throw StoreFailure("corrupt stored record: " + r.error().message);
    }
    return std::move(r).value();
}

template <class T, class Decode>
std::vector<T> decode_all(const std::vector<nlohmann::json>& bodies, Decode decode) {
    std::vector<T> out;
    out.reserve(bodies.size());
    for (const auto& b : bodies) {
        out.push_back(decode_stored<T>(b, decode));
    }
    return out;
}

}  // namespace hrm::detail
