#include "hrm/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace hrm {

Result<void> ServiceConfig::validate() const {
    if (warning_months < 1) {
        return make_error(ErrorCode::ValidationError, "warning_months must be at least 1", "warning_months");
    }
    if (term_years < 1) {
        return make_error(ErrorCode::ValidationError, "term_years must be at least 1", "term_years");
    }
    if (committee_min < 1 || (committee_odd && committee_min % 2 == 0)) {
        return make_error(ErrorCode::ValidationError, "committee_min must be odd and at least 1",
                          "committee_min");
    }
    if (port < 0 || port > 65535) {
        return make_error(ErrorCode::ValidationError, "port out of range", "port");
    }
    for (const auto& name : non_expiring_grades) {
        auto matches = classify_grade(name);
        if (!matches) {
            return make_error(ErrorCode::ValidationError, "non_expiring_grades: " + matches.error().message,
                              "non_expiring_grades");
        }
    }
    if (!stub_mode && (ministry_url.empty() || bibliography_url.empty())) {
        return make_error(ErrorCode::ValidationError,
                          "ministry_url and bibliography_url are required outside stub mode", "stub_mode");
    }
    if (tokens.empty()) {
        return make_error(ErrorCode::ValidationError, "at least one API token is required", "tokens");
    }
    return {};
}

std::optional<std::string> process_env(const std::string& name) {
    if (const char* v = std::getenv(name.c_str())) {
        return std::string(v);
    }
    return std::nullopt;
}

Result<ServiceConfig> parse_config(const std::string& text) {
    auto j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        return make_error(ErrorCode::FormatError, "config is not a JSON object");
    }
    static const std::set<std::string> known{
        "listen_address", "port",         "store_path",      "warning_months",
        "term_years",     "non_expiring_grades", "committee_min", "committee_odd",
        "stub_mode",      "ministry_url", "bibliography_url", "bibliography_fixtures",
        "grade_catalog",  "tokens"};
    for (const auto& [key, _] : j.items()) {
        if (!known.contains(key)) {
            return make_error(ErrorCode::FormatError, "unknown config key '" + key + "'", key);
        }
    }
    ServiceConfig c;
    try {
        c.listen_address = j.value("listen_address", c.listen_address);
        c.port = j.value("port", c.port);
        c.store_path = j.value("store_path", c.store_path);
        c.warning_months = j.value("warning_months", c.warning_months);
        c.term_years = j.value("term_years", c.term_years);
        c.non_expiring_grades = j.value("non_expiring_grades", c.non_expiring_grades);
        c.committee_min = j.value("committee_min", c.committee_min);
        c.committee_odd = j.value("committee_odd", c.committee_odd);
        c.stub_mode = j.value("stub_mode", c.stub_mode);
        c.ministry_url = j.value("ministry_url", c.ministry_url);
        c.bibliography_url = j.value("bibliography_url", c.bibliography_url);
        c.bibliography_fixtures = j.value("bibliography_fixtures", c.bibliography_fixtures);
        c.grade_catalog = j.value("grade_catalog", c.grade_catalog);
        c.tokens = j.value("tokens", c.tokens);
    } catch (const nlohmann::json::exception& e) {
        return make_error(ErrorCode::FormatError, std::string("config: ") + e.what());
    }
    return c;
}

Result<void> apply_env_overrides(ServiceConfig& config, const EnvLookup& env) {
    auto as_int = [](const std::string& name, const std::string& v, int& out) -> Result<void> {
        try {
            std::size_t pos = 0;
            out = std::stoi(v, &pos);
            if (pos != v.size()) {
                throw std::invalid_argument(v);
            }
        } catch (const std::exception&) {
            return make_error(ErrorCode::ValidationError, name + " must be an integer", name);
        }
        return {};
    };
    if (auto v = env("HRM_LISTEN")) config.listen_address = *v;
    if (auto v = env("HRM_STORE")) config.store_path = *v;
    if (auto v = env("HRM_MINISTRY_URL")) config.ministry_url = *v;
    if (auto v = env("HRM_BIBLIOGRAPHY_URL")) config.bibliography_url = *v;
    if (auto v = env("HRM_BIBLIOGRAPHY_FIXTURES")) config.bibliography_fixtures = *v;
    if (auto v = env("HRM_STUB_MODE")) config.stub_mode = (*v == "1" || *v == "true");
    if (auto v = env("HRM_PORT")) {
        if (auto r = as_int("HRM_PORT", *v, config.port); !r) return r;
    }
    if (auto v = env("HRM_WARNING_MONTHS")) {
        if (auto r = as_int("HRM_WARNING_MONTHS", *v, config.warning_months); !r) return r;
    }
    if (auto v = env("HRM_TERM_YEARS")) {
        if (auto r = as_int("HRM_TERM_YEARS", *v, config.term_years); !r) return r;
    }
    return {};
}

Result<ServiceConfig> load_config(const std::optional<std::string>& path, const EnvLookup& env) {
    ServiceConfig config;
    if (path) {
        std::ifstream in(*path);
        if (!in) {
            return make_error(ErrorCode::FileUnreadable, "cannot read config file " + *path);
        }
        std::stringstream buf;
        buf << in.rdbuf();
        auto parsed = parse_config(buf.str());
        if (!parsed) {
            return parsed;
        }
        config = std::move(*parsed);
    }
    if (auto r = apply_env_overrides(config, env); !r) {
        return r.error();
    }
    if (auto r = config.validate(); !r) {
        return r.error();
    }
    return config;
}

}  // namespace hrm
