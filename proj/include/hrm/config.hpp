#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hrm/appointment.hpp"
#include "hrm/result.hpp"
#include "hrm/workflow.hpp"

namespace hrm {

struct ServiceConfig {
    std::string listen_address = "127.0.0.1";
    int port = 8080;
    std::string store_path = "hrm.db";

    int warning_months = 3;
    int term_years = 5;
    std::vector<std::string> non_expiring_grades{"professor emeritus"};
    int committee_min = 3;
    bool committee_odd = true;

    // In stub mode the ministry and bibliography stubs run inside the service
    // process and the URLs below are ignored.
    bool stub_mode = true;
    std::string ministry_url;
    std::string bibliography_url;
    std::string bibliography_fixtures;

    // Optional grade catalog seed file, checked against the built-in catalog.
    std::string grade_catalog;

    // bearer token -> actor name
    std::map<std::string, std::string> tokens{{"dev-token", "hr-officer"}};

    Result<void> validate() const;
    WorkflowRules workflow_rules() const { return {committee_min, committee_odd}; }
    AppointmentTerms appointment_terms() const { return {term_years, non_expiring_grades}; }
};

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

/// Reads the process environment.
std::optional<std::string> process_env(const std::string& name);

/// Parses a JSON config document; unknown keys are rejected.
Result<ServiceConfig> parse_config(const std::string& text);

/// Applies HRM_LISTEN, HRM_PORT, HRM_STORE, HRM_STUB_MODE, HRM_MINISTRY_URL,
/// HRM_BIBLIOGRAPHY_URL, HRM_BIBLIOGRAPHY_FIXTURES, HRM_WARNING_MONTHS,
/// HRM_TERM_YEARS.
Result<void> apply_env_overrides(ServiceConfig& config, const EnvLookup& env);

/// Loads `path` when given (defaults otherwise), applies environment
/// overrides and validates.
Result<ServiceConfig> load_config(const std::optional<std::string>& path, const EnvLookup& env = process_env);

}  // namespace hrm
