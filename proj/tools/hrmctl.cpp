// hrmctl: administrative command line for the HR service.

#include <csignal>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hrm/calendar.hpp"
#include "hrm/demo.hpp"
#include "hrm/event_log.hpp"
#include "hrm/runtime.hpp"

namespace {

using nlohmann::json;

int fail(const hrm::Error& err) {
    std::cerr << "error: " << hrm::to_string(err.code) << ": " << err.message;
    if (!err.detail.empty()) {
        std::cerr << " (" << err.detail << ")";
    }
    std::cerr << "\n";
    return 1;
}

json issues_json(const std::vector<hrm::RowIssue>& issues) {
    json out = json::array();
    for (const auto& i : issues) {
        out.push_back({{"line", i.line}, {"reason", i.reason}});
    }
    return out;
}

int serve(hrm::Runtime& rt) {
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    auto port = rt.serve();
    if (!port) {
        return fail(port.error());
    }
    std::cout << "listening on " << rt.api().base_url() << std::endl;
    int sig = 0;
    sigwait(&signals, &sig);
    rt.stop();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"HR management service and administration tool"};
    app.require_subcommand(1);

    std::optional<std::string> config_path;
    std::string actor_name = "cli";
    app.add_option("-c,--config", config_path, "JSON config file");
    app.add_option("--actor", actor_name, "Actor recorded in the audit log");

    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API");

    std::string employees_file;
    auto* import_cmd = app.add_subcommand("import-employees", "Import persons and employees from CSV");
    import_cmd->add_option("file", employees_file)->required();

    std::string as_of_text;
    bool notify = false;
    auto* review_cmd = app.add_subcommand("expiry-review", "Print the expiry review as CSV");
    review_cmd->add_option("--as-of", as_of_text, "Review date (YYYY-MM-DD)")->required();
    review_cmd->add_flag("--notify", notify, "Also record notifications for flagged appointments");

    auto* backlog_cmd = app.add_subcommand("backlog", "Print the requirements backlog grouped by priority");

    std::string procedure_id;
    auto* export_cmd = app.add_subcommand("export-procedure", "Print a procedure's event log");
    export_cmd->add_option("id", procedure_id)->required();

    auto* seed_cmd = app.add_subcommand("seed-demo", "Seed an empty store with demo data");

    std::string log_file;
    auto* replay_cmd = app.add_subcommand("replay", "Replay an exported event log and print the final state");
    replay_cmd->add_option("logfile", log_file)->required();

    auto* grades_cmd = app.add_subcommand("export-grades", "Print the grade catalog seed file");

    std::string requirements_file;
    auto* req_import_cmd = app.add_subcommand("import-requirements", "Import requirements from CSV");
    req_import_cmd->add_option("file", requirements_file)->required();
    auto* req_export_cmd = app.add_subcommand("export-requirements", "Print requirements as CSV");

    std::string manifest_id;
    auto* manifest_cmd = app.add_subcommand("attachment-manifest", "Print a procedure's attachments as CSV");
    manifest_cmd->add_option("id", manifest_id)->required();

    CLI11_PARSE(app, argc, argv);

    // Commands that need no store.
    if (grades_cmd->parsed()) {
        std::cout << hrm::catalog_seed_jsonl();
        return 0;
    }
    if (replay_cmd->parsed()) {
        auto text = hrm::read_file(log_file);
        if (!text) return fail(text.error());
        auto events = hrm::parse_event_log(*text);
        if (!events) return fail(events.error());
        hrm::WorkflowRules rules;
        if (config_path) {
            auto config = hrm::load_config(config_path);
            if (!config) return fail(config.error());
            rules = config->workflow_rules();
        }
        auto state = hrm::replay(*events, rules);
        if (!state) return fail(state.error());
        std::cout << hrm::to_string(*state) << "\n";
        return 0;
    }

    auto config = hrm::load_config(config_path);
    if (!config) return fail(config.error());
    auto rt = hrm::Runtime::create(*config, hrm::system_clock(), !serve_cmd->parsed());
    if (!rt) return fail(rt.error());
    auto& svc = (*rt)->service();
    const hrm::Actor actor{actor_name};

    if (serve_cmd->parsed()) {
        return serve(**rt);
    }
    if (import_cmd->parsed()) {
        auto text = hrm::read_file(employees_file);
        if (!text) return fail(text.error());
        auto report = svc.import_employees(actor, *text);
        if (!report) return fail(report.error());
        std::cout << json{{"created", report->created},
                          {"skipped", issues_json(report->skipped)},
                          {"errors", issues_json(report->errors)}}
                         .dump(2)
                  << "\n";
        return 0;
    }
    if (review_cmd->parsed()) {
        auto as_of = hrm::parse_date(as_of_text);
        if (!as_of) {
            return fail(hrm::Error{hrm::ErrorCode::ValidationError, "--as-of must be YYYY-MM-DD", "as_of"});
        }
        if (notify) {
            auto generated = svc.generate_review(actor, *as_of);
            if (!generated) return fail(generated.error());
            std::cerr << generated->size() << " new notification(s)\n";
        }
        auto rows = svc.expiry_review(*as_of);
        if (!rows) return fail(rows.error());
        std::cout << hrm::review_report_csv(*rows);
        return 0;
    }
    if (backlog_cmd->parsed()) {
        auto backlog = svc.backlog();
        if (!backlog) return fail(backlog.error());
        std::cout << hrm::render_backlog(*backlog);
        return 0;
    }
    if (export_cmd->parsed()) {
        auto log = svc.export_procedure_log(procedure_id);
        if (!log) return fail(log.error());
        std::cout << *log;
        return 0;
    }
    if (seed_cmd->parsed()) {
        auto summary = hrm::seed_demo(svc, actor);
        if (!summary) return fail(summary.error());
        std::cout << json{{"persons", summary->person_ids}, {"procedures", summary->procedure_ids}}.dump(2) << "\n";
        return 0;
    }
    if (req_import_cmd->parsed()) {
        auto text = hrm::read_file(requirements_file);
        if (!text) return fail(text.error());
        auto report = svc.import_requirements(actor, *text);
        if (!report) return fail(report.error());
        std::cout << json{{"created", report->created},
                          {"skipped", issues_json(report->skipped)},
                          {"errors", issues_json(report->errors)}}
                         .dump(2)
                  << "\n";
        return 0;
    }
    if (req_export_cmd->parsed()) {
        auto backlog = svc.backlog();
        if (!backlog) return fail(backlog.error());
        std::cout << hrm::requirements_csv(*backlog);
        return 0;
    }
    if (manifest_cmd->parsed()) {
        auto manifest = svc.attachment_manifest(manifest_id);
        if (!manifest) return fail(manifest.error());
        std::cout << *manifest;
        return 0;
    }
    return 0;
}
