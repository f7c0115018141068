#include "hrm/api.hpp"

#include <charconv>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "hrm/codec.hpp"

namespace hrm {

int http_status(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NotFound: return 404;
        case ErrorCode::VersionConflict:
        case ErrorCode::AlreadyDecided:
        case ErrorCode::AlreadyRegistered:
        case ErrorCode::DuplicateScientistId: return 409;
        case ErrorCode::ValidationError:
        case ErrorCode::UnknownGrade:
        case ErrorCode::TrackMismatch:
        case ErrorCode::InvalidTrack:
        case ErrorCode::IllegalTransition:
        case ErrorCode::GuardViolation:
        case ErrorCode::NonExpiring:
        case ErrorCode::CategoryNotRegistrable:
        case ErrorCode::MissingDoctorate:
        case ErrorCode::NoAuthorMapping:
        case ErrorCode::OwnerNotFound:
        case ErrorCode::EmptyPath:
        case ErrorCode::FileUnreadable:
        case ErrorCode::FormatError: return 422;
        case ErrorCode::TransportError:
        case ErrorCode::ProtocolError: return 502;
        case ErrorCode::Unauthorized: return 401;
        case ErrorCode::StorageError: return 500;
    }
    return 500;
}

namespace {

using nlohmann::json;
using httplib::Request;
using httplib::Response;

constexpr const char* kJson = "application/json";

void send_json(Response& res, const json& body, int status = 200) {
    res.status = status;
    res.set_content(body.dump(), kJson);
}

void send_error(Response& res, const Error& err) {
    send_json(res, json{{"error", to_string(err.code)}, {"message", err.message}, {"detail", err.detail}},
              http_status(err.code));
}

template <class T, class Encode>
void send_result(Response& res, const Result<T>& r, Encode encode, int status = 200) {
    if (!r) {
        send_error(res, r.error());
        return;
    }
    send_json(res, encode(*r), status);
}

template <class T>
json encode_list(const std::vector<T>& items) {
    json out = json::array();
    for (const auto& item : items) {
        out.push_back(codec::encode(item));
    }
    return out;
}

Result<json> parse_body(const Request& req) {
    auto body = json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object()) {
        return make_error(ErrorCode::ValidationError, "request body must be a JSON object", "body");
    }
    return body;
}

Result<std::string> require_string(const json& body, const char* key) {
    auto it = body.find(key);
    if (it == body.end() || !it->is_string()) {
        return make_error(ErrorCode::ValidationError, std::string("field '") + key + "' must be a string", key);
    }
    return it->get<std::string>();
}

Result<Date> require_date(const json& body, const char* key) {
    auto text = require_string(body, key);
    if (!text) {
        return std::move(text).error();
    }
    auto d = parse_date(*text);
    if (!d) {
        return make_error(ErrorCode::ValidationError, std::string("field '") + key + "' must be an ISO 8601 date",
                          key);
    }
    return *d;
}

Result<Date> as_of_param(const Request& req) {
    if (!req.has_param("as_of")) {
        return make_error(ErrorCode::ValidationError, "query parameter as_of is required", "as_of");
    }
    auto d = parse_date(req.get_param_value("as_of"));
    if (!d) {
        return make_error(ErrorCode::ValidationError, "as_of must be an ISO 8601 date", "as_of");
    }
    return *d;
}

Result<std::int64_t> expected_version(const Request& req) {
    std::string v = req.get_header_value(kExpectedVersionHeader);
    if (v.empty()) {
        v = req.get_header_value("X-Expected-Version");
    }
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') {
        v = v.substr(1, v.size() - 2);
    }
    std::int64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) {
        return make_error(ErrorCode::ValidationError,
                          std::string("header ") + kExpectedVersionHeader + " with the procedure version is required",
                          "expected_version");
    }
    return out;
}

std::vector<std::string> string_list(const json& body, const char* key) {
    std::vector<std::string> out;
    if (auto it = body.find(key); it != body.end() && it->is_array()) {
        for (const auto& v : *it) {
            if (v.is_string()) {
                out.push_back(v.get<std::string>());
            }
        }
    }
    return out;
}

json encode_import(const ImportReport& r) {
    auto issues = [](const std::vector<RowIssue>& v) {
        json out = json::array();
        for (const auto& i : v) {
            out.push_back({{"line", i.line}, {"reason", i.reason}});
        }
        return out;
    };
    return {{"created", r.created}, {"skipped", issues(r.skipped)}, {"errors", issues(r.errors)}};
}

json encode_review_row(const ReviewRow& r) {
    json out = codec::encode(r.status);
    out["appointment_id"] = r.appointment_id;
    out["person"] = r.person_id;
    out["grade"] = r.grade_name;
    out["valid_to"] = format_date(r.valid_to);
    return out;
}

}  // namespace

ApiServer::ApiServer(HrService& service) : service_(service) { install_routes(); }

Result<int> ApiServer::start(const std::string& host, int port) { return server_.start(host, port); }

void ApiServer::install_routes() {
    auto& svr = server_.server();
    auto& svc = service_;

    // Wraps a handler with bearer-token authentication; the handler receives the actor.
    auto authed = [this](auto handler) {
        return [this, handler](const Request& req, Response& res) {
            const auto header = req.get_header_value("Authorization");
            const std::string prefix = "Bearer ";
            const auto& tokens = service_.config().tokens;
            auto it = header.rfind(prefix, 0) == 0 ? tokens.find(header.substr(prefix.size())) : tokens.end();
            if (it == tokens.end()) {
                send_error(res, make_error(ErrorCode::Unauthorized, "missing or unknown bearer token"));
                return;
            }
            handler(Actor{it->second}, req, res);
        };
    };

    svr.set_exception_handler([](const Request&, Response& res, std::exception_ptr ep) {
        std::string what = "internal error";
        try {
            std::rethrow_exception(ep);
        } catch (const std::exception& e) {
            what = e.what();
        } catch (...) {
        }
        send_error(res, make_error(ErrorCode::StorageError, what));
    });

    svr.Get("/health/ready", [this](const Request&, Response& res) {
        send_json(res, json{{"ready", ready_.load()}}, ready_ ? 200 : 503);
    });

    // --- grades -----------------------------------------------------------
    svr.Get("/grades", authed([](const Actor&, const Request&, Response& res) {
        json out = json::array();
        for (const auto& g : GradeCatalog::all()) {
            out.push_back(codec::encode(g));
        }
        send_json(res, out);
    }));
    svr.Get("/grades/classify", authed([](const Actor&, const Request& req, Response& res) {
        send_result(res, classify_grade(req.get_param_value("name")),
                    [](const auto& v) { return encode_list(v); });
    }));

    // --- persons and employees ---------------------------------------------
    svr.Post("/persons", authed([&svc](const Actor& actor, const Request& req, Response& res) {
        auto body = parse_body(req);
        if (!body) return send_error(res, body.error());
        auto name = require_string(*body, "full_name");
        if (!name) return send_error(res, name.error());
        auto dob = require_date(*body, "date_of_birth");
        if (!dob) return send_error(res, dob.error());
        const bool doctoral = body->value("doctoral_degree", false);
        send_result(res, svc.register_person(actor, *name, *dob, doctoral),
                    [](const Person& p) { return codec::encode(p); }, 201);
    }));
    svr.Get("/persons", authed([&svc](const Actor&, const Request&, Response& res) {
        send_result(res, svc.list_persons(), [](const auto& v) { return encode_list(v); });
    }));
    svr.Get(R"(/persons/([^/]+))", authed([&svc](const Actor&, const Request& req, Response& res) {
        send_result(res, svc.get_person(req.matches[1]), [](const Person& p) { return codec::encode(p); });
    }));
    svr.Post("/employees", authed([&svc](const Actor& actor, const Request& req, Response& res) {
        auto body = parse_body(req);
        if (!body) return send_error(res, body.error());
        auto person = require_string(*body, "person_id");
        if (!person) return send_error(res, person.error());
        auto group_text = require_string(*body, "staff_group");
        if (!group_text) return send_error(res, group_text.error());
        auto group = parse_staff_group(*group_text);
        if (!group) {
            return send_error(res, make_error(ErrorCode::ValidationError,
                                              "staff_group must be Administrative or Academic", "staff_group"));
        }
        auto start = require_date(*body, "employment_start");
        if (!start) return send_error(res, start.error());
        send_result(res, svc.add_employee(actor, *person, *group, *start),
                    [](const Employee& e) { return codec::encode(e); }, 201);
    }));
    svr.Get("/employees", authed([&svc](const Actor&, const Request&, Response& res) {
        send_result(res, svc.list_employees(), [](const auto& v) { return encode_list(v); });
    }));
    svr.Post("/employees/import", authed([&svc](const Actor& actor, const Request& req, Response& res) {
        send_result(res, svc.import_employees(actor, req.body), encode_import);
    }));

    // --- procedures ---------------------------------------------------------
    svr.Post("/procedures", authed([&svc](const Actor& actor, const Request& req, Response& res) {
        auto body = parse_body(req);
        if (!body) return send_error(res, body.error());
        if (!body->contains("grade")) {
            return send_error(res, make_error(ErrorCode::ValidationError, "field 'grade' is required", "grade"));
        }
        auto grade = codec::decode_grade(body->at("grade"));
        if (!grade) return send_error(res, grade.error());
        auto council = require_string(*body, "council_ref");
        if (!council) return send_error(res, council.error());
        send_result(res, svc.open_procedure(actor, *grade, *council),
                    [](const AppointmentProcedure& p) { return codec::encode(p); }, 201);
    }));
    svr.Get("/procedures", authed([&svc](const Actor&, const Request&, Response& res) {
        send_result(res, svc.list_procedures(), [](const auto& v) { return encode_list(v); });
    }));
    svr.Get(R"(/procedures/([^/]+))", authed([&svc](const Actor&, const Request& req, Response& res) {
        send_result(res, svc.get_procedure(req.matches[1]),
                    [](const AppointmentProcedure& p) { return codec::encode(p); });
    }));
    svr.Post(R"(/procedures/([^/]+)/events)", authed([&svc](const Actor& actor, const Request& req, Response& res) {
        auto version = expected_version(req);
        if (!version) return send_error(res, version.error());
        auto body = parse_body(req);
        if (!body) return send_error(res, body.error());
        auto tag = require_string(*body, "event");
        if (!tag) return send_error(res, tag.error());
        auto kind = parse_event_kind(*tag);
        if (!kind) {
            return send_error(res, make_error(ErrorCode::ValidationError, "unknown event '" + *tag + "'", "event"));
        }
        auto payload = codec::decode_payload(*kind, body->value("payload", json::object()));
        if (!payload) return send_error(res, payload.error());
        send_result(res, svc.advance(actor, req.matches[1], std::move(*payload), *version),
                    [](const AppointmentProcedure& p) { return codec::encode(p); });
    }));
    svr.Get(R"(/procedures/([^/]+)/log)", authed([&svc](const Actor&, const Request& req, Response& res) {
        auto log = svc.export_procedure_log(req.matches[1]);
        if (!log) return send_error(res, log.error());
        res.set_content(*log, "application/x-ndjson");
    }));
    svr.Get(R"(/procedures/([^/]+)/manifest)", authed([&svc](const Actor&, const Request& req, Response& res) {
        auto manifest = svc.attachment_manifest(req.matches[1]);
        if (!manifest) return send_error(res, manifest.error());
        res.set_content(*manifest, "text/csv");
    }));
    svr.Get("/appointments", authed([&svc](const Actor&, const Request& req, Response& res) {
        std::optional<std::string> person;
        if (req.has_param("person")) person = req.get_param_value("person");
        send_result(res, svc.list_appointments(person), [](const auto& v) { return encode_list(v); });
    }));

    // --- expiry review -------------------------------------------------------
    svr.Get("/expiry-review", authed([&svc](const Actor&, const Request& req, Response& res) {
        auto as_of = as_of_param(req);
        if (!as_of) return send_error(res, as_of.error());
        send_result(res, svc.expiry_review(*as_of), [&](const std::vector<ReviewRow>& rows) {
            json out = json::array();
            for (const auto& r : rows) out.push_back(encode_review_row(r));
            return json{{"as_of", format_date(*as_of)}, {"rows", out}};
        });
    }));
    svr.Get("/expiry-review/report", authed([&svc](const Actor&, const Request& req, Response& res) {
        auto as_of = as_of_param(req);
        if (!as_of) return send_error(res, as_of.error());
        auto rows = svc.expiry_review(*as_of);
        if (!rows) return send_error(res, rows.error());
        res.set_content(review_report_csv(*rows), "text/csv");
    }));
    svr.Post("/expiry-review/notifications", authed([&svc](const Actor& actor, const Request& req, Response& res) {
        auto as_of = as_of_param(req);
        if (!as_of) return send_error(res, as_of.error());
        send_result(res, svc.generate_review(actor, *as_of), [](const auto& v) { return encode_list(v); });
    }));
    svr.Get("/expiry-review/notifications", authed([&svc](const Actor&, const Request&, Response& res) {
        send_result(res, svc.list_notifications(), [](const auto& v) { return encode_list(v); });
    }));
    svr.Post(R"(/expiry-review/notifications/([^/]+)/close)",
             authed([&svc](const Actor& actor, const Request& req, Response& res) {
                 send_result(res, svc.close_notification(actor, req.matches[1]),
                             [](const ExpiryNotification& n) { return codec::encode(n); });
             }));

    // --- registry ------------------------------------------------------------
    auto encode_app = [](const RegistryApplication& a) { return codec::encode(a); };
    svr.Post("/registry/applications", authed([&svc, encode_app](const Actor& actor, const Request& req, Response& res) {
        auto body = parse_body(req);
        if (!body) return send_error(res, body.error());
        auto person = require_string(*body, "person_id");
        if (!person) return send_error(res, person.error());
        auto category = require_string(*body, "category");
        if (!category) return send_error(res, category.error());
        send_result(res, svc.submit_registration(actor, *person, *category, string_list(*body, "documents")),
                    encode_app, 201);
    }));
    svr.Get("/registry/applications", authed([&svc](const Actor&, const Request&, Response& res) {
        send_result(res, svc.list_applications(), [](const auto& v) { return encode_list(v); });
    }));
    svr.Get(R"(/registry/applications/([^/]+))", authed([&svc, encode_app](const Actor&, const Request& req, Response& res) {
        send_result(res, svc.get_application(req.matches[1]), encode_app);
    }));
    svr.Post(R"(/registry/applications/([^/]+)/decision)",
             authed([&svc, encode_app](const Actor& actor, const Request& req, Response& res) {
                 auto body = parse_body(req);
                 if (!body) return send_error(res, body.error());
                 const auto decision = body->value("decision", std::string());
                 MinistryDecision d;
                 if (decision == "approved") {
                     d = MinistryDecision::approve(body->value("scientist_id", std::string()));
                 } else if (decision == "rejected") {
                     d = MinistryDecision::reject(body->value("reason", std::string()));
                 } else {
                     return send_error(res, make_error(ErrorCode::ValidationError,
                                                       "decision must be approved or rejected", "decision"));
                 }
                 send_result(res, svc.record_ministry_decision(actor, req.matches[1], d), encode_app);
             }));
    svr.Post(R"(/registry/applications/([^/]+)/poll)",
             authed([&svc, encode_app](const Actor& actor, const Request& req, Response& res) {
                 send_result(res, svc.poll_ministry(actor, req.matches[1]), encode_app);
             }));
    svr.Post(R"(/registry/applications/([^/]+)/forward)",
             authed([&svc, encode_app](const Actor& actor, const Request& req, Response& res) {
                 send_result(res, svc.forward_application(actor, req.matches[1]), encode_app);
             }));
    svr.Get("/registry/entries", authed([&svc](const Actor&, const Request&, Response& res) {
        send_result(res, svc.list_registry_entries(), [](const auto& v) { return encode_list(v); });
    }));

    // --- publications ----------------------------------------------------------
    svr.Put(R"(/publications/authors/([^/]+))", authed([&svc](const Actor& actor, const Request& req, Response& res) {
        auto body = parse_body(req);
        if (!body) return send_error(res, body.error());
        auto author = require_string(*body, "author_id");
        if (!author) return send_error(res, author.error());
        auto r = svc.map_author(actor, req.matches[1], *author);
        if (!r) return send_error(res, r.error());
        send_json(res, json{{"person_id", req.matches[1]}, {"author_id", *author}});
    }));
    svr.Post(R"(/publications/sync/([^/]+))", authed([&svc](const Actor& actor, const Request& req, Response& res) {
        send_result(res, svc.sync_publications(actor, req.matches[1]),
                    [](const SyncReport& r) { return codec::encode(r); });
    }));
    svr.Get("/publications", authed([&svc](const Actor&, const Request& req, Response& res) {
        if (!req.has_param("person")) {
            return send_error(res, make_error(ErrorCode::ValidationError, "query parameter person is required",
                                              "person"));
        }
        std::optional<std::string> type;
        if (req.has_param("type")) type = req.get_param_value("type");
        send_result(res, svc.list_publications(req.get_param_value("person"), type),
                    [](const auto& v) { return encode_list(v); });
    }));
    svr.Delete(R"(/publications/([^/]+)/([^/]+))", authed([&svc](const Actor& actor, const Request& req, Response& res) {
        auto r = svc.remove_publication(actor, req.matches[1], req.matches[2]);
        if (!r) return send_error(res, r.error());
        send_json(res, json{{"removed", req.matches[2].str()}});
    }));

    // --- documents -------------------------------------------------------------
    auto encode_doc = [](const AttachedDocument& d) { return codec::encode(d); };
    svr.Post("/documents", authed([&svc, encode_doc](const Actor& actor, const Request& req, Response& res) {
        auto body = parse_body(req);
        if (!body) return send_error(res, body.error());
        if (!body->contains("owner")) {
            return send_error(res, make_error(ErrorCode::ValidationError, "field 'owner' is required", "owner"));
        }
        auto owner = codec::decode_owner(body->at("owner"));
        if (!owner) return send_error(res, owner.error());
        send_result(res,
                    svc.attach(actor, *owner, body->value("path", std::string()),
                               body->value("declared_format", std::string()),
                               body->value("description", std::string())),
                    encode_doc, 201);
    }));
    svr.Get("/documents", authed([&svc](const Actor&, const Request& req, Response& res) {
        auto kind = parse_owner_kind(req.get_param_value("owner_kind"));
        if (!kind || !req.has_param("owner_id")) {
            return send_error(res, make_error(ErrorCode::ValidationError,
                                              "query parameters owner_kind and owner_id are required", "owner"));
        }
        send_result(res, svc.list_attachments(OwnerRef{*kind, req.get_param_value("owner_id")}),
                    [](const auto& v) { return encode_list(v); });
    }));
    svr.Get(R"(/documents/([^/]+))", authed([&svc](const Actor&, const Request& req, Response& res) {
        send_result(res, svc.resolve(req.matches[1]), [](const ResolvedDocument& d) {
            return json{{"path", d.path}, {"declared_format", d.declared_format}};
        });
    }));
    svr.Delete(R"(/documents/([^/]+))", authed([&svc, encode_doc](const Actor& actor, const Request& req, Response& res) {
        send_result(res, svc.detach(actor, req.matches[1]), encode_doc);
    }));

    // --- requirements ------------------------------------------------------------
    svr.Post("/requirements", authed([&svc](const Actor& actor, const Request& req, Response& res) {
        auto body = parse_body(req);
        if (!body) return send_error(res, body.error());
        auto text = require_string(*body, "text");
        if (!text) return send_error(res, text.error());
        auto category = require_string(*body, "category");
        if (!category) return send_error(res, category.error());
        auto priority = require_string(*body, "priority");
        if (!priority) return send_error(res, priority.error());
        send_result(res, svc.add_requirement(actor, *text, *category, *priority),
                    [](const Requirement& r) { return codec::encode(r); }, 201);
    }));
    svr.Get("/requirements", authed([&svc](const Actor&, const Request&, Response& res) {
        send_result(res, svc.backlog(), [](const auto& v) { return encode_list(v); });
    }));
    svr.Get("/requirements/export", authed([&svc](const Actor&, const Request&, Response& res) {
        auto backlog = svc.backlog();
        if (!backlog) return send_error(res, backlog.error());
        res.set_content(requirements_csv(*backlog), "text/csv");
    }));
    svr.Post("/requirements/import", authed([&svc](const Actor& actor, const Request& req, Response& res) {
        send_result(res, svc.import_requirements(actor, req.body), encode_import);
    }));

    svr.Get("/audit", authed([&svc](const Actor&, const Request&, Response& res) {
        send_result(res, svc.audit_log(), [](const std::vector<AuditEntry>& entries) {
            json out = json::array();
            for (const auto& e : entries) {
                out.push_back({{"audit_id", e.audit_id},
                               {"actor", e.actor},
                               {"at", format_timestamp(e.at)},
                               {"operation", e.operation},
                               {"entity", e.entity},
                               {"outcome", e.outcome}});
            }
            return out;
        });
    }));
}

}  // namespace hrm
