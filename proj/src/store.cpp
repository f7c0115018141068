#include "hrm/store.hpp"

#include <sqlite3.h>

namespace hrm {

namespace {

class Statement {
public:
    Statement(sqlite3* db, const std::string& sql) : db_(db) {
        if (sqlite3_prepare_v2(db, sql.c_str(), -1, &stmt_, nullptr) != SQLITE_OK) {
            throw StoreFailure(std::string("prepare failed: ") + sqlite3_errmsg(db) + " [" + sql + "]");
        }
    }
    ~Statement() { sqlite3_finalize(stmt_); }
    Statement(const Statement&) = delete;
    Statement& operator=(const Statement&) = delete;

    Statement& bind(int index, std::string_view text) {
        // A null data pointer would bind SQL NULL rather than an empty string.
        check(sqlite3_bind_text(stmt_, index, text.data() ? text.data() : "", static_cast<int>(text.size()),
                                SQLITE_TRANSIENT));
        return *this;
    }
    Statement& bind(int index, sqlite3_int64 value) {
        check(sqlite3_bind_int64(stmt_, index, value));
        return *this;
    }

    // True while a row is available.
    bool step() {
        const int rc = sqlite3_step(stmt_);
        if (rc == SQLITE_ROW) {
            return true;
        }
        if (rc == SQLITE_DONE) {
            return false;
        }
        throw StoreFailure(std::string("step failed: ") + sqlite3_errmsg(db_));
    }

    std::string text(int col) const {
        const auto* p = reinterpret_cast<const char*>(sqlite3_column_text(stmt_, col));
        return p ? std::string(p, static_cast<std::size_t>(sqlite3_column_bytes(stmt_, col))) : std::string();
    }
    sqlite3_int64 integer(int col) const { return sqlite3_column_int64(stmt_, col); }

private:
    void check(int rc) {
        if (rc != SQLITE_OK) {
            throw StoreFailure(std::string("bind failed: ") + sqlite3_errmsg(db_));
        }
    }

    sqlite3* db_;
    sqlite3_stmt* stmt_ = nullptr;
};

std::string table(Collection c) { return std::string(table_name(c)); }

nlohmann::json parse_body(const std::string& text) {
    auto j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        throw StoreFailure("corrupt record body");
    }
    return j;
}

}  // namespace

std::string_view table_name(Collection c) noexcept {
    switch (c) {
        case Collection::Persons: return "persons";
        case Collection::Employees: return "employees";
        case Collection::Procedures: return "procedures";
        case Collection::ProcedureEvents: return "procedure_events";
        case Collection::Appointments: return "appointments";
        case Collection::Notifications: return "notifications";
        case Collection::RegistryApplications: return "registry_applications";
        case Collection::RegistryEntries: return "registry_entries";
        case Collection::AuthorMappings: return "author_mappings";
        case Collection::Publications: return "publications";
        case Collection::Documents: return "documents";
        case Collection::Requirements: return "requirements";
        case Collection::Audit: return "audit";
    }
    return "";
}

std::string Transaction::next_id(std::string_view prefix) {
    Statement up(db_,
                 "INSERT INTO counters(name, value) VALUES(?, 1) "
                 "ON CONFLICT(name) DO UPDATE SET value = value + 1");
    up.bind(1, prefix);
    up.step();
    Statement get(db_, "SELECT value FROM counters WHERE name = ?");
    get.bind(1, prefix);
    get.step();
    return std::string(prefix) + "-" + std::to_string(get.integer(0));
}

void Transaction::put(Collection c, const std::string& id, const nlohmann::json& body,
                      std::string_view owner) {
    Statement st(db_, "INSERT INTO " + table(c) +
                          "(id, seq, owner, body) VALUES(?1, (SELECT COALESCE(MAX(seq), 0) + 1 FROM " +
                          table(c) + "), ?2, ?3) ON CONFLICT(id) DO UPDATE SET owner = ?2, body = ?3");
    st.bind(1, id).bind(2, owner).bind(3, body.dump());
    st.step();
}

std::optional<nlohmann::json> Transaction::get(Collection c, const std::string& id) {
    Statement st(db_, "SELECT body FROM " + table(c) + " WHERE id = ?");
    st.bind(1, id);
    if (!st.step()) {
        return std::nullopt;
    }
    return parse_body(st.text(0));
}

std::vector<nlohmann::json> Transaction::query_bodies(const std::string& sql,
                                                      std::optional<std::string_view> arg) {
    Statement st(db_, sql);
    if (arg) {
        st.bind(1, *arg);
    }
    std::vector<nlohmann::json> out;
    while (st.step()) {
        out.push_back(parse_body(st.text(0)));
    }
    return out;
}

std::vector<nlohmann::json> Transaction::all(Collection c) {
    return query_bodies("SELECT body FROM " + table(c) + " ORDER BY seq", std::nullopt);
}

std::vector<nlohmann::json> Transaction::by_owner(Collection c, std::string_view owner) {
    return query_bodies("SELECT body FROM " + table(c) + " WHERE owner = ? ORDER BY seq", owner);
}

std::vector<StoredRecord> Transaction::records(Collection c) {
    Statement st(db_, "SELECT id, owner, body FROM " + table(c) + " ORDER BY seq");
    std::vector<StoredRecord> out;
    while (st.step()) {
        out.push_back(StoredRecord{st.text(0), st.text(1), parse_body(st.text(2))});
    }
    return out;
}

bool Transaction::erase(Collection c, const std::string& id) {
    Statement st(db_, "DELETE FROM " + table(c) + " WHERE id = ?");
    st.bind(1, id);
    st.step();
    return sqlite3_changes(db_) > 0;
}

std::size_t Transaction::count(Collection c) {
    Statement st(db_, "SELECT COUNT(*) FROM " + table(c));
    st.step();
    return static_cast<std::size_t>(st.integer(0));
}

Result<std::unique_ptr<Store>> Store::open(const std::string& path) {
    sqlite3* db = nullptr;
    const int flags = SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE | SQLITE_OPEN_FULLMUTEX;
    if (sqlite3_open_v2(path.c_str(), &db, flags, nullptr) != SQLITE_OK) {
        std::string msg = db ? sqlite3_errmsg(db) : "out of memory";
        sqlite3_close(db);
        return make_error(ErrorCode::StorageError, "cannot open store '" + path + "': " + msg);
    }
    std::unique_ptr<Store> store{new Store(db)};
    try {
        store->migrate();
    } catch (const StoreFailure& e) {
        return make_error(ErrorCode::StorageError, std::string("store migration failed: ") + e.what());
    }
    return store;
}

Store::~Store() { sqlite3_close(db_); }

void Store::exec(const char* sql) {
    char* err = nullptr;
    if (sqlite3_exec(db_, sql, nullptr, nullptr, &err) != SQLITE_OK) {
        std::string msg = err ? err : "unknown error";
        sqlite3_free(err);
        throw StoreFailure(msg);
    }
}

void Store::try_rollback() noexcept {
    sqlite3_exec(db_, "ROLLBACK", nullptr, nullptr, nullptr);
}

void Store::migrate() {
    exec("PRAGMA journal_mode = WAL");
    exec("PRAGMA foreign_keys = ON");
    exec("BEGIN IMMEDIATE");
    exec("CREATE TABLE IF NOT EXISTS schema_version (version INTEGER NOT NULL)");
    exec("CREATE TABLE IF NOT EXISTS counters (name TEXT PRIMARY KEY, value INTEGER NOT NULL)");
    for (auto c : kAllCollections) {
        const auto t = table(c);
        exec(("CREATE TABLE IF NOT EXISTS " + t +
              " (id TEXT PRIMARY KEY, seq INTEGER NOT NULL, owner TEXT NOT NULL DEFAULT '', body TEXT NOT NULL)")
                 .c_str());
        exec(("CREATE INDEX IF NOT EXISTS " + t + "_owner ON " + t + "(owner, seq)").c_str());
        exec(("CREATE UNIQUE INDEX IF NOT EXISTS " + t + "_seq ON " + t + "(seq)").c_str());
    }
    exec("INSERT INTO schema_version(version) SELECT 1 WHERE NOT EXISTS (SELECT 1 FROM schema_version)");
    exec("COMMIT");
}

nlohmann::json Store::dump() {
    std::lock_guard lock(mutex_);
    nlohmann::json out = nlohmann::json::object();
    Transaction tx{db_};
    for (auto c : kAllCollections) {
        auto rows = nlohmann::json::array();
        for (auto& r : tx.records(c)) {
            rows.push_back({{"id", r.id}, {"owner", r.owner}, {"body", std::move(r.body)}});
        }
        out[table(c)] = std::move(rows);
    }
    Statement st(db_, "SELECT name, value FROM counters ORDER BY name");
    auto counters = nlohmann::json::object();
    while (st.step()) {
        counters[st.text(0)] = st.integer(1);
    }
    out["counters"] = std::move(counters);
    return out;
}

}  // namespace hrm
