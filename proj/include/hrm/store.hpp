#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include <nlohmann/json.hpp>

#include "hrm/result.hpp"

struct sqlite3;

namespace hrm {

enum class Collection {
    Persons,
    Employees,
    Procedures,
    ProcedureEvents,
    Appointments,
    Notifications,
    RegistryApplications,
    RegistryEntries,
    AuthorMappings,
    Publications,
    Documents,
    Requirements,
    Audit,
};

inline constexpr Collection kAllCollections[] = {
    Collection::Persons,          Collection::Employees,            Collection::Procedures,
    Collection::ProcedureEvents,  Collection::Appointments,         Collection::Notifications,
    Collection::RegistryApplications, Collection::RegistryEntries,  Collection::AuthorMappings,
    Collection::Publications,     Collection::Documents,            Collection::Requirements,
    Collection::Audit,
};

std::string_view table_name(Collection c) noexcept;

struct StoreFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StoredRecord {
    std::string id;
    std::string owner;
    nlohmann::json body;
};

/// Access to the store inside one SQLite transaction. Only valid for the
/// duration of Store::transact.
class Transaction {
public:
    explicit Transaction(sqlite3* db) : db_(db) {}

    /// "<prefix>-<n>" with n drawn from a per-prefix counter.
    std::string next_id(std::string_view prefix);

    /// Insert or replace; an existing record keeps its insertion order.
    void put(Collection c, const std::string& id, const nlohmann::json& body, std::string_view owner = {});
    std::optional<nlohmann::json> get(Collection c, const std::string& id);
    /// Insertion order.
    std::vector<nlohmann::json> all(Collection c);
    std::vector<nlohmann::json> by_owner(Collection c, std::string_view owner);
    std::vector<StoredRecord> records(Collection c);
    bool erase(Collection c, const std::string& id);
    std::size_t count(Collection c);

private:
    std::vector<nlohmann::json> query_bodies(const std::string& sql, std::optional<std::string_view> arg);

    sqlite3* db_;
};

/// Embedded transactional store: one table per collection, JSON record bodies.
/// Transactions are serialized; each runs under BEGIN IMMEDIATE.
class Store {
public:
    /// `path` may be ":memory:".
    static Result<std::unique_ptr<Store>> open(const std::string& path);
    ~Store();

    Store(const Store&) = delete;
    Store& operator=(const Store&) = delete;

    /// Runs `fn(Transaction&)`, which must return a Result. Commits when the
    /// result holds a value, rolls back otherwise. SQLite failures surface as
    /// StorageError.
    template <class F>
    auto transact(F&& fn) -> std::invoke_result_t<F, Transaction&> {
        using R = std::invoke_result_t<F, Transaction&>;
        std::lock_guard lock(mutex_);
        try {
            exec("BEGIN IMMEDIATE");
            Transaction tx{db_};
            R result = fn(tx);
            exec(result.has_value() ? "COMMIT" : "ROLLBACK");
            return result;
        } catch (const StoreFailure& e) {
            try_rollback();
            return R{make_error(ErrorCode::StorageError, e.what())};
        } catch (...) {
            try_rollback();
            throw;
        }
    }

    /// Every collection and counter in a canonical order, for comparison and
    /// backups.
    nlohmann::json dump();

private:
    explicit Store(sqlite3* db) : db_(db) {}
    void exec(const char* sql);
    void try_rollback() noexcept;
    void migrate();

    sqlite3* db_;
    std::mutex mutex_;
};

}  // namespace hrm
