#pragma once

#include <array>
#include <concepts>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace hrm {

enum class ErrorCode {
    NotFound,
    ValidationError,
    UnknownGrade,
    TrackMismatch,
    InvalidTrack,
    IllegalTransition,
    GuardViolation,
    VersionConflict,
    NonExpiring,
    AlreadyRegistered,
    CategoryNotRegistrable,
    MissingDoctorate,
    AlreadyDecided,
    DuplicateScientistId,
    TransportError,
    ProtocolError,
    NoAuthorMapping,
    OwnerNotFound,
    EmptyPath,
    FileUnreadable,
    FormatError,
    Unauthorized,
    StorageError,
};

inline constexpr std::array kAllErrorCodes{
    ErrorCode::NotFound,          ErrorCode::ValidationError,        ErrorCode::UnknownGrade,
    ErrorCode::TrackMismatch,     ErrorCode::InvalidTrack,           ErrorCode::IllegalTransition,
    ErrorCode::GuardViolation,    ErrorCode::VersionConflict,        ErrorCode::NonExpiring,
    ErrorCode::AlreadyRegistered, ErrorCode::CategoryNotRegistrable, ErrorCode::MissingDoctorate,
    ErrorCode::AlreadyDecided,    ErrorCode::DuplicateScientistId,   ErrorCode::TransportError,
    ErrorCode::ProtocolError,     ErrorCode::NoAuthorMapping,        ErrorCode::OwnerNotFound,
    ErrorCode::EmptyPath,         ErrorCode::FileUnreadable,         ErrorCode::FormatError,
    ErrorCode::Unauthorized,      ErrorCode::StorageError,
};

std::string_view to_string(ErrorCode code) noexcept;

struct Error {
    ErrorCode code;
    std::string message;
    // Machine-readable detail, e.g. the name of the failed guard.
    std::string detail;

    bool operator==(const Error&) const = default;
};

inline Error make_error(ErrorCode code, std::string message, std::string detail = {}) {
    return Error{code, std::move(message), std::move(detail)};
}

template <typename T>
class [[nodiscard]] Result {
public:
    Result(T value) : data_(std::move(value)) {}
    Result(Error error) : data_(std::move(error)) {}

    bool has_value() const noexcept { return data_.index() == 0; }
    explicit operator bool() const noexcept { return has_value(); }

    T& value() & { return std::get<0>(data_); }
    const T& value() const& { return std::get<0>(data_); }
    T&& value() && { return std::get<0>(std::move(data_)); }

    T& operator*() & { return value(); }
    const T& operator*() const& { return value(); }
    T* operator->() { return &value(); }
    const T* operator->() const { return &value(); }

    const Error& error() const& { return std::get<1>(data_); }
    Error&& error() && { return std::get<1>(std::move(data_)); }

    friend bool operator==(const Result& r, const T& v)
        requires std::equality_comparable<T>
    {
        return r.has_value() && r.value() == v;
    }

private:
    std::variant<T, Error> data_;
};

template <>
class [[nodiscard]] Result<void> {
public:
    Result() = default;
    Result(Error error) : error_(std::move(error)), failed_(true) {}

    bool has_value() const noexcept { return !failed_; }
    explicit operator bool() const noexcept { return has_value(); }
    const Error& error() const& { return error_; }

private:
    Error error_{ErrorCode::StorageError, {}, {}};
    bool failed_ = false;
};

}  // namespace hrm
