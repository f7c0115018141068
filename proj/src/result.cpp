#include "hrm/result.hpp"

namespace hrm {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NotFound: return "NotFound";
        case ErrorCode::ValidationError: return "ValidationError";
        case ErrorCode::UnknownGrade: return "UnknownGrade";
        case ErrorCode::TrackMismatch: return "TrackMismatch";
        case ErrorCode::InvalidTrack: return "InvalidTrack";
        case ErrorCode::IllegalTransition: return "IllegalTransition";
        case ErrorCode::GuardViolation: return "GuardViolation";
        case ErrorCode::VersionConflict: return "VersionConflict";
        case ErrorCode::NonExpiring: return "NonExpiring";
        case ErrorCode::AlreadyRegistered: return "AlreadyRegistered";
        case ErrorCode::CategoryNotRegistrable: return "CategoryNotRegistrable";
        case ErrorCode::MissingDoctorate: return "MissingDoctorate";
        case ErrorCode::AlreadyDecided: return "AlreadyDecided";
        case ErrorCode::DuplicateScientistId: return "DuplicateScientistId";
        case ErrorCode::TransportError: return "TransportError";
        case ErrorCode::ProtocolError: return "ProtocolError";
        case ErrorCode::NoAuthorMapping: return "NoAuthorMapping";
        case ErrorCode::OwnerNotFound: return "OwnerNotFound";
        case ErrorCode::EmptyPath: return "EmptyPath";
        case ErrorCode::FileUnreadable: return "FileUnreadable";
        case ErrorCode::FormatError: return "FormatError";
        case ErrorCode::Unauthorized: return "Unauthorized";
        case ErrorCode::StorageError: return "StorageError";
    }
    return "Unknown";
}

}  // namespace hrm
