#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hrm/result.hpp"

namespace hrm {

enum class GradeTrack { Scientist, Researcher, ScientificResearch, Teaching, Associate };

inline constexpr GradeTrack kAllTracks[] = {GradeTrack::Scientist, GradeTrack::Researcher,
                                            GradeTrack::ScientificResearch, GradeTrack::Teaching,
                                            GradeTrack::Associate};

std::string_view to_string(GradeTrack track) noexcept;
std::optional<GradeTrack> parse_track(std::string_view text) noexcept;

// Instances only come from the catalog; the constructor is private so that no
// (name, track) pair outside it can be built.
class AcademicGrade {
public:
    std::string_view name() const noexcept { return name_; }
    GradeTrack track() const noexcept { return track_; }
    int rank_in_track() const noexcept { return rank_; }

    bool operator==(const AcademicGrade& other) const noexcept {
        return track_ == other.track_ && rank_ == other.rank_;
    }

private:
    friend class GradeCatalog;
    constexpr AcademicGrade(std::string_view name, GradeTrack track, int rank) noexcept
        : name_(name), track_(track), rank_(rank) {}

    std::string_view name_;
    GradeTrack track_;
    int rank_;
};

class GradeCatalog {
public:
    /// Every grade in listing order: tracks in declaration order, each track
    /// ascending in seniority.
    static std::span<const AcademicGrade> all() noexcept;
    static std::vector<AcademicGrade> in_track(GradeTrack track);
    static std::optional<AcademicGrade> find(std::string_view name, GradeTrack track);
};

/// Lower-cases and collapses runs of whitespace; trims both ends.
std::string normalize_grade_name(std::string_view name);

Result<std::vector<AcademicGrade>> classify_grade(std::string_view name);

Result<std::strong_ordering> compare_seniority(const AcademicGrade& a, const AcademicGrade& b);

/// Resolves a grade by name, optionally qualified by track. Unqualified names
/// that exist in several tracks are rejected as ambiguous.
Result<AcademicGrade> resolve_grade(std::string_view name, std::optional<GradeTrack> track);

/// Line-delimited JSON seed: one {"name","rank","track"} object per line.
std::string catalog_seed_jsonl();

/// Checks a seed file's contents against the built-in catalog.
Result<void> verify_catalog_seed(std::string_view jsonl);

}  // namespace hrm
