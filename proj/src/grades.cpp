#include "hrm/grades.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

#include <nlohmann/json.hpp>

namespace hrm {

namespace {

using T = GradeTrack;

}  // namespace

std::string_view to_string(GradeTrack track) noexcept {
    switch (track) {
        case T::Scientist: return "Scientist";
        case T::Researcher: return "Researcher";
        case T::ScientificResearch: return "ScientificResearch";
        case T::Teaching: return "Teaching";
        case T::Associate: return "Associate";
    }
    return "";
}

std::optional<GradeTrack> parse_track(std::string_view text) noexcept {
    for (auto t : kAllTracks) {
        if (to_string(t) == text) {
            return t;
        }
    }
    return std::nullopt;
}

std::span<const AcademicGrade> GradeCatalog::all() noexcept {
    static constexpr std::array<AcademicGrade, 23> kCatalog{{
        {"research associate", T::Scientist, 0},
        {"senior research associate", T::Scientist, 1},
        {"research advisor", T::Scientist, 2},

        {"expert assistant", T::Researcher, 0},
        {"younger assistant", T::Researcher, 1},
        {"assistant", T::Researcher, 2},
        {"senior assistant", T::Researcher, 3},

        {"assistant professor", T::ScientificResearch, 0},
        {"associate professor", T::ScientificResearch, 1},
        {"full professor", T::ScientificResearch, 2},
        {"professor emeritus", T::ScientificResearch, 3},

        {"lecturer", T::Teaching, 0},
        {"senior lecturer", T::Teaching, 1},
        {"professor of high school", T::Teaching, 2},
        {"lector", T::Teaching, 3},
        {"senior lector", T::Teaching, 4},
        {"repetiteur", T::Teaching, 5},
        {"senior repetiteur", T::Teaching, 6},

        {"expert assistant", T::Associate, 0},
        {"younger assistant", T::Associate, 1},
        {"assistant", T::Associate, 2},
        {"high school assistant", T::Associate, 3},
        {"senior assistant", T::Associate, 4},
    }};
    return kCatalog;
}

std::vector<AcademicGrade> GradeCatalog::in_track(GradeTrack track) {
    std::vector<AcademicGrade> out;
    std::ranges::copy_if(all(), std::back_inserter(out),
                         [track](const AcademicGrade& g) { return g.track() == track; });
    return out;
}

std::optional<AcademicGrade> GradeCatalog::find(std::string_view name, GradeTrack track) {
    const auto normalized = normalize_grade_name(name);
    for (const auto& g : all()) {
        if (g.track() == track && g.name() == normalized) {
            return g;
        }
    }
    return std::nullopt;
}

std::string normalize_grade_name(std::string_view name) {
    std::string out;
    out.reserve(name.size());
    bool pending_space = false;
    for (unsigned char c : name) {
        if (std::isspace(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(static_cast<char>(std::tolower(c)));
    }
    return out;
}

Result<std::vector<AcademicGrade>> classify_grade(std::string_view name) {
    const auto normalized = normalize_grade_name(name);
    std::vector<AcademicGrade> matches;
    std::ranges::copy_if(GradeCatalog::all(), std::back_inserter(matches),
                         [&](const AcademicGrade& g) { return g.name() == normalized; });
    if (matches.empty()) {
        return make_error(ErrorCode::UnknownGrade, "unknown academic grade: '" + normalized + "'");
    }
    return matches;
}

Result<std::strong_ordering> compare_seniority(const AcademicGrade& a, const AcademicGrade& b) {
    if (a.track() != b.track()) {
        return make_error(ErrorCode::TrackMismatch,
                          std::string("cannot compare ") + std::string(to_string(a.track())) +
                              " grade with " + std::string(to_string(b.track())) + " grade");
    }
    return a.rank_in_track() <=> b.rank_in_track();
}

Result<AcademicGrade> resolve_grade(std::string_view name, std::optional<GradeTrack> track) {
    auto matches = classify_grade(name);
    if (!matches) {
        return std::move(matches).error();
    }
    if (track) {
        for (const auto& g : *matches) {
            if (g.track() == *track) {
                return g;
            }
        }
        return make_error(ErrorCode::UnknownGrade, "grade '" + normalize_grade_name(name) +
                                                       "' is not in track " +
                                                       std::string(to_string(*track)));
    }
    if (matches->size() > 1) {
        return make_error(ErrorCode::ValidationError,
                          "grade '" + normalize_grade_name(name) +
                              "' exists in several tracks; a track is required",
                          "ambiguous_grade");
    }
    return matches->front();
}

std::string catalog_seed_jsonl() {
    std::ostringstream out;
    for (const auto& g : GradeCatalog::all()) {
        nlohmann::json rec{{"name", g.name()}, {"track", to_string(g.track())}, {"rank", g.rank_in_track()}};
        out << rec.dump() << '\n';
    }
    return out.str();
}

Result<void> verify_catalog_seed(std::string_view jsonl) {
    std::istringstream in{std::string(jsonl)};
    std::string line;
    std::size_t index = 0;
    const auto catalog = GradeCatalog::all();
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        auto rec = nlohmann::json::parse(line, nullptr, false);
        if (rec.is_discarded() || !rec.is_object()) {
            return make_error(ErrorCode::FormatError, "seed line " + std::to_string(index + 1) + " is not a JSON object");
        }
        if (index >= catalog.size()) {
            return make_error(ErrorCode::FormatError, "seed has more records than the catalog");
        }
        const auto& g = catalog[index];
        if (rec.value("name", "") != g.name() || rec.value("track", "") != to_string(g.track()) ||
            rec.value("rank", -1) != g.rank_in_track()) {
            return make_error(ErrorCode::FormatError,
                              "seed record " + std::to_string(index + 1) + " disagrees with the catalog");
        }
        ++index;
    }
    if (index != catalog.size()) {
        return make_error(ErrorCode::FormatError, "seed is missing catalog records");
    }
    return {};
}

}  // namespace hrm
