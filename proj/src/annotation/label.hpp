#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace rumortrack::annotation {

enum class Label { Rumor = 0, Clarification = 1, Other = 2 };

inline constexpr std::array<Label, 3> kLabels{Label::Rumor, Label::Clarification, Label::Other};

constexpr std::string_view to_string(Label l) {
    switch (l) {
        case Label::Rumor: return "rumor";
        case Label::Clarification: return "clarification";
        case Label::Other: return "other";
    }
    return "other";
}

constexpr std::optional<Label> parse_label(std::string_view s) {
    if (s == "rumor") return Label::Rumor;
    if (s == "clarification") return Label::Clarification;
    if (s == "other") return Label::Other;
    return std::nullopt;
}

struct Tally {
    std::array<std::size_t, 3> counts{};

    std::size_t& operator[](Label l) { return counts[static_cast<std::size_t>(l)]; }
    std::size_t operator[](Label l) const { return counts[static_cast<std::size_t>(l)]; }
    std::size_t total() const { return counts[0] + counts[1] + counts[2]; }

    bool operator==(const Tally&) const = default;
};

}  // namespace rumortrack::annotation
