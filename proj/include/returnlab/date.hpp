#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace returnlab {

// Calendar date, ISO-8601 only. Ordering is lexicographic on (y, m, d).
struct Date {
    int year = 0;
    unsigned month = 0;  // 1..12
    unsigned day = 0;    // 1..31

    auto operator<=>(const Date&) const = default;

    bool valid() const;
    std::string to_string() const;  // YYYY-MM-DD

    // Strict YYYY-MM-DD parse; returns nullopt on any other shape or an
    // impossible calendar date.
    static std::optional<Date> parse(const std::string& text);
};

}  // namespace returnlab
