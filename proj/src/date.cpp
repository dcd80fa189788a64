#include "returnlab/date.hpp"

#include <cctype>
#include <chrono>
#include <cstdio>

namespace returnlab {

bool Date::valid() const {
    const std::chrono::year_month_day ymd{std::chrono::year{year},
                                          std::chrono::month{month},
                                          std::chrono::day{day}};
    return ymd.ok();
}

std::string Date::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", year, month, day);
    return buf;
}

std::optional<Date> Date::parse(const std::string& text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    for (size_t i = 0; i < text.size(); ++i) {
        if (i == 4 || i == 7) continue;
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
    }
    Date d;
    d.year = (text[0] - '0') * 1000 + (text[1] - '0') * 100 + (text[2] - '0') * 10 + (text[3] - '0');
    d.month = static_cast<unsigned>((text[5] - '0') * 10 + (text[6] - '0'));
    d.day = static_cast<unsigned>((text[8] - '0') * 10 + (text[9] - '0'));
    if (!d.valid()) return std::nullopt;
    return d;
}

}  // namespace returnlab
