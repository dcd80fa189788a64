#pragma once

#include <chrono>
#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "returnlab/market_data.hpp"

namespace testutil {

// Weekday calendar starting 1990-01-01, long enough for any test series.
inline std::vector<returnlab::Date> trading_dates(size_t n) {
    using namespace std::chrono;
    std::vector<returnlab::Date> out;
    out.reserve(n);
    sys_days d{year{1990} / January / 1};
    while (out.size() < n) {
        const weekday wd{d};
        if (wd != Saturday && wd != Sunday) {
            const year_month_day ymd{d};
            out.push_back({static_cast<int>(ymd.year()),
                           static_cast<unsigned>(ymd.month()),
                           static_cast<unsigned>(ymd.day())});
        }
        d += days{1};
    }
    return out;
}

inline returnlab::DailySeries make_series(const std::vector<double>& close,
                                          std::vector<std::optional<double>> pe = {}) {
    returnlab::DailySeries s;
    s.dates = trading_dates(close.size());
    s.close = close;
    if (pe.empty()) pe.assign(close.size(), std::nullopt);
    s.pe = std::move(pe);
    s.validate();
    return s;
}

// Geometric random walk with optional mean-reverting P/E column.
inline returnlab::DailySeries random_walk_series(size_t n, uint64_t seed, bool with_pe,
                                                 double drift = 0.0003, double vol = 0.01) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> close(n);
    std::vector<std::optional<double>> pe(n);
    double level = 100.0;
    double pe_level = 20.0;
    for (size_t i = 0; i < n; ++i) {
        level *= std::exp(drift + vol * gauss(rng));
        close[i] = level;
        if (with_pe) {
            pe_level += 0.05 * (20.0 - pe_level) + 0.4 * gauss(rng);
            if (pe_level < 5.0) pe_level = 5.0;
            pe[i] = pe_level;
        }
    }
    return make_series(close, std::move(pe));
}

}  // namespace testutil
