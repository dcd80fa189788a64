#pragma once

#include <optional>
#include <string>
#include <vector>

#include "returnlab/distribution.hpp"
#include "returnlab/market_data.hpp"

namespace returnlab {

struct HorizonSpec {
    std::string label;  // e.g. "1d", "3m", "7y"
    int days = 0;       // trading-day offset, >= 1

    bool operator==(const HorizonSpec&) const = default;
};

// Forward percent returns over one horizon, one value per valid start day
// (overlapping windows).
struct HorizonReturnSet {
    HorizonSpec spec;
    std::vector<double> returns;      // percent
    std::vector<Date> start_dates;
};

struct HorizonSummary {
    HorizonSpec spec;
    double min = 0.0;       // percent, exact sample extremum
    double max = 0.0;
    double mode = 0.0;      // modal PMF bin midpoint
    double mode_prob = 0.0;
};

struct CagrSummary {
    int years = 0;
    double min_cagr = 0.0;   // percent
    double max_cagr = 0.0;
    double mode_cagr = 0.0;  // modal bin midpoint of the per-window CAGR PMF
    size_t n = 0;
};

// The ladder used throughout: 1d, 1w, 2w, 1m, 3m, 6m, 1y .. 12y
// = {1, 5, 10, 21, 63, 126, 252, 504, ..., 3024} trading days.
std::vector<HorizonSpec> default_ladder();

// Parses "1d,1w,2w,1m,3m,6m,1y,2y..12y" style lists. Suffixes d/w/m/y map to
// 1/5/21/252 trading days; "Ay..By" expands a year range.
std::vector<HorizonSpec> parse_horizons(const std::string& text);

// returns[t] = (close[t+i] - close[t]) / close[t] * 100. Throws SeriesTooShort
// unless the series is strictly longer than the horizon.
HorizonReturnSet forward_returns(const DailySeries& series, const HorizonSpec& spec);

// ((1 + r/100)^(1/n) - 1) * 100; exact identity at n = 1. Throws TotalLoss
// for r <= -100.
double to_cagr(double r_abs_percent, int years);

// min/max from the samples, mode from the PMF built over them.
HorizonSummary horizon_summary(const HorizonReturnSet& set, const Pmf& pmf);

// Smallest horizon whose min return is nonnegative at it and at every longer
// horizon in the ladder; absent when the last horizon is still negative.
// Input must be ordered by ascending days.
std::optional<HorizonSpec> trapping_horizon(const std::vector<HorizonSummary>& summaries);

// Per-window CAGRs at the 252*years horizon, summarized like Table rows.
CagrSummary cagr_summary(const DailySeries& series, int years);

}  // namespace returnlab
