#include "returnlab/horizons.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "returnlab/errors.hpp"

namespace returnlab {

namespace {

constexpr int kDaysPerUnit[] = {1, 5, 21, 252};  // d, w, m, y

int unit_index(char suffix) {
    switch (suffix) {
        case 'd': return 0;
        case 'w': return 1;
        case 'm': return 2;
        case 'y': return 3;
        default: return -1;
    }
}

HorizonSpec make_spec(int count, char suffix) {
    const int unit = unit_index(suffix);
    if (unit < 0 || count < 1) {
        throw Error("bad horizon token: " + std::to_string(count) + std::string(1, suffix));
    }
    HorizonSpec spec;
    spec.label = std::to_string(count) + suffix;
    spec.days = count * kDaysPerUnit[unit];
    return spec;
}

// Parses "12y" style tokens; returns (count, suffix).
std::pair<int, char> parse_token(const std::string& token) {
    if (token.size() < 2) throw Error("bad horizon token '" + token + "'");
    const char suffix = static_cast<char>(std::tolower(token.back()));
    int count = 0;
    for (size_t i = 0; i + 1 < token.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(token[i]))) {
            throw Error("bad horizon token '" + token + "'");
        }
        count = count * 10 + (token[i] - '0');
    }
    if (unit_index(suffix) < 0) throw Error("bad horizon suffix in '" + token + "'");
    return {count, suffix};
}

}  // namespace

std::vector<HorizonSpec> default_ladder() {
    return parse_horizons("1d,1w,2w,1m,3m,6m,1y..12y");
}

std::vector<HorizonSpec> parse_horizons(const std::string& text) {
    std::vector<HorizonSpec> ladder;
    std::set<std::string> seen;
    std::set<int> seen_days;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t comma = std::min(text.find(',', pos), text.size());
        std::string token = text.substr(pos, comma - pos);
        pos = comma + 1;
        if (token.empty()) {
            if (pos > text.size()) break;
            throw Error("empty horizon token");
        }
        std::vector<HorizonSpec> expanded;
        const size_t dots = token.find("..");
        if (dots != std::string::npos) {
            const auto [lo, lo_sfx] = parse_token(token.substr(0, dots));
            const auto [hi, hi_sfx] = parse_token(token.substr(dots + 2));
            if (lo_sfx != hi_sfx || lo > hi) throw Error("bad horizon range '" + token + "'");
            for (int k = lo; k <= hi; ++k) expanded.push_back(make_spec(k, lo_sfx));
        } else {
            const auto [count, suffix] = parse_token(token);
            expanded.push_back(make_spec(count, suffix));
        }
        for (auto& spec : expanded) {
            if (!seen.insert(spec.label).second || !seen_days.insert(spec.days).second) {
                throw Error("duplicate horizon '" + spec.label + "'");
            }
            ladder.push_back(std::move(spec));
        }
        if (comma == text.size()) break;
    }
    if (ladder.empty()) throw Error("no horizons given");
    std::sort(ladder.begin(), ladder.end(),
              [](const HorizonSpec& a, const HorizonSpec& b) { return a.days < b.days; });
    return ladder;
}

HorizonReturnSet forward_returns(const DailySeries& series, const HorizonSpec& spec) {
    if (spec.days < 1) throw Error("horizon days must be >= 1");
    const size_t offset = static_cast<size_t>(spec.days);
    if (series.size() <= offset) {
        throw SeriesTooShort("series of " + std::to_string(series.size()) +
                             " rows cannot host horizon " + spec.label);
    }
    HorizonReturnSet set;
    set.spec = spec;
    const size_t count = series.size() - offset;
    set.returns.reserve(count);
    set.start_dates.reserve(count);
    for (size_t t = 0; t < count; ++t) {
        set.returns.push_back((series.close[t + offset] - series.close[t]) / series.close[t] *
                              100.0);
        set.start_dates.push_back(series.dates[t]);
    }
    return set;
}

double to_cagr(double r_abs_percent, int years) {
    if (years < 1) throw Error("to_cagr: years must be >= 1");
    if (r_abs_percent <= -100.0) {
        throw TotalLoss("to_cagr: total loss at r = " + std::to_string(r_abs_percent));
    }
    if (years == 1) return r_abs_percent;
    const double growth = 1.0 + r_abs_percent / 100.0;
    return (std::pow(growth, 1.0 / static_cast<double>(years)) - 1.0) * 100.0;
}

HorizonSummary horizon_summary(const HorizonReturnSet& set, const Pmf& pmf) {
    if (set.returns.empty()) throw EmptySet("horizon_summary: no returns");
    HorizonSummary s;
    s.spec = set.spec;
    const auto [min_it, max_it] = std::minmax_element(set.returns.begin(), set.returns.end());
    s.min = *min_it;
    s.max = *max_it;
    const size_t mode = pmf.mode_bin();
    s.mode = pmf.mids[mode];
    s.mode_prob = pmf.probs[mode];
    return s;
}

std::optional<HorizonSpec> trapping_horizon(const std::vector<HorizonSummary>& summaries) {
    std::optional<HorizonSpec> found;
    // Scan from the longest horizon down; the trapping horizon is the start
    // of the maximal all-nonnegative suffix.
    for (auto it = summaries.rbegin(); it != summaries.rend(); ++it) {
        if (it->min >= 0.0) {
            found = it->spec;
        } else {
            break;
        }
    }
    return found;
}

CagrSummary cagr_summary(const DailySeries& series, int years) {
    if (years < 1) throw Error("cagr_summary: years must be >= 1");
    HorizonSpec spec{std::to_string(years) + "y", years * kTradingDaysPerYear};
    const auto set = forward_returns(series, spec);
    std::vector<double> cagrs;
    cagrs.reserve(set.returns.size());
    for (double r : set.returns) cagrs.push_back(to_cagr(r, years));
    const Pmf pmf = build_pmf(cagrs);
    CagrSummary s;
    s.years = years;
    const auto [min_it, max_it] = std::minmax_element(cagrs.begin(), cagrs.end());
    s.min_cagr = *min_it;
    s.max_cagr = *max_it;
    s.mode_cagr = pmf.mids[pmf.mode_bin()];
    s.n = cagrs.size();
    return s;
}

}  // namespace returnlab
