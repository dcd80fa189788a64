#include "returnlab/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "returnlab/errors.hpp"
#include "returnlab/stats.hpp"

namespace returnlab {

std::string to_string(BinRule rule) {
    switch (rule) {
        case BinRule::FreedmanDiaconis: return "freedman-diaconis";
        case BinRule::SingleBin: return "single-bin";
    }
    return "unknown";
}

size_t Pmf::mode_bin() const {
    size_t best = 0;
    for (size_t i = 1; i < probs.size(); ++i) {
        if (probs[i] > probs[best]) best = i;
    }
    return best;
}

size_t bin_index(std::span<const double> edges, double v) {
    const size_t bins = edges.size() - 1;
    if (v <= edges.front()) return 0;
    if (v >= edges.back()) return bins - 1;
    const auto it = std::upper_bound(edges.begin(), edges.end(), v);
    return static_cast<size_t>(it - edges.begin()) - 1;
}

double fd_bin_width(std::span<const double> samples) {
    if (samples.size() < 2) throw DegenerateSample("fd_bin_width: need n >= 2");
    const double iqr = interquartile_range(samples);
    if (!(iqr > 0.0)) throw DegenerateSample("fd_bin_width: zero IQR");
    return 2.0 * iqr / std::cbrt(static_cast<double>(samples.size()));
}

namespace {

Pmf single_bin_pmf(std::span<const double> samples, double lo, double hi) {
    Pmf pmf;
    pmf.rule = BinRule::SingleBin;
    pmf.n = samples.size();
    if (!(hi > lo)) {  // all samples identical: give the bin unit width
        lo -= 0.5;
        hi += 0.5;
    }
    pmf.edges = {lo, hi};
    pmf.mids = {(lo + hi) / 2.0};
    pmf.probs = {1.0};
    return pmf;
}

Pmf from_counts(std::vector<double> edges, const std::vector<size_t>& counts, size_t n,
                BinRule rule) {
    Pmf pmf;
    pmf.rule = rule;
    pmf.n = n;
    pmf.edges = std::move(edges);
    pmf.mids.reserve(counts.size());
    pmf.probs.reserve(counts.size());
    for (size_t i = 0; i < counts.size(); ++i) {
        pmf.mids.push_back((pmf.edges[i] + pmf.edges[i + 1]) / 2.0);
        pmf.probs.push_back(static_cast<double>(counts[i]) / static_cast<double>(n));
    }
    return pmf;
}

}  // namespace

Pmf build_pmf(std::span<const double> samples) {
    if (samples.empty()) throw EmptySet("build_pmf: no samples");
    const auto [min_it, max_it] = std::minmax_element(samples.begin(), samples.end());
    const double lo = *min_it;
    const double hi = *max_it;

    double width = 0.0;
    try {
        width = fd_bin_width(samples);
    } catch (const DegenerateSample&) {
        return single_bin_pmf(samples, lo, hi);
    }

    const double span = hi - lo;
    size_t bins = static_cast<size_t>(std::ceil(span / width));
    if (bins < 1) bins = 1;

    // Edges span exactly [lo, hi] so bin midpoints stay inside the sample range.
    std::vector<double> edges(bins + 1);
    edges.front() = lo;
    edges.back() = hi;
    for (size_t i = 1; i < bins; ++i) {
        edges[i] = lo + span * (static_cast<double>(i) / static_cast<double>(bins));
    }
    for (size_t i = 0; i < bins; ++i) {
        if (!(edges[i] < edges[i + 1])) return single_bin_pmf(samples, lo, hi);
    }

    std::vector<size_t> counts(bins, 0);
    for (double v : samples) ++counts[bin_index(edges, v)];
    return from_counts(std::move(edges), counts, samples.size(), BinRule::FreedmanDiaconis);
}

Pmf build_pmf_with_edges(std::span<const double> samples, std::vector<double> edges) {
    if (samples.empty()) throw EmptySet("build_pmf_with_edges: no samples");
    if (edges.size() < 2) throw DegenerateSample("build_pmf_with_edges: need >= 2 edges");
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        if (!(edges[i] < edges[i + 1])) {
            throw DegenerateSample("build_pmf_with_edges: edges not increasing");
        }
    }
    std::vector<size_t> counts(edges.size() - 1, 0);
    for (double v : samples) ++counts[bin_index(edges, v)];
    return from_counts(std::move(edges), counts, samples.size(), BinRule::FreedmanDiaconis);
}

PmfStats pmf_stats(const Pmf& pmf, std::span<const double> samples,
                   std::span<const double> cdf_thresholds) {
    PmfStats stats;
    const size_t mode = pmf.mode_bin();
    stats.mode = pmf.mids[mode];
    stats.mode_prob = pmf.probs[mode];
    stats.mean = mean(samples);
    stats.std = stddev_population(samples);

    const auto band = [&samples](double lo, double hi) {
        SigmaBand b{lo, hi, 0.0};
        size_t inside = 0;
        for (double v : samples) {
            if (lo <= v && v <= hi) ++inside;
        }
        b.coverage = static_cast<double>(inside) / static_cast<double>(samples.size());
        return b;
    };
    stats.band1 = band(stats.mean - stats.std, stats.mean + stats.std);
    stats.band2 = band(stats.mean - 2.0 * stats.std, stats.mean + 2.0 * stats.std);

    for (double t : cdf_thresholds) {
        size_t below = 0;
        for (double v : samples) {
            if (v <= t) ++below;
        }
        stats.cdf_at[t] = static_cast<double>(below) / static_cast<double>(samples.size());
    }
    return stats;
}

AsymmetryStats asymmetry(const Pmf& pmf) {
    AsymmetryStats st;
    for (size_t i = 0; i < pmf.bin_count(); ++i) {
        const double mid = pmf.mids[i];
        const double p = pmf.probs[i];
        if (mid > 0.0) {
            st.exp_pos += mid * p;
            st.prp += p;
        } else if (mid < 0.0) {
            st.exp_neg += -mid * p;
            st.nrp += p;
        }
    }
    const auto ratio = [](double num, double den) {
        if (den > 0.0) return num / den;
        if (num > 0.0) return std::numeric_limits<double>::infinity();
        return std::numeric_limits<double>::quiet_NaN();  // undefined 0/0
    };
    st.rrr_magnitude = ratio(st.exp_pos, st.exp_neg);
    st.rrr_probability = ratio(st.prp, st.nrp);
    return st;
}

MonthlyPmfs monthly_pmfs(std::span<const Date> dates, std::span<const double> values) {
    if (dates.size() != values.size()) {
        throw LengthMismatch("monthly_pmfs: dates and values disagree");
    }
    std::array<std::vector<double>, 12> buckets;
    for (size_t i = 0; i < dates.size(); ++i) {
        buckets[dates[i].month - 1].push_back(values[i]);
    }
    MonthlyPmfs out;
    for (unsigned m = 0; m < 12; ++m) {
        if (buckets[m].empty()) {
            out.empty_months.push_back(m + 1);
        } else {
            out.months[m] = build_pmf(buckets[m]);
        }
    }
    return out;
}

std::vector<ConditionalCell> conditional_cells(const DailySeries& series, int max_years) {
    const auto pe_start = series.pe_start();
    if (!pe_start) throw NoPeCoverage("conditional_cells: series carries no pe values");
    if (max_years < 1) throw EmptySet("conditional_cells: max_years must be >= 1");

    std::vector<ConditionalCell> cells;
    for (int years = 1; years <= max_years; ++years) {
        const size_t offset = static_cast<size_t>(years) * kTradingDaysPerYear;
        std::map<int, std::vector<double>> per_band;
        for (size_t t = *pe_start; t + offset < series.size(); ++t) {
            const double pe = *series.pe[t];
            const int band = static_cast<int>(std::floor(pe));
            if (band < kPeBandLow || band >= kPeBandHigh) continue;
            const double ret = (series.close[t + offset] - series.close[t]) / series.close[t] * 100.0;
            per_band[band].push_back(ret);
        }
        for (const auto& [band, returns] : per_band) {
            ConditionalCell cell;
            cell.band_lo = band;
            cell.years = years;
            cell.n = returns.size();
            cell.stats = asymmetry(build_pmf(returns));
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

}  // namespace returnlab
