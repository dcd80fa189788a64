#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "returnlab/date.hpp"
#include "returnlab/market_data.hpp"

namespace returnlab {

enum class BinRule {
    FreedmanDiaconis,
    SingleBin,  // fallback for degenerate samples (zero IQR or n == 1)
};

std::string to_string(BinRule rule);

// Binned empirical probability mass function. Bins are left-closed,
// right-open, last bin right-closed; edges span exactly [min, max].
struct Pmf {
    std::vector<double> edges;  // k+1 ascending edges
    std::vector<double> mids;   // k midpoints
    std::vector<double> probs;  // k probabilities, sum 1
    size_t n = 0;               // sample count
    BinRule rule = BinRule::FreedmanDiaconis;

    size_t bin_count() const { return probs.size(); }
    size_t mode_bin() const;  // argmax probability, ties toward lower bin
};

// Index of the bin containing v; values beyond the outer edges clamp to the
// first/last bin. Shared by every histogram builder in the artifact.
size_t bin_index(std::span<const double> edges, double v);

struct SigmaBand {
    double lo = 0.0;
    double hi = 0.0;
    double coverage = 0.0;  // fraction of raw samples with lo <= x <= hi
};

struct PmfStats {
    double mode = 0.0;       // midpoint of the argmax-probability bin
    double mode_prob = 0.0;
    double mean = 0.0;       // from raw samples
    double std = 0.0;        // population std from raw samples
    SigmaBand band1;         // mean +/- 1 std
    SigmaBand band2;         // mean +/- 2 std
    std::map<double, double> cdf_at;  // threshold -> P(x <= threshold), raw samples
};

// PMF-granularity asymmetry measures. Ratios are +inf when the denominator
// is zero and the numerator positive, NaN (reported as null) when both are 0.
struct AsymmetryStats {
    double exp_pos = 0.0;          // sum of mid * prob over mids > 0
    double exp_neg = 0.0;          // sum of |mid| * prob over mids < 0
    double rrr_magnitude = 0.0;    // exp_pos / exp_neg
    double prp = 0.0;              // probability mass on mids > 0
    double nrp = 0.0;              // probability mass on mids < 0
    double rrr_probability = 0.0;  // prp / nrp
};

struct ConditionalCell {
    int band_lo = 0;  // P/E band [band_lo, band_lo + 1)
    int years = 0;    // holding period
    AsymmetryStats stats;
    size_t n = 0;
};

// Freedman-Diaconis width h = 2 * IQR * n^(-1/3), IQR from type-7 quantiles.
// Throws DegenerateSample on zero IQR (callers fall back to a single bin).
double fd_bin_width(std::span<const double> samples);

// FD histogram normalized to probabilities; bin count ceil((max-min)/width),
// minimum 1. Degenerate samples produce one bin spanning the data.
Pmf build_pmf(std::span<const double> samples);

// Histogram of samples over explicitly supplied edges (normalized counts).
Pmf build_pmf_with_edges(std::span<const double> samples, std::vector<double> edges);

// Mode from the PMF, mean/std/band coverages/cdf from the raw samples.
PmfStats pmf_stats(const Pmf& pmf, std::span<const double> samples,
                   std::span<const double> cdf_thresholds = {});

AsymmetryStats asymmetry(const Pmf& pmf);

// One independent FD PMF per calendar month; months without observations
// are reported absent rather than failing the others.
struct MonthlyPmfs {
    std::array<std::optional<Pmf>, 12> months;  // index 0 = January
    std::vector<unsigned> empty_months;         // 1-based month numbers
};

MonthlyPmfs monthly_pmfs(std::span<const Date> dates, std::span<const double> values);

// P/E-band conditional forward-return cells for holding periods 1..max_years.
// Bands are the 1-point intervals [10,11) .. [30,31); cells with no samples
// are omitted. Throws NoPeCoverage.
std::vector<ConditionalCell> conditional_cells(const DailySeries& series, int max_years);

inline constexpr int kPeBandLow = 10;
inline constexpr int kPeBandHigh = 31;  // exclusive

}  // namespace returnlab
