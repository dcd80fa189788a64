#include "returnlab/infoflow.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "returnlab/errors.hpp"

namespace returnlab {

namespace {

std::vector<double> marginal_probs(const std::vector<long long>& sums, size_t n) {
    std::vector<double> probs;
    probs.reserve(sums.size());
    for (long long c : sums) probs.push_back(static_cast<double>(c) / static_cast<double>(n));
    return probs;
}

std::vector<long long> row_sums(const JointHistogram& j) {
    std::vector<long long> sums(j.x_bins(), 0);
    for (size_t i = 0; i < j.x_bins(); ++i) {
        for (size_t col = 0; col < j.y_bins(); ++col) sums[i] += j.count_at(i, col);
    }
    return sums;
}

std::vector<long long> col_sums(const JointHistogram& j) {
    std::vector<long long> sums(j.y_bins(), 0);
    for (size_t i = 0; i < j.x_bins(); ++i) {
        for (size_t col = 0; col < j.y_bins(); ++col) sums[col] += j.count_at(i, col);
    }
    return sums;
}

}  // namespace

std::vector<double> JointHistogram::marginal_x() const {
    return marginal_probs(row_sums(*this), n);
}

std::vector<double> JointHistogram::marginal_y() const {
    return marginal_probs(col_sums(*this), n);
}

JointHistogram joint_histogram(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw LengthMismatch("joint_histogram: unequal lengths");
    if (x.size() < 2) throw TooShort("joint_histogram: need at least 2 pairs");
    return joint_histogram_with_edges(x, y, build_pmf(x).edges, build_pmf(y).edges);
}

JointHistogram joint_histogram_with_edges(std::span<const double> x, std::span<const double> y,
                                          std::vector<double> x_edges,
                                          std::vector<double> y_edges) {
    if (x.size() != y.size()) throw LengthMismatch("joint_histogram: unequal lengths");
    JointHistogram joint;
    joint.x_edges = std::move(x_edges);
    joint.y_edges = std::move(y_edges);
    joint.n = x.size();
    joint.counts.assign(joint.x_bins() * joint.y_bins(), 0);
    for (size_t t = 0; t < x.size(); ++t) {
        const size_t i = bin_index(joint.x_edges, x[t]);
        const size_t j = bin_index(joint.y_edges, y[t]);
        ++joint.counts[i * joint.y_bins() + j];
    }
    return joint;
}

double mutual_information(const JointHistogram& joint) {
    const auto px = joint.marginal_x();
    const auto py = joint.marginal_y();
    std::vector<double> terms;
    terms.reserve(64);
    for (size_t i = 0; i < joint.x_bins(); ++i) {
        for (size_t j = 0; j < joint.y_bins(); ++j) {
            const long long c = joint.count_at(i, j);
            if (c == 0) continue;
            const double p = static_cast<double>(c) / static_cast<double>(joint.n);
            terms.push_back(p * std::log(p / (px[i] * py[j])));
        }
    }
    // Canonical accumulation order makes MI(x,y) and MI(y,x) bit-identical.
    std::sort(terms.begin(), terms.end());
    double mi = 0.0;
    for (double t : terms) mi += t;
    return mi;
}

MiEstimate mutual_information(std::span<const double> x, std::span<const double> y) {
    const JointHistogram joint = joint_histogram(x, y);
    MiEstimate est;
    if (joint.x_bins() == 1 || joint.y_bins() == 1) {
        est.degenerate_marginal = true;
        est.nats = 0.0;
        return est;
    }
    est.nats = mutual_information(joint);
    return est;
}

double entropy_nats(std::span<const double> probs) {
    double h = 0.0;
    for (double p : probs) {
        if (p > 0.0) h -= p * std::log(p);
    }
    return h;
}

double normalized_mutual_information(const JointHistogram& joint) {
    const double hx = entropy_nats(joint.marginal_x());
    const double hy = entropy_nats(joint.marginal_y());
    if (!(hx > 0.0) || !(hy > 0.0)) return 0.0;
    return mutual_information(joint) / std::sqrt(hx * hy);
}

std::vector<double> lagged_nmi(std::span<const double> driver, std::span<const double> target,
                               int max_lag) {
    if (driver.size() != target.size()) throw LengthMismatch("lagged_nmi: unequal lengths");
    if (max_lag < 0) throw Error("lagged_nmi: max_lag must be >= 0");
    if (max_lag == 0) return {};
    if (driver.size() <= static_cast<size_t>(max_lag) + 1) {
        throw TooShort("lagged_nmi: need length > max_lag + 1");
    }
    const auto driver_edges = build_pmf(driver).edges;
    const auto target_edges = build_pmf(target).edges;

    std::vector<double> curve;
    curve.reserve(static_cast<size_t>(max_lag));
    for (int lag = 1; lag <= max_lag; ++lag) {
        const size_t pairs = driver.size() - static_cast<size_t>(lag);
        const auto joint = joint_histogram_with_edges(
            driver.subspan(0, pairs), target.subspan(static_cast<size_t>(lag), pairs),
            driver_edges, target_edges);
        curve.push_back(normalized_mutual_information(joint));
    }
    return curve;
}

namespace {

// Bin-index symbol sequence for one variable's FD discretization.
std::vector<size_t> symbolize(std::span<const double> x, const std::vector<double>& edges) {
    std::vector<size_t> s;
    s.reserve(x.size());
    for (double v : x) s.push_back(bin_index(edges, v));
    return s;
}

uint64_t encode_history(const std::vector<size_t>& symbols, size_t t, int k, uint64_t base) {
    uint64_t key = 0;
    for (int i = 0; i < k; ++i) key = key * base + symbols[t - static_cast<size_t>(i)];
    return key;
}

uint64_t ipow(uint64_t base, int exp) {
    uint64_t out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

}  // namespace

TeEstimate transfer_entropy(std::span<const double> driver, std::span<const double> target,
                            int history_k) {
    if (driver.size() != target.size()) throw LengthMismatch("transfer_entropy: unequal lengths");
    if (history_k < 1) throw Error("transfer_entropy: history length must be >= 1");
    const size_t n = target.size();
    if (n <= static_cast<size_t>(history_k) + 1) {
        throw TooShort("transfer_entropy: need length > k + 1");
    }

    const Pmf target_pmf = build_pmf(target);
    const Pmf driver_pmf = build_pmf(driver);
    if (target_pmf.bin_count() == 1 || driver_pmf.bin_count() == 1) {
        throw DegenerateMarginal("transfer_entropy: a marginal collapses to one bin");
    }
    const auto sy = symbolize(target, target_pmf.edges);
    const auto sx = symbolize(driver, driver_pmf.edges);
    const auto by = static_cast<uint64_t>(target_pmf.bin_count());
    const auto bx = static_cast<uint64_t>(driver_pmf.bin_count());

    // Key-space bound: by^(k+1) * bx^k must fit in 64 bits.
    long double space = 1.0L;
    for (int i = 0; i <= history_k; ++i) space *= static_cast<long double>(by);
    for (int i = 0; i < history_k; ++i) space *= static_cast<long double>(bx);
    if (space > 4.0e18L) {
        throw Error("transfer_entropy: history length too large for the bin counts");
    }

    const uint64_t bx_pow_k = ipow(bx, history_k);
    const uint64_t by_pow_k = ipow(by, history_k);

    std::map<uint64_t, long long> full;      // (y+, y_hist, x_hist)
    std::map<uint64_t, long long> hist;      // (y_hist, x_hist)
    std::map<uint64_t, long long> y_full;    // (y+, y_hist)
    std::map<uint64_t, long long> y_hist;    // (y_hist)
    const size_t first = static_cast<size_t>(history_k) - 1;
    size_t samples = 0;
    for (size_t t = first; t + 1 < n; ++t) {
        const uint64_t yh = encode_history(sy, t, history_k, by);
        const uint64_t xh = encode_history(sx, t, history_k, bx);
        const uint64_t ynext = sy[t + 1];
        ++full[(ynext * by_pow_k + yh) * bx_pow_k + xh];
        ++hist[yh * bx_pow_k + xh];
        ++y_full[ynext * by_pow_k + yh];
        ++y_hist[yh];
        ++samples;
    }

    double te = 0.0;
    for (const auto& [key, c] : full) {
        const uint64_t xh = key % bx_pow_k;
        const uint64_t rest = key / bx_pow_k;
        const uint64_t yh = rest % by_pow_k;
        const uint64_t ynext = rest / by_pow_k;
        const double p = static_cast<double>(c) / static_cast<double>(samples);
        const double num = static_cast<double>(c) * static_cast<double>(y_hist.at(yh));
        const double den = static_cast<double>(hist.at(yh * bx_pow_k + xh)) *
                           static_cast<double>(y_full.at(ynext * by_pow_k + yh));
        te += p * std::log(num / den);
    }

    TeEstimate est;
    if (te < 0.0) {
        est.nats = 0.0;
        est.clipped = true;
    } else {
        est.nats = te;
    }
    return est;
}

InfoFlowSet info_report(const DailySeries& series, int history_k, int max_lag) {
    const auto start = series.pe_start();
    if (!start) throw NoPeCoverage("info_report: series carries no pe values");
    const size_t coverage = series.size() - *start;
    if (coverage < static_cast<size_t>(history_k) + 2) {
        throw TooShort("info_report: pe coverage must be >= k + 2");
    }

    // Driver: P/E level on day t. Target: next-day percent return from t.
    std::vector<double> driver;
    std::vector<double> target;
    driver.reserve(coverage - 1);
    target.reserve(coverage - 1);
    for (size_t t = *start; t + 1 < series.size(); ++t) {
        driver.push_back(*series.pe[t]);
        target.push_back((series.close[t + 1] - series.close[t]) / series.close[t] * 100.0);
    }

    InfoFlowSet set;
    set.history_k = history_k;
    set.max_lag = max_lag;
    const auto mi = mutual_information(driver, target);
    set.mi = mi.nats;
    set.mi_degenerate = mi.degenerate_marginal;
    const auto fwd = transfer_entropy(driver, target, history_k);
    const auto bwd = transfer_entropy(target, driver, history_k);
    set.te_forward = fwd.nats;
    set.te_forward_clipped = fwd.clipped;
    set.te_backward = bwd.nats;
    set.te_backward_clipped = bwd.clipped;
    set.driver_edges = build_pmf(driver).edges;
    set.target_edges = build_pmf(target).edges;

    const auto curve = lagged_nmi(driver, target, max_lag);
    for (int lag = 1; lag <= max_lag; ++lag) {
        InfoFlowReport report;
        report.mi = set.mi;
        report.nmi = curve[static_cast<size_t>(lag - 1)];
        report.lag = lag;
        report.te_forward = set.te_forward;
        report.te_backward = set.te_backward;
        report.history_k = history_k;
        set.reports.push_back(report);
    }
    return set;
}

}  // namespace returnlab
