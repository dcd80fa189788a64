#pragma once

#include <span>
#include <vector>

#include "returnlab/distribution.hpp"
#include "returnlab/market_data.hpp"

namespace returnlab {

// Joint histogram over per-variable FD bin edges. Counts are kept alongside
// probabilities so marginals reproduce the independently binned PMFs exactly.
struct JointHistogram {
    std::vector<double> x_edges;
    std::vector<double> y_edges;
    std::vector<long long> counts;  // row-major (x bin, y bin)
    size_t n = 0;

    size_t x_bins() const { return x_edges.size() - 1; }
    size_t y_bins() const { return y_edges.size() - 1; }
    long long count_at(size_t i, size_t j) const { return counts[i * y_bins() + j]; }
    double prob_at(size_t i, size_t j) const {
        return static_cast<double>(count_at(i, j)) / static_cast<double>(n);
    }
    std::vector<double> marginal_x() const;
    std::vector<double> marginal_y() const;
};

// FD edges derived from each input independently. Throws LengthMismatch.
JointHistogram joint_histogram(std::span<const double> x, std::span<const double> y);

// Histogram over caller-supplied edges (used for lag loops and the monotone
// transform equivalence property).
JointHistogram joint_histogram_with_edges(std::span<const double> x, std::span<const double> y,
                                          std::vector<double> x_edges,
                                          std::vector<double> y_edges);

// Plugin MI in nats. Terms are accumulated in sorted order so transposing the
// histogram yields the identical value.
double mutual_information(const JointHistogram& joint);

struct MiEstimate {
    double nats = 0.0;
    bool degenerate_marginal = false;  // a one-bin marginal forces MI = 0
};

MiEstimate mutual_information(std::span<const double> x, std::span<const double> y);

// Shannon entropy (nats) of a probability vector.
double entropy_nats(std::span<const double> probs);

// MI / sqrt(Hx * Hy) from one joint histogram; 0 when either marginal
// entropy vanishes.
double normalized_mutual_information(const JointHistogram& joint);

// NMI between driver[t] and target[t+L] for L = 1..max_lag, with bin edges
// shared across lags (computed once from the full series). Throws TooShort
// when the series cannot host max_lag.
std::vector<double> lagged_nmi(std::span<const double> driver, std::span<const double> target,
                               int max_lag);

struct TeEstimate {
    double nats = 0.0;
    bool clipped = false;  // negative plugin estimate clipped to zero
};

// Plugin transfer entropy driver -> target with history length k; each
// variable discretized by its own FD bins, k-step histories become joint
// symbols. Throws LengthMismatch, TooShort, DegenerateMarginal.
TeEstimate transfer_entropy(std::span<const double> driver, std::span<const double> target,
                            int history_k);

struct InfoFlowReport {
    double mi = 0.0;          // nats, unlagged pairing
    double nmi = 0.0;         // at this lag
    int lag = 0;
    double te_forward = 0.0;  // driver -> target
    double te_backward = 0.0;
    int history_k = 1;
};

struct InfoFlowSet {
    std::vector<InfoFlowReport> reports;  // one per lag 1..max_lag
    double mi = 0.0;
    bool mi_degenerate = false;
    double te_forward = 0.0;
    double te_backward = 0.0;
    bool te_forward_clipped = false;
    bool te_backward_clipped = false;
    int history_k = 1;
    int max_lag = 0;
    std::vector<double> driver_edges;
    std::vector<double> target_edges;
};

// Driver = P/E levels, target = next-day percent returns over the covered
// range. Throws NoPeCoverage; a constant P/E surfaces DegenerateMarginal.
InfoFlowSet info_report(const DailySeries& series, int history_k, int max_lag);

}  // namespace returnlab
