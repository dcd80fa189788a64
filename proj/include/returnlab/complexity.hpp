#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "returnlab/distribution.hpp"
#include "returnlab/horizons.hpp"
#include "returnlab/market_data.hpp"

namespace returnlab {

// All entropies are in nats; normalized variants divide by the maximum
// attainable value for the PMF's nonzero-bin count.

// H = -sum p ln p over nonzero bins, divided by ln k (k nonzero bins);
// 0 for a point mass.
double shannon_entropy_norm(const Pmf& pmf);

// S_q = (1 - sum p^q) / (q - 1), divided by its uniform-PMF maximum
// (1 - k^(1-q)) / (q - 1). Throws InvalidQ for q <= 0 or q == 1.
double tsallis_entropy_norm(const Pmf& pmf, double q);

// Richman-Moorman sample entropy: -ln(A/B) with template pairs compared at
// Chebyshev distance r, self-matches excluded. Throws NoMatches when either
// count is zero (the value is undefined, not fabricated).
double sample_entropy(std::span<const double> x, int m, double r);

// Shannon entropy of ordinal patterns of order d at delay tau, over ln(d!).
// Ties rank by original index order. Throws TooShort.
double permutation_entropy_norm(std::span<const double> x, int order, int delay);

struct EntropyParams {
    std::vector<double> tsallis_q = {0.1, 2.0};
    int sampen_m = 2;
    double sampen_r_factor = 0.2;  // tolerance = factor * population std
    int perm_order = 5;
    int perm_delay = 1;
};

struct EntropyReport {
    double shannon_norm = 0.0;
    std::map<double, double> tsallis_norm;
    std::optional<double> sample_entropy;  // absent when no template matches
    std::string sample_entropy_note;
    double permutation_norm = 0.0;
    EntropyParams params;
    double sampen_r = 0.0;  // resolved absolute tolerance
};

// Shannon/Tsallis act on the FD PMF of the values; Sample/Permutation act on
// the raw sequence.
EntropyReport entropy_report(std::span<const double> x, const EntropyParams& params = {});

struct HurstCurve {
    std::vector<double> qs;
    std::map<double, double> h;       // q -> H(q)
    std::map<double, double> fit_r2;  // q -> regression R^2
};

struct HurstParams {
    std::vector<double> qs = {1, 2, 3, 4, 5};
    int tau_min = 1;
    int tau_max = 19;
};

// Structure-function estimator: K_q(tau) = mean_t |x(t+tau) - x(t)|^q,
// H(q) = slope of ln K_q vs ln tau divided by q. Throws DegenerateSeries
// when any K_q(tau) vanishes (constant series).
HurstCurve generalized_hurst(std::span<const double> x, const HurstParams& params = {});

struct LyapunovParams {
    int dim = 5;
    int delay = 1;
    int neighbors = 0;   // 0 = default 2*dim + 2
    int fit_order = 1;   // 1 = affine local maps, 2 = quadratic
    int theiler = -1;    // -1 = default delay * dim
};

struct LyapunovReport {
    std::vector<double> spectrum;  // descending, nats per time step
    int dim = 0;
    int delay = 0;
    int neighbors = 0;
    int fit_order = 1;
    int theiler = 0;
    double ks_entropy = 0.0;   // sum of positive exponents
    double ky_dimension = 0.0;
    double largest = 0.0;
};

// Sum of the strictly positive exponents (Pesin bound on the KS rate).
double ks_entropy(std::span<const double> spectrum);

// Kaplan-Yorke dimension j + S_j / |lambda_{j+1}| with j the largest index
// whose partial sum is nonnegative; 0 when the largest exponent is negative,
// m when every partial sum is nonnegative. Spectrum must be sorted descending.
double kaplan_yorke_dimension(std::span<const double> spectrum);

// Full spectrum by local tangent-map estimation in delay-embedded space with
// QR reorthonormalization along the trajectory.
LyapunovReport lyapunov_spectrum(std::span<const double> x, const LyapunovParams& params = {});

struct ProfileEntry {
    HorizonSpec spec;
    std::optional<double> shannon_norm;
    std::optional<double> hurst_h2;
    std::optional<double> largest_lyapunov;
    std::string error;  // non-empty when this horizon failed
};

struct ComplexityProfile {
    std::vector<ProfileEntry> entries;
};

// Per-horizon (SNE, H(2), largest Lyapunov) over forward returns. Horizon
// failures are recorded and the remaining horizons still computed.
ComplexityProfile complexity_profile(const DailySeries& series,
                                     const std::vector<HorizonSpec>& ladder,
                                     const LyapunovParams& lyap = {});

}  // namespace returnlab
