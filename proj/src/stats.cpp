#include "returnlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace returnlab {

double mean(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("mean: empty input");
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double stddev_population(std::span<const double> xs) {
    const double m = mean(xs);
    double acc = 0.0;
    for (double x : xs) acc += (x - m) * (x - m);
    return std::sqrt(acc / static_cast<double>(xs.size()));
}

double quantile_type7(std::span<const double> xs, double p) {
    if (xs.empty()) throw std::invalid_argument("quantile: empty input");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("quantile: p outside [0,1]");
    std::vector<double> sorted(xs.begin(), xs.end());
    std::sort(sorted.begin(), sorted.end());
    const double h = static_cast<double>(sorted.size() - 1) * p;
    const auto lo = static_cast<size_t>(h);
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double interquartile_range(std::span<const double> xs) {
    std::vector<double> sorted(xs.begin(), xs.end());
    std::sort(sorted.begin(), sorted.end());
    const auto q = [&sorted](double p) {
        const double h = static_cast<double>(sorted.size() - 1) * p;
        const auto lo = static_cast<size_t>(h);
        if (lo + 1 >= sorted.size()) return sorted.back();
        return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
    };
    return q(0.75) - q(0.25);
}

LinearFit fit_line(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("fit_line: length mismatch");
    if (xs.size() < 2) throw std::invalid_argument("fit_line: need at least 2 points");
    const auto n = static_cast<double>(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
        syy += ys[i] * ys[i];
    }
    const double den = sxx - sx * sx / n;
    if (den <= 0.0) throw std::invalid_argument("fit_line: constant x");
    LinearFit fit;
    fit.slope = (sxy - sx * sy / n) / den;
    fit.intercept = (sy - fit.slope * sx) / n;
    const double ss_tot = syy - sy * sy / n;
    if (ss_tot > 0.0) {
        const double ss_reg = fit.slope * (sxy - sx * sy / n);
        fit.r2 = ss_reg / ss_tot;
    } else {
        fit.r2 = 1.0;  // y constant: the fit reproduces it exactly
    }
    return fit;
}

}  // namespace returnlab
