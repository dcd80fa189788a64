#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace returnlab {

double mean(std::span<const double> xs);

// Population standard deviation (divide by n).
double stddev_population(std::span<const double> xs);

// Linear-interpolation quantile on order statistics (the "type 7"
// convention): h = (n-1)p, result = x[floor(h)] + frac(h) * (x[floor(h)+1] - x[floor(h)]).
// Input need not be sorted.
double quantile_type7(std::span<const double> xs, double p);

double interquartile_range(std::span<const double> xs);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

// Ordinary least squares of y on x. Requires xs.size() == ys.size() >= 2
// and non-constant xs.
LinearFit fit_line(std::span<const double> xs, std::span<const double> ys);

}  // namespace returnlab
