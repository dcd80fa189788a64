#include "returnlab/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "returnlab/errors.hpp"
#include "returnlab/stats.hpp"

namespace returnlab {

double shannon_entropy_norm(const Pmf& pmf) {
    size_t nonzero = 0;
    double h = 0.0;
    for (double p : pmf.probs) {
        if (p > 0.0) {
            ++nonzero;
            h -= p * std::log(p);
        }
    }
    if (nonzero <= 1) return 0.0;
    return h / std::log(static_cast<double>(nonzero));
}

double tsallis_entropy_norm(const Pmf& pmf, double q) {
    if (q <= 0.0 || q == 1.0) throw InvalidQ("tsallis: q must be positive and != 1");
    size_t nonzero = 0;
    double sum_pq = 0.0;
    for (double p : pmf.probs) {
        if (p > 0.0) {
            ++nonzero;
            sum_pq += std::pow(p, q);
        }
    }
    if (nonzero <= 1) return 0.0;
    const double k = static_cast<double>(nonzero);
    const double sq = (1.0 - sum_pq) / (q - 1.0);
    const double sq_max = (1.0 - std::pow(k, 1.0 - q)) / (q - 1.0);
    return sq / sq_max;
}

double sample_entropy(std::span<const double> x, int m, double r) {
    if (m < 1) throw Error("sample_entropy: m must be >= 1");
    if (!(r > 0.0)) throw Error("sample_entropy: r must be > 0");
    const auto n = static_cast<ptrdiff_t>(x.size());
    if (n < m + 2) throw TooShort("sample_entropy: need length >= m + 2");

    // Template pairs over the first n - m starting points so every m-template
    // has a matching (m+1)-template.
    long long count_m = 0, count_m1 = 0;
    const ptrdiff_t last = n - m - 1;
    for (ptrdiff_t i = 0; i <= last; ++i) {
        for (ptrdiff_t j = i + 1; j <= last; ++j) {
            bool match = true;
            for (int k = 0; k < m; ++k) {
                if (std::abs(x[i + k] - x[j + k]) > r) {
                    match = false;
                    break;
                }
            }
            if (!match) continue;
            ++count_m;
            if (std::abs(x[i + m] - x[j + m]) <= r) ++count_m1;
        }
    }
    if (count_m == 0 || count_m1 == 0) {
        throw NoMatches("sample_entropy: undefined (A=" + std::to_string(count_m1) +
                        ", B=" + std::to_string(count_m) + ")");
    }
    return -std::log(static_cast<double>(count_m1) / static_cast<double>(count_m));
}

double permutation_entropy_norm(std::span<const double> x, int order, int delay) {
    if (order < 2) throw Error("permutation_entropy: order must be >= 2");
    if (delay < 1) throw Error("permutation_entropy: delay must be >= 1");
    const auto n = static_cast<ptrdiff_t>(x.size());
    const ptrdiff_t span = static_cast<ptrdiff_t>(order - 1) * delay;
    if (n < span + 1) throw TooShort("permutation_entropy: series too short for order/delay");

    std::map<std::vector<int>, size_t> counts;
    std::vector<int> idx(static_cast<size_t>(order));
    const ptrdiff_t windows = n - span;
    for (ptrdiff_t t = 0; t < windows; ++t) {
        std::iota(idx.begin(), idx.end(), 0);
        // stable sort by value keeps ties in original index order
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
            return x[t + static_cast<ptrdiff_t>(a) * delay] <
                   x[t + static_cast<ptrdiff_t>(b) * delay];
        });
        ++counts[idx];
    }

    double h = 0.0;
    for (const auto& [pattern, c] : counts) {
        const double p = static_cast<double>(c) / static_cast<double>(windows);
        h -= p * std::log(p);
    }
    double log_factorial = 0.0;
    for (int k = 2; k <= order; ++k) log_factorial += std::log(static_cast<double>(k));
    return h / log_factorial;
}

EntropyReport entropy_report(std::span<const double> x, const EntropyParams& params) {
    if (x.size() < 2) throw TooShort("entropy_report: need at least 2 observations");
    EntropyReport report;
    report.params = params;

    const Pmf pmf = build_pmf(x);
    report.shannon_norm = shannon_entropy_norm(pmf);
    for (double q : params.tsallis_q) {
        report.tsallis_norm[q] = tsallis_entropy_norm(pmf, q);
    }

    report.sampen_r = params.sampen_r_factor * stddev_population(x);
    if (report.sampen_r > 0.0) {
        try {
            report.sample_entropy = sample_entropy(x, params.sampen_m, report.sampen_r);
        } catch (const NoMatches& e) {
            report.sample_entropy_note = e.what();
        }
    } else {
        report.sample_entropy = 0.0;  // constant series: every template matches
    }
    report.permutation_norm = permutation_entropy_norm(x, params.perm_order, params.perm_delay);
    return report;
}

HurstCurve generalized_hurst(std::span<const double> x, const HurstParams& params) {
    if (params.tau_min < 1 || params.tau_max < params.tau_min) {
        throw Error("generalized_hurst: bad tau range");
    }
    const auto n = static_cast<ptrdiff_t>(x.size());
    if (n < 4 * params.tau_max) {
        throw TooShort("generalized_hurst: need length >= 4 * max tau");
    }
    for (double q : params.qs) {
        if (!(q > 0.0)) throw Error("generalized_hurst: orders must be positive");
    }

    const int ntau = params.tau_max - params.tau_min + 1;
    std::vector<double> log_tau(static_cast<size_t>(ntau));
    for (int i = 0; i < ntau; ++i) {
        log_tau[static_cast<size_t>(i)] = std::log(static_cast<double>(params.tau_min + i));
    }

    HurstCurve curve;
    curve.qs = params.qs;
    std::vector<double> log_kq(static_cast<size_t>(ntau));
    for (double q : params.qs) {
        for (int i = 0; i < ntau; ++i) {
            const ptrdiff_t tau = params.tau_min + i;
            double acc = 0.0;
            for (ptrdiff_t t = 0; t + tau < n; ++t) {
                acc += std::pow(std::abs(x[t + tau] - x[t]), q);
            }
            const double kq = acc / static_cast<double>(n - tau);
            if (!(kq > 0.0)) {
                throw DegenerateSeries("generalized_hurst: structure function vanishes");
            }
            log_kq[static_cast<size_t>(i)] = std::log(kq);
        }
        const LinearFit fit = fit_line(log_tau, log_kq);
        curve.h[q] = fit.slope / q;
        curve.fit_r2[q] = fit.r2;
    }
    return curve;
}

double ks_entropy(std::span<const double> spectrum) {
    double sum = 0.0;
    for (double lam : spectrum) {
        if (lam > 0.0) sum += lam;
    }
    return sum;
}

double kaplan_yorke_dimension(std::span<const double> spectrum) {
    if (spectrum.empty()) return 0.0;
    if (spectrum.front() < 0.0) return 0.0;
    double partial = 0.0;
    for (size_t i = 0; i < spectrum.size(); ++i) {
        const double next = partial + spectrum[i];
        if (next < 0.0) {
            // i is the first index whose inclusion turns the sum negative
            return static_cast<double>(i) + partial / std::abs(spectrum[i]);
        }
        partial = next;
    }
    return static_cast<double>(spectrum.size());  // all partial sums nonnegative
}

namespace {

// --- k-nearest-neighbor search over the embedded points -------------------

// Median-split kd-tree on row-major points. Ties split by index so builds
// and queries are fully deterministic.
class KdTree {
public:
    KdTree(const std::vector<double>& coords, size_t dim, size_t count)
        : coords_(coords), dim_(dim), order_(count) {
        std::iota(order_.begin(), order_.end(), size_t{0});
        if (count > 0) build(0, count, 0);
    }

    // k nearest points to point `t`, excluding indices within `theiler` of t.
    // Distances are Euclidean; results sorted nearest-first.
    std::vector<size_t> knn(size_t t, size_t k, size_t theiler) const {
        Heap heap;
        search(0, order_.size(), 0, t, k, theiler, heap);
        std::vector<std::pair<double, size_t>> hits;
        hits.reserve(heap.size());
        while (!heap.empty()) {
            hits.push_back(heap.top());
            heap.pop();
        }
        std::sort(hits.begin(), hits.end());
        std::vector<size_t> out;
        out.reserve(hits.size());
        for (const auto& [d2, idx] : hits) out.push_back(idx);
        return out;
    }

private:
    using Heap = std::priority_queue<std::pair<double, size_t>>;  // max-heap on dist^2

    const double* point(size_t idx) const { return coords_.data() + idx * dim_; }

    void build(size_t lo, size_t hi, size_t depth) {
        if (hi - lo <= 1) return;
        const size_t axis = depth % dim_;
        const size_t mid = (lo + hi) / 2;
        std::nth_element(order_.begin() + static_cast<ptrdiff_t>(lo),
                         order_.begin() + static_cast<ptrdiff_t>(mid),
                         order_.begin() + static_cast<ptrdiff_t>(hi),
                         [this, axis](size_t a, size_t b) {
                             const double va = point(a)[axis], vb = point(b)[axis];
                             return va < vb || (va == vb && a < b);
                         });
        build(lo, mid, depth + 1);
        build(mid + 1, hi, depth + 1);
    }

    double dist2(size_t a, size_t b) const {
        const double* pa = point(a);
        const double* pb = point(b);
        double acc = 0.0;
        for (size_t d = 0; d < dim_; ++d) {
            const double diff = pa[d] - pb[d];
            acc += diff * diff;
        }
        return acc;
    }

    void consider(size_t idx, size_t t, size_t k, size_t theiler, Heap& heap) const {
        const size_t gap = idx > t ? idx - t : t - idx;
        if (gap <= theiler) return;  // Theiler window, also drops idx == t
        const double d2 = dist2(idx, t);
        if (heap.size() < k) {
            heap.emplace(d2, idx);
        } else if (d2 < heap.top().first ||
                   (d2 == heap.top().first && idx < heap.top().second)) {
            heap.pop();
            heap.emplace(d2, idx);
        }
    }

    void search(size_t lo, size_t hi, size_t depth, size_t t, size_t k, size_t theiler,
                Heap& heap) const {
        if (lo >= hi) return;
        const size_t mid = (lo + hi) / 2;
        const size_t node = order_[mid];
        consider(node, t, k, theiler, heap);
        if (hi - lo == 1) return;
        const size_t axis = depth % dim_;
        const double delta = point(t)[axis] - point(node)[axis];
        const bool left_first = delta < 0.0;
        const auto visit_left = [&] { search(lo, mid, depth + 1, t, k, theiler, heap); };
        const auto visit_right = [&] { search(mid + 1, hi, depth + 1, t, k, theiler, heap); };
        if (left_first) visit_left();
        else visit_right();
        if (heap.size() < k || delta * delta <= heap.top().first) {
            if (left_first) visit_right();
            else visit_left();
        }
    }

    const std::vector<double>& coords_;
    size_t dim_;
    std::vector<size_t> order_;
};

// Gaussian elimination with partial pivoting for the small normal-equation
// systems of the local map fits.
bool solve_inplace(std::vector<double>& a, std::vector<double>& b, size_t n) {
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        for (size_t row = col + 1; row < n; ++row) {
            if (std::abs(a[row * n + col]) > std::abs(a[pivot * n + col])) pivot = row;
        }
        if (a[pivot * n + col] == 0.0) return false;
        if (pivot != col) {
            for (size_t j = 0; j < n; ++j) std::swap(a[col * n + j], a[pivot * n + j]);
            std::swap(b[col], b[pivot]);
        }
        const double inv = 1.0 / a[col * n + col];
        for (size_t row = col + 1; row < n; ++row) {
            const double f = a[row * n + col] * inv;
            if (f == 0.0) continue;
            for (size_t j = col; j < n; ++j) a[row * n + j] -= f * a[col * n + j];
            b[row] -= f * b[col];
        }
    }
    for (size_t row = n; row-- > 0;) {
        double acc = b[row];
        for (size_t j = row + 1; j < n; ++j) acc -= a[row * n + j] * b[j];
        b[row] = acc / a[row * n + row];
    }
    return true;
}

size_t feature_count(int order, size_t dim) {
    size_t nf = 1 + dim;
    if (order >= 2) nf += dim * (dim + 1) / 2;
    return nf;
}

void fill_features(std::span<const double> delta, int order, std::vector<double>& phi) {
    phi.clear();
    phi.push_back(1.0);
    for (double d : delta) phi.push_back(d);
    if (order >= 2) {
        for (size_t i = 0; i < delta.size(); ++i) {
            for (size_t j = i; j < delta.size(); ++j) {
                phi.push_back(delta[i] * delta[j]);
            }
        }
    }
}

}  // namespace

LyapunovReport lyapunov_spectrum(std::span<const double> x, const LyapunovParams& params) {
    const size_t dim = static_cast<size_t>(params.dim);
    const size_t delay = static_cast<size_t>(params.delay);
    if (params.dim < 1 || params.delay < 1) throw Error("lyapunov: dim and delay must be >= 1");
    if (params.fit_order != 1 && params.fit_order != 2) {
        throw Error("lyapunov: fit_order must be 1 or 2");
    }
    const size_t neighbors =
        params.neighbors > 0 ? static_cast<size_t>(params.neighbors) : 2 * dim + 2;
    const size_t theiler =
        params.theiler >= 0 ? static_cast<size_t>(params.theiler) : delay * dim;
    const size_t nf = feature_count(params.fit_order, dim);
    if (neighbors < nf) {
        throw Error("lyapunov: neighbor count " + std::to_string(neighbors) +
                    " below the " + std::to_string(nf) + " needed by the local fit");
    }

    const size_t n = x.size();
    if (n < 50 * dim) throw TooShort("lyapunov: need length >= 50 * dim");
    const auto [min_it, max_it] = std::minmax_element(x.begin(), x.end());
    if (!(*min_it < *max_it)) throw DegenerateSeries("lyapunov: constant series");

    // Delay embedding; only points with a successor act as map samples.
    const size_t embedded = n - (dim - 1) * delay;
    if (embedded < 2) throw TooShort("lyapunov: embedding leaves too few points");
    const size_t usable = embedded - 1;
    if (usable <= neighbors + 2 * theiler) {
        throw InsufficientNeighbors("lyapunov: not enough embedded points for " +
                                    std::to_string(neighbors) + " neighbors");
    }
    std::vector<double> coords(usable * dim);
    for (size_t t = 0; t < usable; ++t) {
        for (size_t d = 0; d < dim; ++d) coords[t * dim + d] = x[t + d * delay];
    }
    const auto at = [&](size_t t, size_t d) -> double { return x[t + d * delay]; };

    const KdTree tree(coords, dim, usable);

    std::vector<double> q(dim * dim, 0.0);  // orthonormal frame, column-major
    for (size_t d = 0; d < dim; ++d) q[d * dim + d] = 1.0;
    std::vector<double> acc(dim, 0.0);

    std::vector<double> phi;
    std::vector<double> delta(dim);
    std::vector<double> gram(nf * nf);
    std::vector<double> rhs(nf);
    std::vector<double> jac(dim * dim);
    std::vector<double> z(dim * dim);
    std::vector<std::vector<double>> features;
    size_t steps = 0;

    for (size_t t = 0; t + 1 < usable; ++t) {
        const auto nn = tree.knn(t, neighbors, theiler);
        if (nn.size() < nf) {
            throw InsufficientNeighbors("lyapunov: only " + std::to_string(nn.size()) +
                                        " neighbors available at step " + std::to_string(t));
        }

        // Normalize displacements by the neighborhood radius so the ridge
        // term stays negligible against every feature scale.
        double radius = 0.0;
        for (size_t s : nn) {
            for (size_t d = 0; d < dim; ++d) {
                radius = std::max(radius, std::abs(at(s, d) - at(t, d)));
            }
        }
        if (!(radius > 0.0)) {
            throw InsufficientNeighbors("lyapunov: degenerate neighborhood at step " +
                                        std::to_string(t));
        }
        features.clear();
        for (size_t s : nn) {
            for (size_t d = 0; d < dim; ++d) delta[d] = (at(s, d) - at(t, d)) / radius;
            fill_features(delta, params.fit_order, phi);
            features.push_back(phi);
        }

        // One ridge-regularized normal-equation system per output dimension.
        std::fill(gram.begin(), gram.end(), 0.0);
        for (const auto& f : features) {
            for (size_t a = 0; a < nf; ++a) {
                for (size_t b = a; b < nf; ++b) gram[a * nf + b] += f[a] * f[b];
            }
        }
        for (size_t a = 0; a < nf; ++a) {
            for (size_t b = 0; b < nf; ++b) {
                if (b < a) gram[a * nf + b] = gram[b * nf + a];
            }
        }
        double trace = 0.0;
        for (size_t a = 0; a < nf; ++a) trace += gram[a * nf + a];
        const double ridge = 1e-12 * trace / static_cast<double>(nf) +
                             std::numeric_limits<double>::min();
        for (size_t out = 0; out < dim; ++out) {
            std::vector<double> g = gram;
            for (size_t a = 0; a < nf; ++a) g[a * nf + a] += ridge;
            std::fill(rhs.begin(), rhs.end(), 0.0);
            for (size_t s_idx = 0; s_idx < nn.size(); ++s_idx) {
                const size_t s = nn[s_idx];
                const double y = at(s + 1, out) - at(t + 1, out);
                for (size_t a = 0; a < nf; ++a) rhs[a] += features[s_idx][a] * y;
            }
            if (!solve_inplace(g, rhs, nf)) {
                throw InsufficientNeighbors("lyapunov: singular local fit at step " +
                                            std::to_string(t));
            }
            // undo the radius scaling on the linear coefficients
            for (size_t in = 0; in < dim; ++in) jac[out * dim + in] = rhs[1 + in] / radius;
        }

        // z = J * q, then modified Gram-Schmidt; diagonal growth accumulates.
        for (size_t col = 0; col < dim; ++col) {
            for (size_t row = 0; row < dim; ++row) {
                double v = 0.0;
                for (size_t k = 0; k < dim; ++k) v += jac[row * dim + k] * q[col * dim + k];
                z[col * dim + row] = v;
            }
        }
        for (size_t col = 0; col < dim; ++col) {
            for (size_t prev = 0; prev < col; ++prev) {
                double proj = 0.0;
                for (size_t row = 0; row < dim; ++row) {
                    proj += z[prev * dim + row] * z[col * dim + row];
                }
                for (size_t row = 0; row < dim; ++row) {
                    z[col * dim + row] -= proj * z[prev * dim + row];
                }
            }
            double norm = 0.0;
            for (size_t row = 0; row < dim; ++row) norm += z[col * dim + row] * z[col * dim + row];
            norm = std::sqrt(norm);
            const double safe = std::max(norm, 1e-150);
            acc[col] += std::log(safe);
            for (size_t row = 0; row < dim; ++row) z[col * dim + row] /= safe;
        }
        q = z;
        ++steps;
    }

    LyapunovReport report;
    report.dim = params.dim;
    report.delay = params.delay;
    report.neighbors = static_cast<int>(neighbors);
    report.fit_order = params.fit_order;
    report.theiler = static_cast<int>(theiler);
    report.spectrum.resize(dim);
    for (size_t d = 0; d < dim; ++d) report.spectrum[d] = acc[d] / static_cast<double>(steps);
    std::sort(report.spectrum.begin(), report.spectrum.end(), std::greater<>());
    report.ks_entropy = ks_entropy(report.spectrum);
    report.ky_dimension = kaplan_yorke_dimension(report.spectrum);
    report.largest = report.spectrum.front();
    return report;
}

ComplexityProfile complexity_profile(const DailySeries& series,
                                     const std::vector<HorizonSpec>& ladder,
                                     const LyapunovParams& lyap) {
    ComplexityProfile profile;
    for (const auto& spec : ladder) {
        ProfileEntry entry;
        entry.spec = spec;
        try {
            const auto set = forward_returns(series, spec);
            const auto [min_it, max_it] = std::minmax_element(set.returns.begin(),
                                                              set.returns.end());
            if (!(*min_it < *max_it)) {
                throw DegenerateSeries("constant returns at horizon " + spec.label);
            }
            entry.shannon_norm = shannon_entropy_norm(build_pmf(set.returns));
            try {
                HurstParams hp;
                hp.qs = {2.0};
                const auto curve = generalized_hurst(set.returns, hp);
                entry.hurst_h2 = curve.h.at(2.0);
            } catch (const Error& e) {
                entry.error = e.what();
            }
            try {
                entry.largest_lyapunov = lyapunov_spectrum(set.returns, lyap).largest;
            } catch (const Error& e) {
                if (!entry.error.empty()) entry.error += "; ";
                entry.error += e.what();
            }
        } catch (const Error& e) {
            entry.error = e.what();
        }
        profile.entries.push_back(std::move(entry));
    }
    return profile;
}

}  // namespace returnlab
