// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Criterion 8 only runs when RETURNLAB_NSE_CSV points at a
// real dataset; it is reported SKIP otherwise.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <vector>

#include "helpers.hpp"
#include "oracles.hpp"
#include "returnlab/cli.hpp"
#include "returnlab/complexity.hpp"
#include "returnlab/distribution.hpp"
#include "returnlab/errors.hpp"
#include "returnlab/horizons.hpp"
#include "returnlab/infoflow.hpp"
#include "returnlab/market_data.hpp"
#include "returnlab/report.hpp"

using namespace returnlab;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void report(int criterion, const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": " << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// --- criterion 1: spectrum identities --------------------------------------

void criterion_spectrum() {
    const std::vector<double> spectrum = {0.30, 0.11, -0.08, -0.28, -0.74};
    const auto start = Clock::now();
    const double ks = ks_entropy(spectrum);
    const double ky = kaplan_yorke_dimension(spectrum);
    const double elapsed = ms_since(start);
    const bool ok = std::abs(ks - 0.41) <= 1e-12 && std::abs(ky - 4.0676) <= 5e-4 &&
                    elapsed < 1.0;
    report(1, "spectrum identities",
           ok, "h_KS=" + fmt(ks) + ", D_KY=" + fmt(ky) + ", " + fmt(elapsed) + " ms");
}

// --- criterion 2: entropy analytics ----------------------------------------

Pmf uniform_pmf(size_t k) {
    Pmf pmf;
    for (size_t i = 0; i <= k; ++i) pmf.edges.push_back(static_cast<double>(i));
    for (size_t i = 0; i < k; ++i) {
        pmf.mids.push_back(static_cast<double>(i) + 0.5);
        pmf.probs.push_back(1.0 / static_cast<double>(k));
    }
    pmf.n = k;
    return pmf;
}

Pmf point_mass_pmf() {
    Pmf pmf;
    pmf.edges = {0.0, 1.0, 2.0, 3.0};
    pmf.mids = {0.5, 1.5, 2.5};
    pmf.probs = {0.0, 1.0, 0.0};
    pmf.n = 10;
    return pmf;
}

void criterion_entropy() {
    const auto start = Clock::now();
    bool ok = true;
    std::string detail;
    for (size_t k : {2, 8, 64}) {
        const auto uni = uniform_pmf(k);
        if (std::abs(shannon_entropy_norm(uni) - 1.0) > 1e-12) ok = false;
        for (double q : {0.1, 2.0}) {
            if (std::abs(tsallis_entropy_norm(uni, q) - 1.0) > 1e-12) ok = false;
        }
    }
    const auto point = point_mass_pmf();
    if (shannon_entropy_norm(point) != 0.0) ok = false;
    for (double q : {0.1, 2.0}) {
        if (tsallis_entropy_norm(point, q) != 0.0) ok = false;
    }
    const Pmf mixed = [] {
        Pmf pmf;
        pmf.edges = {0, 1, 2, 3, 4};
        pmf.mids = {0.5, 1.5, 2.5, 3.5};
        pmf.probs = {0.375, 0.125, 0.3, 0.2};
        pmf.n = 40;
        return pmf;
    }();
    const double limit_gap =
        std::abs(tsallis_entropy_norm(mixed, 1.0001) - shannon_entropy_norm(mixed));
    if (limit_gap > 1e-3) ok = false;
    const double elapsed = ms_since(start);
    if (elapsed >= 1000.0) ok = false;
    report(2, "entropy analytics", ok,
           "limit gap=" + fmt(limit_gap) + ", " + fmt(elapsed) + " ms");
}

// --- criterion 3: Hurst oracle ---------------------------------------------

void criterion_hurst() {
    const auto start = Clock::now();
    bool ok = true;
    std::string detail;
    HurstParams params;
    params.qs = {2.0};
    for (double target : {0.3, 0.5, 0.7}) {
        double mean_h = 0.0;
        for (uint64_t seed = 1; seed <= 10; ++seed) {
            const auto path = oracle::fbm(16384, target, seed * 7919);
            mean_h += generalized_hurst(path, params).h.at(2.0);
        }
        mean_h /= 10.0;
        if (std::abs(mean_h - target) > 0.05) ok = false;
        detail += "H=" + fmt(target) + "->" + fmt(mean_h) + " ";
    }
    const double elapsed = ms_since(start);
    if (elapsed >= 30000.0) ok = false;
    report(3, "fBm Hurst oracle", ok, detail + fmt(elapsed) + " ms");
}

// --- criterion 4: Lyapunov oracles ------------------------------------------

void criterion_lyapunov() {
    const auto start = Clock::now();
    bool ok = true;

    const auto logistic = oracle::logistic_orbit(20000, 4.0, 0.2345);
    LyapunovParams lp1;
    lp1.dim = 1;
    lp1.fit_order = 2;
    const double lle = lyapunov_spectrum(logistic.x, lp1).largest;
    if (std::abs(lle - std::log(2.0)) > 0.02) ok = false;

    const auto henon = oracle::henon_orbit(50000, 1.4, 0.3);
    LyapunovParams lp2;
    lp2.dim = 2;
    lp2.fit_order = 2;
    lp2.neighbors = 40;
    const auto report2 = lyapunov_spectrum(henon.x, lp2);
    const double sum = report2.spectrum[0] + report2.spectrum[1];
    if (std::abs(sum - std::log(0.3)) > 0.05) ok = false;
    if (std::abs(report2.spectrum[0] - 0.419) > 0.03) ok = false;
    if (std::abs(henon.lambda1 + henon.lambda2 - std::log(0.3)) > 1e-9) ok = false;

    const double elapsed = ms_since(start);
    if (elapsed >= 60000.0) ok = false;
    report(4, "Lyapunov oracles", ok,
           "logistic=" + fmt(lle) + " vs ln2=" + fmt(std::log(2.0)) +
               ", henon l1=" + fmt(report2.spectrum[0]) + ", sum=" + fmt(sum) +
               " vs ln0.3=" + fmt(std::log(0.3)) + ", " + fmt(elapsed) + " ms");
}

// --- criterion 5: transfer-entropy directionality ---------------------------

void criterion_te() {
    const auto start = Clock::now();
    bool ok = true;
    std::mt19937_64 rng(424242);
    std::uniform_int_distribution<int> coin(0, 1);
    const size_t n = 10000;
    std::vector<double> x(n), y(n);
    int prev = coin(rng);
    for (size_t t = 0; t < n; ++t) {
        y[t] = prev;
        prev = coin(rng);
        x[t] = prev;
    }
    const double fwd = transfer_entropy(x, y, 1).nats;
    const double bwd = transfer_entropy(y, x, 1).nats;
    if (std::abs(fwd - std::log(2.0)) > 0.02) ok = false;
    if (bwd > 0.02) ok = false;

    std::vector<double> u(n), v(n);
    for (size_t t = 0; t < n; ++t) {
        u[t] = coin(rng);
        v[t] = coin(rng);
    }
    const double ind_fwd = transfer_entropy(u, v, 1).nats;
    const double ind_bwd = transfer_entropy(v, u, 1).nats;
    if (ind_fwd > 0.02 || ind_bwd > 0.02) ok = false;

    const double elapsed = ms_since(start);
    if (elapsed >= 10000.0) ok = false;
    report(5, "transfer-entropy directionality", ok,
           "coupled fwd=" + fmt(fwd) + ", bwd=" + fmt(bwd) + ", independent=" + fmt(ind_fwd) +
               "/" + fmt(ind_bwd) + ", " + fmt(elapsed) + " ms");
}

// --- criterion 6: distribution identities ------------------------------------

void criterion_distribution() {
    bool ok = true;
    const std::vector<double> ladder = {1, 2, 3, 4, 5, 6, 7, 8};
    const double width = fd_bin_width(ladder);
    if (width != 3.5) ok = false;

    const std::vector<double> xs = {-1, -1, 1, 1, 2, 2, 2, 2};
    const auto pmf = build_pmf_with_edges(xs, {-1.5, -0.5, 0.5, 1.5, 2.5});
    const auto st = asymmetry(pmf);
    if (st.rrr_magnitude != 5.0 || st.rrr_probability != 3.0) ok = false;

    const double cagr = to_cagr(100.0, 2);
    if (std::abs(cagr - 41.4214) > 1e-4) ok = false;

    report(6, "distribution identities", ok,
           "fd=" + fmt(width) + ", RRRs=" + fmt(st.rrr_magnitude) + "/" +
               fmt(st.rrr_probability) + ", CAGR=" + fmt(cagr));
}

// --- criterion 7: property suite ---------------------------------------------

struct PropertyCheck {
    std::string name;
    std::function<bool()> body;
};

bool approx(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::vector<PropertyCheck> property_suite();

void criterion_properties() {
    const auto checks = property_suite();
    size_t passed = 0;
    std::string first_failure;
    for (const auto& check : checks) {
        bool ok = false;
        try {
            ok = check.body();
        } catch (const std::exception& e) {
            first_failure = check.name + " threw: " + e.what();
        }
        if (ok) {
            ++passed;
        } else if (first_failure.empty()) {
            first_failure = check.name;
        }
    }
    const bool ok = passed == checks.size();
    report(7, "module property suite", ok,
           std::to_string(passed) + "/" + std::to_string(checks.size()) +
               (ok ? " properties pass" : " first failure: " + first_failure));
}

// --- criterion 8: conditional data tier ---------------------------------------

void criterion_conditional_tier() {
    const char* path = std::getenv("RETURNLAB_NSE_CSV");
    if (path == nullptr || std::string(path).empty()) {
        std::cout << "SKIP criterion 8: conditional data tier (set RETURNLAB_NSE_CSV to a "
                     "date,close,pe CSV to enable)\n";
        return;
    }
    bool ok = true;
    std::string detail;
    const fs::path out = fs::temp_directory_path() / "returnlab_acceptance_nse";
    fs::remove_all(out);
    const int code = run({"report-all", "--in", path, "--out", out.string()});
    if (code != 0) {
        ok = false;
        detail = "report-all exit " + std::to_string(code);
    } else {
        for (const char* name : {"cagr.csv", "hurst.csv", "conditional.csv"}) {
            if (!fs::exists(out / name)) {
                ok = false;
                detail += std::string(name) + " missing ";
            }
        }
        std::ifstream in(out / "conditional.json");
        std::ostringstream buf;
        buf << in.rdbuf();
        const Json cond = Json::parse(buf.str());
        bool found = false;
        for (const auto& cell : cond["cells"]) {
            if (cell["pe_band"] == "13-14" && cell["years"] == 1) {
                found = true;
                const double prp = cell["stats"]["prp"].get<double>();
                const double nrp = cell["stats"]["nrp"].get<double>();
                if (prp + nrp > 1.0 + 1e-9 || nrp >= 0.1) {
                    ok = false;
                    detail += "band 13-14 1y: prp=" + fmt(prp) + " nrp=" + fmt(nrp);
                }
            }
        }
        if (!found) detail += "band 13-14 1y absent from data; emission checks only";
    }
    report(8, "conditional data tier", ok, detail);
}

int usable_failures() { return failures; }

// ============================ property bodies ============================

std::vector<PropertyCheck> property_suite() {
    std::vector<PropertyCheck> checks;

    // market_data: csv round trip
    checks.push_back({"market_data/csv-round-trip", [] {
        const auto s = testutil::random_walk_series(500, 77, true);
        const auto back = ingest_csv_text(to_csv(s));
        if (back.size() != s.size()) return false;
        for (size_t i = 0; i < s.size(); ++i) {
            if (back.dates[i] != s.dates[i] || back.close[i] != s.close[i] ||
                back.pe[i] != s.pe[i]) {
                return false;
            }
        }
        return true;
    }});
    checks.push_back({"market_data/eps-recovers-close", [] {
        const auto s = testutil::random_walk_series(800, 78, true);
        const auto eps = eps_proxy(s);
        const auto start = *s.pe_start();
        for (size_t i = 0; i < eps.size(); ++i) {
            const double close = s.close[start + i];
            const double back = eps.eps[i] * *s.pe[start + i];
            const double ulp = std::nextafter(close, 1e308) - close;
            if (std::abs(back - close) > ulp) return false;
        }
        return true;
    }});
    checks.push_back({"market_data/subset-idempotent", [] {
        const auto s = testutil::random_walk_series(300, 79, false);
        const auto once = subset_by_date(s, s.dates[20], s.dates[250]);
        const auto twice = subset_by_date(once, s.dates[20], s.dates[250]);
        return once.dates == twice.dates && once.close == twice.close;
    }});

    // horizons
    checks.push_back({"horizons/cagr-identity-at-one-year", [] {
        for (double r : {-55.5, -1.0, 0.0, 0.1, 10.67, 311.99}) {
            if (to_cagr(r, 1) != r) return false;
        }
        return true;
    }});
    checks.push_back({"horizons/cagr-compounding-round-trip", [] {
        for (double r : {-80.0, -5.0, 3.0, 42.0, 700.0}) {
            for (int n : {1, 2, 5, 12}) {
                const double c = to_cagr(r, n);
                const double back = std::pow(1.0 + c / 100.0, n);
                if (std::abs(back - (1.0 + r / 100.0)) > 1e-9 * std::abs(1.0 + r / 100.0)) {
                    return false;
                }
            }
        }
        return true;
    }});
    checks.push_back({"horizons/shift-equivariance", [] {
        const auto base = testutil::random_walk_series(300, 80, false);
        std::vector<double> padded(base.close);
        padded.insert(padded.begin(), {90.0, 91.0});
        const auto shifted = testutil::make_series(padded);
        const HorizonSpec spec{"1w", 5};
        const auto a = forward_returns(base, spec);
        const auto b = forward_returns(shifted, spec);
        for (size_t t = 0; t < a.returns.size(); ++t) {
            if (b.returns[t + 2] != a.returns[t]) return false;
        }
        return true;
    }});
    checks.push_back({"horizons/extrema-bracket-samples", [] {
        const auto s = testutil::random_walk_series(700, 81, false);
        for (int days : {1, 21, 252}) {
            const auto set = forward_returns(s, {std::to_string(days) + "d", days});
            const auto summary = horizon_summary(set, build_pmf(set.returns));
            for (double r : set.returns) {
                if (r < summary.min || r > summary.max) return false;
            }
            if (summary.mode < summary.min || summary.mode > summary.max) return false;
        }
        return true;
    }});

    // distribution
    checks.push_back({"distribution/pmf-normalization", [] {
        std::mt19937_64 rng(82);
        std::normal_distribution<double> gauss(0.0, 2.0);
        for (int rep = 0; rep < 20; ++rep) {
            std::vector<double> xs;
            const size_t n = 5 + static_cast<size_t>(rng() % 3000);
            for (size_t i = 0; i < n; ++i) xs.push_back(gauss(rng));
            const auto pmf = build_pmf(xs);
            double total = 0.0;
            for (double p : pmf.probs) total += p;
            if (std::abs(total - 1.0) > 1e-12) return false;
        }
        return true;
    }});
    checks.push_back({"distribution/sign-partition", [] {
        std::mt19937_64 rng(83);
        std::normal_distribution<double> gauss(0.1, 1.5);
        std::vector<double> xs;
        for (int i = 0; i < 2001; ++i) xs.push_back(gauss(rng));
        const auto pmf = build_pmf(xs);
        const auto st = asymmetry(pmf);
        double zero_mass = 0.0;
        for (size_t i = 0; i < pmf.bin_count(); ++i) {
            if (pmf.mids[i] == 0.0) zero_mass += pmf.probs[i];
        }
        return std::abs(st.prp + st.nrp + zero_mass - 1.0) <= 1e-12;
    }});
    checks.push_back({"distribution/affine-shift", [] {
        std::mt19937_64 rng(84);
        std::normal_distribution<double> gauss(0.0, 3.0);
        std::vector<double> xs, shifted;
        for (int i = 0; i < 1500; ++i) xs.push_back(gauss(rng));
        const double c = -9.75;
        for (double x : xs) shifted.push_back(x + c);
        const auto a = pmf_stats(build_pmf(xs), xs);
        const auto b = pmf_stats(build_pmf(shifted), shifted);
        return approx(b.mode, a.mode + c, 1e-9) && approx(b.mean, a.mean + c, 1e-9) &&
               approx(b.band1.lo, a.band1.lo + c, 1e-9) &&
               b.band1.coverage == a.band1.coverage && b.band2.coverage == a.band2.coverage;
    }});
    checks.push_back({"distribution/negation-swaps-asymmetry", [] {
        std::mt19937_64 rng(85);
        std::normal_distribution<double> gauss(0.2, 1.0);
        std::vector<double> xs, neg;
        for (int i = 0; i < 1001; ++i) xs.push_back(gauss(rng));
        for (double x : xs) neg.push_back(-x);
        const auto a = asymmetry(build_pmf(xs));
        const auto b = asymmetry(build_pmf(neg));
        return approx(b.exp_pos, a.exp_neg, 1e-9) && approx(b.exp_neg, a.exp_pos, 1e-9) &&
               approx(b.prp, a.nrp, 1e-12) && approx(b.nrp, a.prp, 1e-12);
    }});
    checks.push_back({"distribution/conditional-partition", [] {
        const auto s = testutil::random_walk_series(2500, 86, true);
        const auto cells = conditional_cells(s, 2);
        for (int years = 1; years <= 2; ++years) {
            size_t from_cells = 0;
            for (const auto& cell : cells) {
                if (cell.years == years) from_cells += cell.n;
            }
            size_t direct = 0;
            const size_t offset = static_cast<size_t>(years) * 252;
            for (size_t t = *s.pe_start(); t + offset < s.size(); ++t) {
                if (*s.pe[t] >= 10.0 && *s.pe[t] < 31.0) ++direct;
            }
            if (from_cells != direct) return false;
        }
        return true;
    }});

    // complexity
    checks.push_back({"complexity/entropy-range-and-extremes", [] {
        for (size_t k : {2, 5, 16}) {
            if (std::abs(shannon_entropy_norm(uniform_pmf(k)) - 1.0) > 1e-12) return false;
            if (std::abs(tsallis_entropy_norm(uniform_pmf(k), 2.0) - 1.0) > 1e-12) return false;
        }
        if (shannon_entropy_norm(point_mass_pmf()) != 0.0) return false;
        if (tsallis_entropy_norm(point_mass_pmf(), 0.1) != 0.0) return false;
        std::mt19937_64 rng(87);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<double> xs;
        for (int i = 0; i < 800; ++i) xs.push_back(gauss(rng));
        const auto pmf = build_pmf(xs);
        const double h = shannon_entropy_norm(pmf);
        return h >= 0.0 && h <= 1.0;
    }});
    checks.push_back({"complexity/tsallis-shannon-continuity", [] {
        std::mt19937_64 rng(88);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<double> xs;
        for (int i = 0; i < 1200; ++i) xs.push_back(gauss(rng));
        const auto pmf = build_pmf(xs);
        return std::abs(tsallis_entropy_norm(pmf, 1.0001) - shannon_entropy_norm(pmf)) <= 1e-3;
    }});
    checks.push_back({"complexity/permutation-monotone-invariance", [] {
        std::mt19937_64 rng(89);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        std::vector<double> x, fx;
        for (int i = 0; i < 2000; ++i) x.push_back(uni(rng));
        for (double v : x) fx.push_back(std::atan(5.0 * v) * 3.0 + 2.0);
        return permutation_entropy_norm(x, 4, 1) == permutation_entropy_norm(fx, 4, 1);
    }});
    checks.push_back({"complexity/hurst-affine-invariance", [] {
        std::mt19937_64 rng(90);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<double> x, ax;
        double acc = 0.0;
        for (int i = 0; i < 1500; ++i) {
            acc += gauss(rng);
            x.push_back(acc);
        }
        for (double v : x) ax.push_back(2.5 * v - 100.0);
        const auto a = generalized_hurst(x);
        const auto b = generalized_hurst(ax);
        for (double q : a.qs) {
            if (!approx(a.h.at(q), b.h.at(q), 1e-9)) return false;
        }
        return true;
    }});
    checks.push_back({"complexity/spectrum-derivations-deterministic", [] {
        const std::vector<double> spec1 = {0.5, -0.1, -0.6};
        if (ks_entropy(spec1) != 0.5) return false;
        if (kaplan_yorke_dimension(spec1) != 2.0 + (0.5 - 0.1 - 0.0) / 0.6 - 0.0) {
            // j = 2 (partial sums 0.5, 0.4), D = 2 + 0.4/0.6
            if (!approx(kaplan_yorke_dimension(spec1), 2.0 + 0.4 / 0.6, 1e-15)) return false;
        }
        if (kaplan_yorke_dimension(std::vector<double>{-0.2, -0.4}) != 0.0) return false;
        if (kaplan_yorke_dimension(std::vector<double>{0.3, 0.1}) != 2.0) return false;
        return true;
    }});
    checks.push_back({"complexity/sampen-monotone-in-r", [] {
        std::mt19937_64 rng(91);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<double> x;
        for (int i = 0; i < 300; ++i) x.push_back(gauss(rng));
        double prev = sample_entropy(x, 2, 0.15);
        for (double r : {0.3, 0.6, 1.2}) {
            const double next = sample_entropy(x, 2, r);
            if (next > prev + 1e-12) return false;
            prev = next;
        }
        return true;
    }});

    // infoflow
    checks.push_back({"infoflow/mi-symmetry", [] {
        std::mt19937_64 rng(92);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<double> x, y;
        for (int i = 0; i < 2500; ++i) {
            x.push_back(gauss(rng));
            y.push_back(0.6 * x.back() + gauss(rng));
        }
        return mutual_information(x, y).nats == mutual_information(y, x).nats;
    }});
    checks.push_back({"infoflow/rank-transform-equivalence", [] {
        std::mt19937_64 rng(93);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        std::vector<double> x, y;
        for (int i = 0; i < 1024; ++i) {
            x.push_back(uni(rng));
            y.push_back(0.5 * x.back() + uni(rng));
        }
        const auto x_edges = build_pmf(x).edges;
        const auto y_edges = build_pmf(y).edges;
        const double base =
            mutual_information(joint_histogram_with_edges(x, y, x_edges, y_edges));
        std::vector<double> sorted(x);
        std::sort(sorted.begin(), sorted.end());
        const auto rank_of = [&](double v) {
            return static_cast<double>(std::lower_bound(sorted.begin(), sorted.end(), v) -
                                       sorted.begin());
        };
        std::vector<double> rx, r_edges;
        for (double v : x) rx.push_back(rank_of(v));
        for (double e : x_edges) r_edges.push_back(rank_of(e) - 0.5);
        return mutual_information(joint_histogram_with_edges(rx, y, r_edges, y_edges)) == base;
    }});
    checks.push_back({"infoflow/nmi-self-is-one", [] {
        std::mt19937_64 rng(94);
        std::uniform_int_distribution<int> sym(0, 5);
        std::vector<double> x;
        for (int i = 0; i < 3000; ++i) x.push_back(sym(rng));
        return std::abs(normalized_mutual_information(joint_histogram(x, x)) - 1.0) <= 1e-12;
    }});
    checks.push_back({"infoflow/shuffle-baseline", [] {
        std::mt19937_64 rng(95);
        std::uniform_int_distribution<int> coin(0, 1);
        const size_t n = 10000;
        std::vector<double> x(n), y(n);
        int prev = coin(rng);
        for (size_t t = 0; t < n; ++t) {
            y[t] = prev;
            prev = coin(rng);
            x[t] = prev;
        }
        std::vector<double> shuffled(x);
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        return transfer_entropy(shuffled, y, 1).nats <= 0.02;
    }});
    checks.push_back({"infoflow/deterministic-reports", [] {
        const auto s = testutil::random_walk_series(1200, 96, true);
        const auto a = info_report(s, 1, 8);
        const auto b = info_report(s, 1, 8);
        if (a.mi != b.mi || a.te_forward != b.te_forward || a.te_backward != b.te_backward) {
            return false;
        }
        for (size_t i = 0; i < a.reports.size(); ++i) {
            if (a.reports[i].nmi != b.reports[i].nmi) return false;
        }
        return true;
    }});

    // cli_report
    checks.push_back({"cli/reports-validate-against-schema", [] {
        const fs::path dir = fs::temp_directory_path() / "returnlab_acceptance_schema";
        fs::remove_all(dir);
        fs::create_directories(dir);
        const auto s = testutil::random_walk_series(1300, 97, true);
        const fs::path csv = dir / "in.csv";
        std::ofstream(csv, std::ios::binary) << to_csv(s);
        const fs::path out = dir / "out";
        if (run({"returns", "--horizons", "1d,1m", "--in", csv.string(), "--out",
                 out.string()}) != 0) {
            return false;
        }
        if (run({"pe-pmf", "--in", csv.string(), "--out", out.string()}) != 0) return false;
        std::ifstream schema_in(SCHEMA_PATH);
        std::ostringstream schema_buf;
        schema_buf << schema_in.rdbuf();
        const Json schema = Json::parse(schema_buf.str());
        for (const char* name : {"returns.json", "pe_pmf.json"}) {
            std::ifstream in(out / name);
            std::ostringstream buf;
            buf << in.rdbuf();
            const Json report = Json::parse(buf.str());
            if (!report.contains("manifest")) return false;
            for (const auto& key : schema["properties"]["manifest"]["required"]) {
                if (!report["manifest"].contains(key.get<std::string>())) return false;
            }
        }
        fs::remove_all(dir);
        return true;
    }});
    checks.push_back({"cli/report-all-is-a-function-of-input-and-flags", [] {
        const fs::path dir = fs::temp_directory_path() / "returnlab_acceptance_det";
        fs::remove_all(dir);
        fs::create_directories(dir);
        const auto s = testutil::random_walk_series(1500, 98, true);
        const fs::path csv = dir / "in.csv";
        std::ofstream(csv, std::ios::binary) << to_csv(s);
        const fs::path out = dir / "out";
        const std::vector<std::string> args = {"report-all", "--horizons", "1d,1m",
                                               "--max-years", "1", "--max-lag", "3",
                                               "--dim", "3", "--in", csv.string(),
                                               "--out", out.string()};
        if (run(args) != 0) return false;
        std::map<std::string, std::string> first;
        for (const auto& entry : fs::directory_iterator(out)) {
            std::ifstream in(entry.path(), std::ios::binary);
            std::ostringstream buf;
            buf << in.rdbuf();
            first[entry.path().filename().string()] = buf.str();
        }
        if (run(args) != 0) return false;
        for (const auto& entry : fs::directory_iterator(out)) {
            std::ifstream in(entry.path(), std::ios::binary);
            std::ostringstream buf;
            buf << in.rdbuf();
            if (first.at(entry.path().filename().string()) != buf.str()) return false;
        }
        fs::remove_all(dir);
        return true;
    }});

    return checks;
}

}  // namespace

int main() {
    std::cout << "returnlab acceptance suite\n";
    criterion_spectrum();
    criterion_entropy();
    criterion_hurst();
    criterion_lyapunov();
    criterion_te();
    criterion_distribution();
    criterion_properties();
    criterion_conditional_tier();
    if (usable_failures() > 0) {
        std::cout << usable_failures() << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria satisfied\n";
    return 0;
}
