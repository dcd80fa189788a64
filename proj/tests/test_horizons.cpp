#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "returnlab/distribution.hpp"
#include "returnlab/errors.hpp"
#include "returnlab/horizons.hpp"

using namespace returnlab;

TEST_CASE("horizon parsing") {
    const auto ladder = parse_horizons("1d,1w,2w,1m,3m,6m,1y..12y");
    REQUIRE(ladder.size() == 18);
    CHECK(ladder[0].days == 1);
    CHECK(ladder[1].days == 5);
    CHECK(ladder[2].days == 10);
    CHECK(ladder[3].days == 21);
    CHECK(ladder[4].days == 63);
    CHECK(ladder[5].days == 126);
    CHECK(ladder[6].days == 252);
    CHECK(ladder.back().days == 3024);
    CHECK(ladder.back().label == "12y");
    CHECK(default_ladder() == ladder);
    CHECK_THROWS_AS(parse_horizons("1x"), Error);
    CHECK_THROWS_AS(parse_horizons("1d,1d"), Error);
    CHECK_THROWS_AS(parse_horizons(""), Error);
}

TEST_CASE("forward returns formula") {
    SUBCASE("one-day step") {
        const auto s = testutil::make_series({100.0, 101.0});
        const auto set = forward_returns(s, {"1d", 1});
        REQUIRE(set.returns.size() == 1);
        CHECK(set.returns[0] == doctest::Approx(1.0));
        CHECK(set.start_dates[0] == s.dates[0]);
    }
    SUBCASE("two-day step") {
        const auto s = testutil::make_series({100.0, 110.0, 121.0});
        const auto set = forward_returns(s, {"2d", 2});
        REQUIRE(set.returns.size() == 1);
        CHECK(set.returns[0] == doctest::Approx(21.0));
    }
    SUBCASE("constant series returns all zero") {
        const auto s = testutil::make_series(std::vector<double>(30, 50.0));
        const auto set = forward_returns(s, {"1w", 5});
        CHECK(set.returns.size() == 25);
        for (double r : set.returns) CHECK(r == 0.0);
    }
    SUBCASE("too-short series throws") {
        const auto s = testutil::make_series({100.0, 101.0});
        CHECK_THROWS_AS(forward_returns(s, {"1w", 5}), SeriesTooShort);
        CHECK_THROWS_AS(forward_returns(s, {"2d", 2}), SeriesTooShort);
    }
}

TEST_CASE("forward returns are shift-equivariant") {
    const auto base = testutil::random_walk_series(200, 11, false);
    std::vector<double> padded_close(base.close);
    padded_close.insert(padded_close.begin(), {90.0, 91.0, 92.0});
    const auto padded = testutil::make_series(padded_close);

    const HorizonSpec spec{"1m", 21};
    const auto a = forward_returns(base, spec);
    const auto b = forward_returns(padded, spec);
    REQUIRE(b.returns.size() == a.returns.size() + 3);
    for (size_t t = 0; t < a.returns.size(); ++t) {
        CHECK(b.returns[t + 3] == a.returns[t]);  // bitwise: same closes, same formula
    }
}

TEST_CASE("to_cagr") {
    CHECK(to_cagr(100.0, 2) == doctest::Approx(41.4214).epsilon(1e-5));
    CHECK(to_cagr(0.0, 1) == 0.0);
    CHECK(to_cagr(0.0, 7) == doctest::Approx(0.0));
    CHECK_THROWS_AS(to_cagr(-100.0, 3), TotalLoss);
    CHECK_THROWS_AS(to_cagr(-120.0, 3), TotalLoss);

    SUBCASE("n = 1 is the exact identity") {
        for (double r : {-55.5, -1.0, 0.0, 0.1, 10.67, 311.99}) {
            CHECK(to_cagr(r, 1) == r);
        }
    }
    SUBCASE("derived: 259.37% over 10 years") {
        // independent check: 1.1365^10 must recover 1 + 2.5937 to the same
        // 0.01-percentage-point resolution as the asserted CAGR
        double compound = 1.0;
        for (int i = 0; i < 10; ++i) compound *= 1.1365;
        REQUIRE(compound == doctest::Approx(3.5937).epsilon(1e-3));
        CHECK(std::abs(to_cagr(259.37, 10) - 13.65) <= 0.01);
    }
    SUBCASE("compounding round-trip") {
        for (double r : {-80.0, -5.0, 3.0, 42.0, 700.0}) {
            for (int n : {1, 2, 5, 12}) {
                const double c = to_cagr(r, n);
                const double recovered = std::pow(1.0 + c / 100.0, n);
                CHECK(recovered == doctest::Approx(1.0 + r / 100.0).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("horizon summary min/max/mode") {
    SUBCASE("hand-counted mode with unit bins") {
        // returns {-1, 0, 1, 1, 1} over unit bins centred on the integers:
        // counts 1|1|3, so the modal bin holds the three 1s at probability 3/5
        HorizonReturnSet set;
        set.spec = {"1d", 1};
        set.returns = {-1.0, 0.0, 1.0, 1.0, 1.0};
        set.start_dates = testutil::trading_dates(5);
        const auto pmf = build_pmf_with_edges(set.returns, {-1.5, -0.5, 0.5, 1.5});
        const auto summary = horizon_summary(set, pmf);
        CHECK(summary.min == -1.0);
        CHECK(summary.max == 1.0);
        CHECK(summary.mode == doctest::Approx(1.0));
        CHECK(summary.mode_prob == doctest::Approx(0.6));
    }
    SUBCASE("singleton") {
        HorizonReturnSet set;
        set.spec = {"1d", 1};
        set.returns = {5.0};
        set.start_dates = testutil::trading_dates(1);
        const auto pmf = build_pmf(set.returns);
        const auto summary = horizon_summary(set, pmf);
        CHECK(summary.min == 5.0);
        CHECK(summary.max == 5.0);
        CHECK(summary.mode == doctest::Approx(5.0));
        CHECK(summary.mode_prob == 1.0);
    }
    SUBCASE("symmetric returns") {
        HorizonReturnSet set;
        set.spec = {"1d", 1};
        set.returns = {-2.0, -1.0, 0.0, 1.0, 2.0};
        set.start_dates = testutil::trading_dates(5);
        const auto summary = horizon_summary(set, build_pmf(set.returns));
        CHECK(summary.min == -summary.max);
    }
    SUBCASE("empty set throws") {
        HorizonReturnSet set;
        set.spec = {"1d", 1};
        Pmf pmf;
        pmf.edges = {0.0, 1.0};
        pmf.mids = {0.5};
        pmf.probs = {1.0};
        CHECK_THROWS_AS(horizon_summary(set, pmf), EmptySet);
    }
}

TEST_CASE("summary brackets every sample") {
    const auto s = testutil::random_walk_series(800, 3, false);
    for (int days : {1, 5, 21, 252}) {
        const auto set = forward_returns(s, {std::to_string(days) + "d", days});
        const auto summary = horizon_summary(set, build_pmf(set.returns));
        for (double r : set.returns) {
            CHECK(summary.min <= r);
            CHECK(r <= summary.max);
        }
        CHECK(summary.min <= summary.mode);
        CHECK(summary.mode <= summary.max);
    }
}

namespace {

std::vector<HorizonSummary> summaries_with_mins(const std::vector<double>& mins) {
    std::vector<HorizonSummary> out;
    for (size_t i = 0; i < mins.size(); ++i) {
        HorizonSummary s;
        s.spec = {std::to_string(i + 1) + "y", static_cast<int>(252 * (i + 1))};
        s.min = mins[i];
        s.max = 100.0;
        s.mode = 10.0;
        out.push_back(s);
    }
    return out;
}

}  // namespace

TEST_CASE("trapping horizon scan") {
    SUBCASE("hand scan from the right") {
        const auto result = trapping_horizon(summaries_with_mins({-5, -2, 1, -1, 2, 3}));
        REQUIRE(result.has_value());
        CHECK(result->label == "5y");  // 5th horizon
    }
    SUBCASE("all positive picks the first") {
        const auto result = trapping_horizon(summaries_with_mins({1, 2, 3}));
        REQUIRE(result.has_value());
        CHECK(result->label == "1y");
    }
    SUBCASE("all negative is absent") {
        CHECK(!trapping_horizon(summaries_with_mins({-1, -2, -3})).has_value());
    }
    SUBCASE("zero min counts as nonnegative") {
        const auto result = trapping_horizon(summaries_with_mins({-1, 0, 1}));
        REQUIRE(result.has_value());
        CHECK(result->label == "2y");
    }
    SUBCASE("empty ladder is absent") {
        CHECK(!trapping_horizon({}).has_value());
    }
}

TEST_CASE("cagr summary consistency") {
    const auto s = testutil::random_walk_series(1200, 17, false);
    const auto summary = cagr_summary(s, 2);
    const auto set = forward_returns(s, {"2y", 504});
    double min_r = set.returns[0], max_r = set.returns[0];
    for (double r : set.returns) {
        min_r = std::min(min_r, r);
        max_r = std::max(max_r, r);
    }
    // CAGR is monotone in the absolute return, so extrema map through
    CHECK(summary.min_cagr == doctest::Approx(to_cagr(min_r, 2)));
    CHECK(summary.max_cagr == doctest::Approx(to_cagr(max_r, 2)));
    CHECK(summary.min_cagr <= summary.mode_cagr);
    CHECK(summary.mode_cagr <= summary.max_cagr);
    CHECK(summary.n == set.returns.size());
}
