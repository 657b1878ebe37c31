#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rt/kahan.hpp"
#include "rt/ordered.hpp"
#include "rt/rng.hpp"

using namespace rt;

TEST_CASE("transform basics") {
    SUBCASE("zeros map to zeros") {
        const auto ot = transform({0.0, 0.0}, NullModel::standard_gaussian());
        CHECK(ot.x == std::vector<double>{0.0, 0.0});
    }
    SUBCASE("identity on Exp(1) data") {
        const auto y = sample(NullModel::exponential(1.0), 50, 5);
        const auto ot = transform(y, NullModel::exponential(1.0));
        auto sorted = y;
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        for (std::size_t i = 0; i < y.size(); ++i)
            CHECK(ot.x[i] == doctest::Approx(sorted[i]).epsilon(1e-14));
    }
    SUBCASE("two-sided 5% point maps to -log(0.05)") {
        const auto ot =
            transform({1.959964, -1.959964}, NullModel::standard_gaussian());
        CHECK(ot.x[0] == doctest::Approx(2.995732).epsilon(1e-4));
        CHECK(ot.x[1] == doctest::Approx(2.995732).epsilon(1e-4));
    }
    SUBCASE("validation") {
        CHECK_THROWS(transform({1.0}, NullModel::standard_gaussian()));
        CHECK_THROWS(transform({1.0, std::nan("")}, NullModel::standard_gaussian()));
    }
}

TEST_CASE("transform orders by magnitude, ties by original index") {
    const std::vector<double> y{3.0, -3.0, 1.0, 3.0};
    const auto ot = transform(y, NullModel::standard_gaussian());
    CHECK(ot.order == std::vector<std::size_t>{0, 1, 3, 2});
    CHECK(std::is_sorted(ot.x.begin(), ot.x.end(), std::less<>()) == false);
    for (double v : ot.x) {
        CHECK(std::isfinite(v));
        CHECK(v >= 0.0);
    }
}

TEST_CASE("transform is permutation invariant in x") {
    Rng rng(17);
    std::vector<double> y(64);
    for (auto& v : y) v = rng.gaussian();
    const auto base = transform(y, NullModel::standard_gaussian());
    std::vector<double> shuffled = y;
    std::reverse(shuffled.begin(), shuffled.end());
    const auto other = transform(shuffled, NullModel::standard_gaussian());
    CHECK(base.x == other.x);
    // the permutation must still point at the same values
    for (std::size_t r = 0; r < y.size(); ++r)
        CHECK(y[base.order[r]] == shuffled[other.order[r]]);
}

TEST_CASE("expected order statistic sums") {
    CHECK(expected_order_stat_sum(3, 3) == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(expected_order_stat_sum(3, 1) == doctest::Approx(11.0 / 6).epsilon(1e-15));
    // harmonic-sum oracle: H_n ~ ln n + gamma
    const double euler = 0.57721566490153286060651209008240;
    CHECK(expected_order_stat_sum(1000000, 1) ==
          doctest::Approx(std::log(1e6) + euler).epsilon(1e-6));
    CHECK_THROWS_AS(expected_order_stat_sum(5, 0), std::out_of_range);
    CHECK_THROWS_AS(expected_order_stat_sum(5, 6), std::out_of_range);
}

TEST_CASE("expected partial sums") {
    CHECK(expected_partial_sum(3, 2) == doctest::Approx(8.0 / 3).epsilon(1e-15));
    for (std::size_t m : {1ul, 7ul, 40ul})
        CHECK(expected_partial_sum(m, m) == doctest::Approx(double(m)).epsilon(1e-15));
    // direct double-summation oracle
    KahanSum direct;
    for (std::size_t i = 1; i <= 37; ++i) direct += expected_order_stat_sum(100, i);
    CHECK(expected_partial_sum(100, 37) ==
          doctest::Approx(double(direct)).epsilon(1e-12));
}

TEST_CASE("harmonic table agrees with the direct sums") {
    const HarmonicTable table(200);
    for (std::size_t m = 1; m <= 200; m += 13)
        for (std::size_t j = 1; j <= m; ++j)
            CHECK(table.expected_prefix(m, j) ==
                  doctest::Approx(expected_partial_sum(m, j)).epsilon(1e-12));
}
