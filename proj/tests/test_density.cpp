#include <doctest.h>

#include <random>

#include "mlbc/density.hpp"
#include "mlbc/errors.hpp"
#include "mlbc/numerics.hpp"

using namespace mlbc;

TEST_CASE("worked density anchors at 99 percent of capacity one-half") {
    const double rate = 0.99 * 0.5;
    CHECK(min_density(rate, 4.33) == doctest::Approx(13.16).epsilon(0.01 / 13.16));
    CHECK(min_density(rate, 5.68) == doctest::Approx(17.27).epsilon(0.01 / 17.27));
}

TEST_CASE("density conversions are mutually inverse") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> r(0.05, 0.95), d(0.0, 50.0);
    for (int i = 0; i < 200; ++i) {
        const double rate = r(rng), delta = d(rng);
        CHECK(min_density(rate, normalized_density(rate, delta)) ==
              doctest::Approx(delta).epsilon(1e-12));
    }
    // R -> 1 limit: t approaches delta.
    CHECK(normalized_density(1.0 - 1e-12, 7.0) == doctest::Approx(7.0).epsilon(1e-9));
}

TEST_CASE("fano step basics") {
    CHECK(pb_lower_from_entropy(0.0, 0.5) == 0.0);
    CHECK(pb_lower_from_entropy(0.5, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(pb_lower_from_entropy(0.6, 0.5), Error);
    CHECK_THROWS_AS(pb_lower_from_entropy(0.1, 1.5), Error);
}

TEST_CASE("fano step monotonicity and normalization variants") {
    double prev = -1.0;
    for (double h = 0.01; h < 0.45; h += 0.01) {
        const double v = pb_lower_from_entropy(h, 0.45);
        CHECK(v > prev);
        prev = v;
    }
    // Decreasing in the rate.
    CHECK(pb_lower_from_entropy(0.2, 0.4) > pb_lower_from_entropy(0.2, 0.8));
    // The rate-normalized form dominates the older 1-normalized form.
    for (double h : {0.05, 0.2, 0.4}) {
        CHECK(pb_lower_from_entropy(h, 0.45, FanoNormalization::rate) >=
              pb_lower_from_entropy(h, 0.45, FanoNormalization::one));
    }
}
