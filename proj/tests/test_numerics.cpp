#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "mlbc/errors.hpp"
#include "mlbc/numerics.hpp"
#include "mlbc/optimize.hpp"
#include "mlbc/quadrature.hpp"
#include "mlbc/rng.hpp"

using namespace mlbc;

namespace {

// Independent chi-square CDF for even dof via the Poisson sum
// P(chi2_2m <= x) = 1 - sum_{j<m} e^{-x/2} (x/2)^j / j!, accumulated in the
// log domain; used as the oracle for the incomplete-gamma routines.
double chi2_cdf_even_oracle(int dof, double x) {
    REQUIRE(dof % 2 == 0);
    const int m = dof / 2;
    const double lam = 0.5 * x;
    LogSumExp acc;
    double lt = -lam;  // log of e^-lam * lam^j / j! at j = 0
    for (int j = 0; j < m; ++j) {
        acc.add(lt);
        lt += std::log(lam) - std::log1p(j);
    }
    return -std::expm1(acc.value());
}

double log_chi2_sf_even_oracle(int dof, double x) {
    const int m = dof / 2;
    const double lam = 0.5 * x;
    LogSumExp acc;
    double lt = -lam;
    for (int j = 0; j < m; ++j) {
        acc.add(lt);
        lt += std::log(lam) - std::log1p(j);
    }
    return acc.value();
}

}  // namespace

TEST_CASE("q_function basics") {
    CHECK(q_function(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(q_function(-40.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(q_function(40.0) <= 1e-300);
    // Quadrature oracle for Q(3): integrate the normal density over [3, 40].
    const double oracle = integrate([](double x) { return normal_pdf(x); }, 3.0, 40.0, 1e-16);
    CHECK(q_function(3.0) == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(q_function(3.0) == doctest::Approx(1.3498980316300946e-03).epsilon(1e-12));
}

TEST_CASE("log_q_function agrees with q_function across the seam") {
    for (double x = 5.0; x <= 12.0; x += 0.25) {
        const double direct = std::log(q_function(x));
        CHECK(log_q_function(x) == doctest::Approx(direct).epsilon(1e-12));
    }
    // Far tail: compare against the quadrature oracle in log domain.
    const double lq = integrate_log([](double x) { return log_normal_pdf(x); }, 30.0, 32.0, 1e-12);
    CHECK(log_q_function(30.0) == doctest::Approx(lq).epsilon(1e-9));
}

TEST_CASE("binary entropy and inverse") {
    CHECK(h2(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(h2(0.0) == 0.0);
    CHECK(h2(1.0) == 0.0);
    CHECK(h2_inverse(0.0) == 0.0);
    CHECK(h2_inverse(1.0) == doctest::Approx(0.5));
    CHECK(h2_inverse(h2(0.11)) == doctest::Approx(0.11).epsilon(1e-12));
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 0.5);
    for (int i = 0; i < 50; ++i) {
        const double x = u(rng);
        CHECK(h2_inverse(h2(x)) == doctest::Approx(x).epsilon(1e-11));
    }
    CHECK_THROWS_AS(h2(1.5), Error);
}

TEST_CASE("incomplete gamma against exact chi-square identities") {
    // dof 2: F(x) = 1 - exp(-x/2).
    for (double x : {0.1, 1.0, 3.0, 10.0}) {
        CHECK(chi2_cdf(2, x) == doctest::Approx(-std::expm1(-0.5 * x)).epsilon(1e-13));
    }
    // Even dof oracle across magnitudes, including large dof.
    for (int dof : {4, 10, 60, 500, 3000}) {
        for (double x : {0.3 * dof, 0.8 * dof, 1.0 * dof, 1.5 * dof}) {
            const double oracle = chi2_cdf_even_oracle(dof, x);
            CHECK(chi2_cdf(dof, x) == doctest::Approx(oracle).epsilon(1e-10));
        }
    }
    // Relative accuracy of the log CDF deep in the lower tail.
    const double lp = log_chi2_cdf(3000, 1500.0);
    const double lp_up = log_chi2_cdf(3002, 1500.0);
    CHECK(lp_up < lp);  // CDF decreases in dof
    CHECK(std::isfinite(lp));
    CHECK(lp < -100.0);
    // Survival-side log accuracy against the even-dof oracle.
    CHECK(log_chi2_sf(500, 800.0) ==
          doctest::Approx(log_chi2_sf_even_oracle(500, 800.0)).epsilon(1e-10));
    // Odd dof: F_1(x) = 1 - 2 Q(sqrt(x)).
    for (double x : {0.5, 2.0, 9.0}) {
        CHECK(chi2_cdf(1, x) == doctest::Approx(1.0 - 2.0 * q_function(std::sqrt(x))).epsilon(1e-12));
    }
}

TEST_CASE("adaptive quadrature") {
    CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0, 1e-14) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, 3.141592653589793, 1e-14) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(integrate([](double x) { return normal_pdf(x); }, -8.5, 8.5, 1e-15) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // Sharply peaked integrand forces adaptivity.
    const double v = integrate([](double x) { return std::exp(-1000.0 * x * x); }, -1.0, 1.0, 1e-15);
    CHECK(v == doctest::Approx(std::sqrt(3.141592653589793 / 1000.0)).epsilon(1e-11));
}

TEST_CASE("integrate_log matches direct integration after scaling") {
    const double direct = integrate([](double x) { return std::exp(-x * x); }, 0.0, 2.0, 1e-15);
    const double lg = integrate_log([](double x) { return -x * x; }, 0.0, 2.0, 1e-12);
    CHECK(std::exp(lg) == doctest::Approx(direct).epsilon(1e-10));
    // Deeply scaled: exp(-2000 - x^2) integrates to exp(-2000) * direct.
    const double lg2 = integrate_log([](double x) { return -2000.0 - x * x; }, 0.0, 2.0, 1e-12);
    CHECK(lg2 == doctest::Approx(lg - 2000.0).epsilon(1e-12));
}

TEST_CASE("log_sum_exp") {
    LogSumExp acc;
    CHECK(acc.value() == kNegInf);
    acc.add(kNegInf);
    CHECK(acc.value() == kNegInf);
    acc.add(0.0);
    acc.add(0.0);
    CHECK(acc.value() == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    LogSumExp big;
    big.add(-1000.0);
    big.add(-1001.0);
    CHECK(big.value() == doctest::Approx(-1000.0 + std::log1p(std::exp(-1.0))).epsilon(1e-15));
}

TEST_CASE("binomials") {
    CHECK(binomial_ld(7, 3) == 35.0L);
    CHECK(binomial_ld(1000, 2) == 499500.0L);
    const long double big = binomial_ld(1000, 500);
    CHECK(static_cast<double>(logl(big)) ==
          doctest::Approx(log_binomial(1000, 500)).epsilon(1e-12));
    CHECK(log_binomial(7, 3) == doctest::Approx(std::log(35.0)).epsilon(1e-13));
}

TEST_CASE("binomial majority tail matches flip-pattern enumeration") {
    // d = 3: 3 p^2 (1-p) + p^3.
    for (double p : {0.01, 0.05, 0.2}) {
        CHECK(binomial_majority_tail(3, p) ==
              doctest::Approx(3.0 * p * p * (1.0 - p) + p * p * p).epsilon(1e-13));
    }
    // Even d: enumeration oracle with half-weighted ties.
    const double p = 0.11;
    const unsigned d = 6;
    double oracle = 0.0;
    for (unsigned pattern = 0; pattern < (1u << d); ++pattern) {
        const int flips = __builtin_popcount(pattern);
        const double prob = std::pow(p, flips) * std::pow(1.0 - p, d - flips);
        if (2 * flips > static_cast<int>(d)) oracle += prob;
        if (2 * flips == static_cast<int>(d)) oracle += 0.5 * prob;
    }
    CHECK(binomial_majority_tail(d, p) == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("bivariate orthant probability") {
    // Independence.
    CHECK(bivariate_orthant_upper(0.3, -0.7, 0.0) ==
          doctest::Approx(q_function(0.3) * q_function(-0.7)).epsilon(1e-13));
    // Degenerate correlations.
    CHECK(bivariate_orthant_upper(0.5, 1.5, 1.0) == doctest::Approx(q_function(1.5)).epsilon(1e-13));
    CHECK(bivariate_orthant_upper(-1.0, -1.0, -1.0) ==
          doctest::Approx(q_function(-1.0) - q_function(1.0)).epsilon(1e-13));
    CHECK(bivariate_orthant_upper(1.0, 1.0, -1.0) == 0.0);
    // Symmetry in the arguments.
    CHECK(bivariate_orthant_upper(0.8, -0.2, 0.6) ==
          doctest::Approx(bivariate_orthant_upper(-0.2, 0.8, 0.6)).epsilon(1e-12));
    // 2-D quadrature oracle at a handful of points.
    auto oracle = [](double a, double b, double rho) {
        const double s = std::sqrt(1.0 - rho * rho);
        return integrate(
            [&](double x) {
                return normal_pdf(x) *
                       integrate([&](double t) { return normal_pdf(t); },
                                 (b - rho * x) / s, 9.0 + std::fabs(b), 1e-14);
            },
            a, 9.0 + std::fabs(a), 1e-14);
    };
    for (double rho : {-0.9, -0.3, 0.5, 0.97}) {
        for (double a : {-0.5, 1.2}) {
            const double got = bivariate_orthant_upper(a, 0.4, rho);
            CHECK(got == doctest::Approx(oracle(a, 0.4, rho)).epsilon(1e-9));
        }
    }
    // Frechet bounds on random triples.
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ab(-2.0, 3.0), r(-0.999, 0.999);
    for (int i = 0; i < 200; ++i) {
        const double a = ab(rng), b = ab(rng), rho = r(rng);
        const double v = bivariate_orthant_upper(a, b, rho);
        const double qa = q_function(a), qb = q_function(b);
        CHECK(v >= std::max(0.0, qa + qb - 1.0) - 1e-12);
        CHECK(v <= std::min(qa, qb) + 1e-12);
    }
    // Log version deep in the tail: for rho = 0 it must match 2 log Q.
    CHECK(log_bivariate_orthant_upper(12.0, 12.0, 0.0) ==
          doctest::Approx(2.0 * log_q_function(12.0)).epsilon(1e-9));
}

TEST_CASE("golden section and bracketed minimization") {
    const auto f = [](double x) { return (x - 3.141592653589793) * (x - 3.141592653589793); };
    const ScalarMin m = golden_section_min(f, 0.0, 10.0, 1e-11);
    CHECK(m.x == doctest::Approx(3.141592653589793).epsilon(1e-8));
    const ScalarMin b = bracketed_min([](double x) { return std::cos(x); }, 0.0, 6.0, 64, 1e-10);
    CHECK(b.x == doctest::Approx(3.141592653589793).epsilon(1e-7));
    CHECK(b.value == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("coordinate descent on a coupled quadratic") {
    const auto f = [](const std::vector<double>& x) {
        const double u = x[0] - 1.0, v = x[1] + 2.0;
        return u * u + v * v + 0.5 * u * v;
    };
    const auto box = [](std::size_t, const std::vector<double>&) {
        return std::pair<double, double>{-10.0, 10.0};
    };
    const CoordinateMin m = coordinate_descent(f, box, {0.0, 0.0}, 30, 1e-10);
    CHECK(f({m.x[0], m.x[1]}) == doctest::Approx(m.value));
    CHECK(m.value < f({1.0, -2.0}) + 1e-6);
}

TEST_CASE("counter rng determinism and moments") {
    CounterRng a(42, 7), b(42, 7), c(42, 8);
    for (int i = 0; i < 16; ++i) CHECK(a.next_u64() == b.next_u64());
    CHECK(a.next_u64() != c.next_u64());
    double sum = 0.0, sq = 0.0;
    const int n = 200000;
    CounterRng r(1, 0);
    for (int i = 0; i < n; ++i) {
        const double z = r.next_normal();
        sum += z;
        sq += z * z;
    }
    CHECK(std::fabs(sum / n) < 0.01);
    CHECK(sq / n == doctest::Approx(1.0).epsilon(0.01));
}
