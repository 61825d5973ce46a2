#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "mlbc/channel.hpp"
#include "mlbc/errors.hpp"
#include "mlbc/linear_code.hpp"
#include "mlbc/numerics.hpp"
#include "mlbc/quadrature.hpp"
#include "mlbc/rng.hpp"

using namespace mlbc;

TEST_CASE("channel construction and parameters") {
    const ChannelModel awgn = ChannelModel::biawgn(0.0, 1.0);
    CHECK(awgn.signal_amplitude() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(ChannelModel::bsc(0.5), Error);
    CHECK_THROWS_AS(ChannelModel::bsc(0.0), Error);
    CHECK_THROWS_AS(ChannelModel::biawgn(0.0, 0.0), Error);
}

TEST_CASE("bhattacharyya parameter") {
    const ChannelModel bsc = ChannelModel::bsc(0.05);
    CHECK(bsc.bhattacharyya() == doctest::Approx(2.0 * std::sqrt(0.05 * 0.95)).epsilon(1e-15));
    const ChannelModel awgn = ChannelModel::biawgn(2.0, 0.5);
    const double ebno = std::pow(10.0, 0.2);
    CHECK(awgn.bhattacharyya() == doctest::Approx(std::exp(-0.5 * ebno)).epsilon(1e-13));
    // Per-letter quadrature oracle: integral of sqrt(p(y|0) p(y|1)).
    const double m = awgn.signal_amplitude();
    const double oracle = integrate(
        [&](double y) { return std::sqrt(normal_pdf(y - m) * normal_pdf(y + m)); }, -12.0 - m,
        12.0 + m, 1e-14);
    CHECK(awgn.bhattacharyya() == doctest::Approx(oracle).epsilon(1e-11));
}

TEST_CASE("pairwise error probabilities") {
    const ChannelModel bsc = ChannelModel::bsc(0.1);
    const double p = 0.1;
    CHECK(pairwise_error(bsc, 3) == doctest::Approx(3 * p * p * (1 - p) + p * p * p).epsilon(1e-13));

    const ChannelModel awgn0 = ChannelModel::biawgn(0.0, 1.0);
    CHECK(pairwise_error(awgn0, 1) == doctest::Approx(q_function(std::sqrt(2.0))).epsilon(1e-13));
    CHECK(pairwise_error(awgn0, 1) == doctest::Approx(0.0786496).epsilon(1e-5));

    const ChannelModel deep = ChannelModel::biawgn(60.0, 1.0);
    CHECK(pairwise_error(deep, 1) <= 1e-300);

    CHECK_THROWS_AS(pairwise_error(awgn0, 0), Error);
}

TEST_CASE("pairwise error monotonicity") {
    const ChannelModel awgn = ChannelModel::biawgn(1.5, 0.5);
    double prev = 1.0;
    for (unsigned d = 1; d <= 24; ++d) {
        const double v = pairwise_error(awgn, d);
        CHECK(v < prev);
        prev = v;
    }
    double prev_snr = 1.0;
    for (double db = -4.0; db <= 8.0; db += 0.5) {
        const double v = pairwise_error(ChannelModel::biawgn(db, 0.5), 3);
        CHECK(v < prev_snr);
        prev_snr = v;
    }
}

TEST_CASE("joint pairwise error: structure") {
    const ChannelModel ch = ChannelModel::biawgn(2.0, 4.0 / 7.0);
    // Same event: w_ij = 0 forces rho = 1 and the pairwise value.
    CHECK(joint_pairwise_error(ch, 3, 3, 0) == doctest::Approx(pairwise_error(ch, 3)).epsilon(1e-12));
    // Disjoint supports: rho = 0, product of pairwise probabilities.
    CHECK(joint_pairwise_error(ch, 3, 4, 7) ==
          doctest::Approx(pairwise_error(ch, 3) * pairwise_error(ch, 4)).epsilon(1e-10));
    // Inconsistent triples.
    CHECK_THROWS_AS(joint_pairwise_error(ch, 3, 3, 7), Error);   // exceeds w_i + w_j
    CHECK_THROWS_AS(joint_pairwise_error(ch, 3, 3, 5), Error);   // parity violation
    CHECK_THROWS_AS(pairwise_correlation(2, 2, 1), Error);       // parity violation
    // Frechet consistency on valid triples.
    std::mt19937_64 rng(5);
    for (int it = 0; it < 100; ++it) {
        const unsigned wi = 1 + rng() % 6, wj = 1 + rng() % 6;
        std::vector<unsigned> valid;
        for (unsigned wij = (wi > wj ? wi - wj : wj - wi); wij <= wi + wj; wij += 2)
            valid.push_back(wij);
        const unsigned wij = valid[rng() % valid.size()];
        const double v = joint_pairwise_error(ch, wi, wj, wij);
        const double pi = pairwise_error(ch, wi), pj = pairwise_error(ch, wj);
        CHECK(v <= std::min(pi, pj) + 1e-12);
        CHECK(v >= std::max(0.0, pi + pj - 1.0) - 1e-12);
    }
}

TEST_CASE("joint pairwise error against a monte carlo oracle") {
    // Hamming(7,4): two weight-3 codewords whose XOR has weight 4.
    const LinearCode code =
        LinearCode::parse("7 4\n1000110\n0100101\n0010011\n0001111\n");
    std::vector<std::uint64_t> ci, cj;
    bool found = false;
    for (std::uint64_t a = 1; a < 16 && !found; ++a) {
        for (std::uint64_t b = a + 1; b < 16 && !found; ++b) {
            if (code.codeword_weight(a) != 3 || code.codeword_weight(b) != 3) continue;
            std::vector<std::uint64_t> xa = code.codeword(a), xb = code.codeword(b);
            std::vector<std::uint64_t> x(xa.size());
            for (std::size_t i = 0; i < x.size(); ++i) x[i] = xa[i] ^ xb[i];
            if (popcount_words(x) == 4) {
                ci = xa;
                cj = xb;
                found = true;
            }
        }
    }
    REQUIRE(found);
    const ChannelModel ch = ChannelModel::biawgn(2.0, 4.0 / 7.0);
    const double analytic = joint_pairwise_error(ch, 3, 3, 4);

    const double m = ch.signal_amplitude();
    const std::size_t samples = 2000000;
    std::uint64_t hits = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        CounterRng rng(99, s);
        double ui = 0.0, uj = 0.0;
        for (unsigned pos = 0; pos < 7; ++pos) {
            const double z = rng.next_normal();
            if ((ci[0] >> pos) & 1) ui -= z;
            if ((cj[0] >> pos) & 1) uj -= z;
        }
        // Event: U >= m * w for each codeword (w = 3).
        if (ui >= m * 3.0 && uj >= m * 3.0) ++hits;
    }
    const double est = static_cast<double>(hits) / samples;
    const double se = std::sqrt(est * (1.0 - est) / samples);
    CHECK(std::fabs(analytic - est) <= 3.0 * se);
}

TEST_CASE("pairwise correlation matches empirical statistic correlation") {
    std::mt19937_64 seed_rng(17);
    for (int trial = 0; trial < 4; ++trial) {
        const unsigned wi = 2 + seed_rng() % 4;
        const unsigned wj = 2 + seed_rng() % 4;
        std::vector<unsigned> valid;
        for (unsigned wij = (wi > wj ? wi - wj : wj - wi); wij <= wi + wj; wij += 2)
            if (wij > 0) valid.push_back(wij);
        const unsigned wij = valid[seed_rng() % valid.size()];
        const unsigned overlap = (wi + wj - wij) / 2;
        const double rho = pairwise_correlation(wi, wj, wij);

        // Supports: first `overlap` positions shared.
        const std::size_t samples = 400000;
        double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
        for (std::size_t s = 0; s < samples; ++s) {
            CounterRng rng(1234 + trial, s);
            std::vector<double> z(wi + wj - overlap);
            for (auto& v : z) v = rng.next_normal();
            double zi = 0, zj = 0;
            for (unsigned t = 0; t < wi; ++t) zi += z[t];
            for (unsigned t = 0; t < wj; ++t) zj += z[t < overlap ? t : wi + t - overlap];
            zi /= std::sqrt(static_cast<double>(wi));
            zj /= std::sqrt(static_cast<double>(wj));
            sx += zi;
            sy += zj;
            sxx += zi * zi;
            syy += zj * zj;
            sxy += zi * zj;
        }
        const double n = static_cast<double>(samples);
        const double cov = sxy / n - (sx / n) * (sy / n);
        const double vx = sxx / n - (sx / n) * (sx / n);
        const double vy = syy / n - (sy / n) * (sy / n);
        const double emp = cov / std::sqrt(vx * vy);
        // SE of a correlation estimate ~ (1 - rho^2) / sqrt(n).
        const double se = (1.0 - rho * rho) / std::sqrt(n);
        CHECK(std::fabs(emp - rho) <= 4.0 * se + 1e-4);
    }
}
