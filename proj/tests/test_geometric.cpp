#include <doctest.h>

#include <cmath>

#include "mlbc/channel.hpp"
#include "mlbc/errors.hpp"
#include "mlbc/gallager.hpp"
#include "mlbc/geometric.hpp"
#include "mlbc/numerics.hpp"
#include "mlbc/oracles.hpp"
#include "mlbc/spectrum.hpp"

using namespace mlbc;

namespace {

LinearCode hamming74() {
    return LinearCode::parse("7 4\n1000110\n0100101\n0010011\n0001111\n");
}

ChannelModel ch74(double db) { return ChannelModel::biawgn(db, 4.0 / 7.0); }

}  // namespace

TEST_CASE("whole-space monte carlo reproduces the analytic union bound") {
    const LinearCode code = hamming74();
    const DistanceSpectrum s = enumerate_spectrum(code);
    const ChannelModel ch = ch74(2.0);
    const OracleResult mc = region_bound_mc(code, ch, Region::whole_space(), 200000, 4711);
    const double analytic = union_bound(s, ch).value();
    CHECK(std::fabs(mc.estimate - analytic) <= 3.0 * mc.std_error);
    CHECK(mc.std_error > 0.0);
}

TEST_CASE("huge sphere equals the whole space sample by sample") {
    const LinearCode code = hamming74();
    const ChannelModel ch = ch74(2.0);
    const OracleResult whole = region_bound_mc(code, ch, Region::whole_space(), 50000, 8);
    const OracleResult sphere = region_bound_mc(code, ch, Region::sphere(1e6), 50000, 8);
    CHECK(whole.estimate == sphere.estimate);
    CHECK(whole.std_error == sphere.std_error);
}

TEST_CASE("giant regions recover the union bound semi-analytically") {
    const DistanceSpectrum s = enumerate_spectrum(hamming74());
    const ChannelModel ch = ch74(4.0);
    const double union_raw = union_bound(s, ch).value();
    const GeometricBound big_sphere =
        region_bound_semi_analytic(s, ch, Region::sphere(1000.0), false);
    CHECK(big_sphere.value == doctest::Approx(union_raw).epsilon(1e-6));
    const GeometricBound wide_cone =
        region_bound_semi_analytic(s, ch, Region::cone(1.545), false);
    CHECK(wide_cone.value == doctest::Approx(union_raw).epsilon(1e-3));
    CHECK(wide_cone.value <= union_raw + 1e-12);
}

TEST_CASE("inner clipping never increases the bound") {
    const DistanceSpectrum s = enumerate_spectrum(hamming74());
    const ChannelModel ch = ch74(1.0);
    for (double theta : {0.6, 0.9, 1.2}) {
        const double clipped = region_bound_semi_analytic(s, ch, Region::cone(theta), true).value;
        const double raw = region_bound_semi_analytic(s, ch, Region::cone(theta), false).value;
        CHECK(clipped <= raw + 1e-12);
    }
    // In a huge sphere at 0 dB the conditional union term exceeds 1 on the
    // low radial slices, so the clip strictly bites.
    const ChannelModel ch0 = ch74(0.0);
    CHECK(region_bound_semi_analytic(s, ch0, Region::sphere(1000.0), true).value <
          region_bound_semi_analytic(s, ch0, Region::sphere(1000.0), false).value);
}

TEST_CASE("optimized sphere and cone never exceed the union bound") {
    const DistanceSpectrum s = enumerate_spectrum(hamming74());
    for (double db = 0.0; db <= 6.0; db += 1.0) {
        const ChannelModel ch = ch74(db);
        const double ub = std::fmin(1.0, union_bound(s, ch).value());
        const GeometricBound sph = sphere_bound(s, ch);
        const GeometricBound cone = tsb_bound(s, ch);
        CHECK(sph.value <= ub + 1e-12);
        CHECK(cone.value <= ub + 1e-12);
        CHECK(cone.value <= sph.value + 1e-12);
        CHECK(cone.value > 0.0);
    }
}

TEST_CASE("shifted sphere improves on the centered sphere") {
    const DistanceSpectrum s = enumerate_spectrum(hamming74());
    const ChannelModel ch = ch74(1.0);
    const GeometricBound centered = sphere_bound(s, ch);
    const GeometricBound shifted = sphere_bound(s, ch, std::nullopt, true);
    CHECK(shifted.value <= centered.value + 1e-12);
}

TEST_CASE("fixed-region quadrature agrees with the monte carlo evaluator") {
    const LinearCode code = hamming74();
    const DistanceSpectrum s = enumerate_spectrum(code);
    const ChannelModel ch = ch74(2.0);
    // The MC evaluator counts multiplicities, i.e. the unclipped form.
    const Region cone = Region::cone(1.0);
    const double quad = region_bound_semi_analytic(s, ch, cone, false).value;
    const OracleResult mc = region_bound_mc(code, ch, cone, 300000, 99);
    CHECK(std::fabs(quad - mc.estimate) <= 3.0 * mc.std_error);

    const Region sphere = Region::sphere(3.2, -0.5);
    const double quad_s = region_bound_semi_analytic(s, ch, sphere, false).value;
    const OracleResult mc_s = region_bound_mc(code, ch, sphere, 300000, 100);
    CHECK(std::fabs(quad_s - mc_s.estimate) <= 3.0 * mc_s.std_error);

    // At 1 dB, the sphere at its returned optimum against the MC route.
    const ChannelModel ch1 = ch74(1.0);
    const GeometricBound opt = sphere_bound(s, ch1);
    const double quad_opt = region_bound_semi_analytic(s, ch1, opt.region, false).value;
    const OracleResult mc_opt = region_bound_mc(code, ch1, opt.region, 300000, 101);
    CHECK(std::fabs(quad_opt - mc_opt.estimate) <= 3.0 * mc_opt.std_error);
    CHECK(opt.value <= quad_opt + 1e-12);
}

TEST_CASE("geometric bounds stay above the ml error estimate") {
    const LinearCode code = hamming74();
    const DistanceSpectrum s = enumerate_spectrum(code);
    const ChannelModel ch = ch74(3.0);
    const OracleResult ml = mc_ml_awgn(code, ch, 200000, 5);
    const double tsb = tsb_bound(s, ch).value;
    const double sph = sphere_bound(s, ch).value;
    CHECK(tsb >= ml.estimate - 3.0 * ml.std_error);
    CHECK(sph >= ml.estimate - 3.0 * ml.std_error);
}

TEST_CASE("argument and guard errors") {
    const DistanceSpectrum s = enumerate_spectrum(hamming74());
    const LinearCode code = hamming74();
    CHECK_THROWS_AS(tsb_bound(s, ChannelModel::bsc(0.1)), Error);
    CHECK_THROWS_AS(tsb_bound(s, ch74(2.0), 2.0), Error);  // angle outside (0, pi/2)
    CHECK_THROWS_AS(region_bound_mc(code, ch74(2.0), Region::whole_space(), 100, 1), Error);
    DistanceSpectrum tiny;
    tiny.n = 2;
    tiny.k = 1;
    tiny.terms[0] = 1.0L;
    tiny.terms[2] = 1.0L;
    CHECK_THROWS_AS(tsb_bound(tiny, ChannelModel::biawgn(2.0, 0.5)), Error);
}
