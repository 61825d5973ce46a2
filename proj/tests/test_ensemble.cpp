#include <doctest.h>

#include <cmath>
#include <map>

#include "mlbc/convolutional.hpp"
#include "mlbc/ensemble.hpp"
#include "mlbc/numerics.hpp"
#include "mlbc/errors.hpp"
#include "mlbc/oracles.hpp"

using namespace mlbc;

namespace {

ConvolutionalComponent accumulator(Termination term = Termination::terminate_to_zero) {
    // 1/(1+D): feedback 1+D, feedforward 1.
    return ConvolutionalComponent::from_polynomials(0b11, 0b01, term);
}

ConvolutionalComponent rsc_37_21(Termination term = Termination::terminate_to_zero) {
    return ConvolutionalComponent::from_octal("37", "21", term);
}

// Brute-force component IOWEF via the bit-serial encoder.
std::map<std::pair<unsigned, unsigned>, long double> iowef_oracle(
    const ConvolutionalComponent& comp, unsigned N) {
    std::map<std::pair<unsigned, unsigned>, long double> table;
    std::vector<std::uint8_t> input(N);
    for (std::uint32_t bits = 0; bits < (1u << N); ++bits) {
        for (unsigned i = 0; i < N; ++i) input[i] = (bits >> i) & 1;
        const auto e = comp.encode(input);
        if (comp.termination == Termination::terminate_to_zero) REQUIRE(e.final_state == 0);
        table[{e.input_weight, e.parity_weight}] += 1.0L;
    }
    return table;
}

}  // namespace

TEST_CASE("octal polynomial notation") {
    const ConvolutionalComponent c = rsc_37_21();
    CHECK(c.memory == 4);
    CHECK(c.feedback == 0b11111u);    // 1 + D + D^2 + D^3 + D^4
    CHECK(c.feedforward == 0b10001u); // 1 + D^4
    const ConvolutionalComponent a = ConvolutionalComponent::from_octal("3", "2", Termination::terminate_to_zero);
    CHECK(a.memory == 1);
    CHECK(a.feedback == 0b11u);
    CHECK(a.feedforward == 0b01u);
    // Feedback without a constant term (expressible in binary notation only).
    CHECK_THROWS_AS(ConvolutionalComponent::from_polynomials(0b10, 0b01, Termination::truncate),
                    Error);
    CHECK_THROWS_AS(ConvolutionalComponent::from_octal("9", "1", Termination::truncate), Error);
}

TEST_CASE("accumulator encoding by hand") {
    const ConvolutionalComponent acc = accumulator();
    const std::vector<std::uint8_t> in100{1, 0, 0};
    const auto e = acc.encode(in100);
    CHECK(e.parity == std::vector<std::uint8_t>{1, 1, 1});
    CHECK(e.termination_bits == std::vector<std::uint8_t>{1, 0});
    CHECK(e.input_weight == 1);
    CHECK(e.parity_weight == 4);

    const std::vector<std::uint8_t> in010{0, 1, 0};
    CHECK(acc.encode(in010).parity == std::vector<std::uint8_t>{0, 1, 1});
    const std::vector<std::uint8_t> in001{0, 0, 1};
    CHECK(acc.encode(in001).parity == std::vector<std::uint8_t>{0, 0, 1});
    const std::vector<std::uint8_t> in110{1, 1, 0};
    CHECK(acc.encode(in110).parity == std::vector<std::uint8_t>{1, 0, 0});
}

TEST_CASE("accumulator iowef at N=3 matches brute force and hand table") {
    const ConvolutionalComponent acc = accumulator();
    const ConvIowefResult r = conv_iowef(acc, 3, 3, 16);
    CHECK_FALSE(r.w_truncated);
    CHECK_FALSE(r.j_truncated);
    const auto oracle = iowef_oracle(acc, 3);
    CHECK(r.iowef.terms.size() == oracle.size());
    for (const auto& [wj, v] : oracle) CHECK(r.iowef.terms.at(wj) == v);
    // Hand enumeration, termination bits counted in the parity weight.
    CHECK(r.iowef.terms.at({0, 0}) == 1.0L);
    CHECK(r.iowef.terms.at({1, 2}) == 1.0L);
    CHECK(r.iowef.terms.at({1, 3}) == 1.0L);
    CHECK(r.iowef.terms.at({1, 4}) == 1.0L);
    CHECK(r.iowef.terms.at({2, 1}) == 2.0L);
    CHECK(r.iowef.terms.at({2, 2}) == 1.0L);
    CHECK(r.iowef.terms.at({3, 3}) == 1.0L);
}

TEST_CASE("all-zero input contributes A_{0,0} = 1") {
    const ConvIowefResult r = conv_iowef(rsc_37_21(), 8, 8, 64);
    CHECK(r.iowef.terms.at({0, 0}) == 1.0L);
}

TEST_CASE("rsc(37,21) iowef matches exhaustive enumeration at N=16") {
    const ConvolutionalComponent c = rsc_37_21();
    const ConvIowefResult r = conv_iowef(c, 16, 16, 64);
    const auto oracle = iowef_oracle(c, 16);
    CHECK(r.iowef.terms.size() == oracle.size());
    for (const auto& [wj, v] : oracle) {
        REQUIRE(r.iowef.terms.count(wj) == 1);
        CHECK(r.iowef.terms.at(wj) == v);  // exact integer counts
    }
    CHECK(r.iowef.total() == 65536.0L);
}

TEST_CASE("truncated termination matches enumeration") {
    const ConvolutionalComponent c = rsc_37_21(Termination::truncate);
    const ConvIowefResult r = conv_iowef(c, 12, 12, 32);
    const auto oracle = iowef_oracle(c, 12);
    CHECK(r.iowef.terms.size() == oracle.size());
    for (const auto& [wj, v] : oracle) CHECK(r.iowef.terms.at(wj) == v);
}

TEST_CASE("caps below the minimum nonzero weights yield a warning") {
    const ConvIowefResult r = conv_iowef(accumulator(), 3, 3, 0);
    CHECK(r.j_truncated);
    CHECK(r.empty_beyond_zero);
    CHECK(r.iowef.terms.size() == 1);  // only the zero path survives
}

TEST_CASE("uniform interleaver combine: identity element") {
    const ConvIowefResult a1 = conv_iowef(accumulator(), 5, 5, 16);
    // Second encoder emitting nothing: A_{w,0} = C(N,w).
    Iowef delta;
    delta.n = 5;
    delta.k = 5;
    delta.convention = OutputWeightConvention::parity;
    for (unsigned w = 0; w <= 5; ++w) delta.terms[{w, 0}] = binomial_ld(5, w);
    const Iowef combined = uniform_interleaver_combine(a1.iowef, delta, 5);
    CHECK(combined.terms.size() == a1.iowef.terms.size());
    for (const auto& [wj, v] : a1.iowef.terms) {
        CHECK(static_cast<double>(combined.terms.at(wj)) ==
              doctest::Approx(static_cast<double>(v)).epsilon(1e-15));
    }
}

TEST_CASE("uniform interleaver combine is symmetric and checks N") {
    const Iowef a = conv_iowef(accumulator(), 4, 4, 12).iowef;
    const Iowef b = conv_iowef(rsc_37_21(), 4, 4, 20).iowef;
    const Iowef ab = uniform_interleaver_combine(a, b, 4);
    const Iowef ba = uniform_interleaver_combine(b, a, 4);
    CHECK(ab.terms.size() == ba.terms.size());
    for (const auto& [wj, v] : ab.terms)
        CHECK(static_cast<double>(ba.terms.at(wj)) == doctest::Approx(static_cast<double>(v)).epsilon(1e-14));
    CHECK_THROWS_AS(uniform_interleaver_combine(a, conv_iowef(accumulator(), 5, 5, 16).iowef, 4),
                    Error);
}

TEST_CASE("uniform interleaver combine equals permutation averaging at N=4") {
    const ConvolutionalComponent acc = accumulator();
    const Iowef a = conv_iowef(acc, 4, 4, 12).iowef;
    const Iowef combined = uniform_interleaver_combine(a, a, 4);
    const Iowef oracle = permute_average_iowef(acc, acc, 4);
    CHECK(combined.terms.size() == oracle.terms.size());
    for (const auto& [wj, v] : oracle.terms) {
        REQUIRE(combined.terms.count(wj) == 1);
        CHECK(static_cast<double>(combined.terms.at(wj)) ==
              doctest::Approx(static_cast<double>(v)).epsilon(1e-12));
    }
}

TEST_CASE("mass conservation of the unpunctured ensemble") {
    const ConvolutionalComponent acc = accumulator();
    const Iowef a = conv_iowef(acc, 10, 10, 12).iowef;
    const Iowef combined = uniform_interleaver_combine(a, a, 10);
    CHECK(static_cast<double>(combined.total()) == doctest::Approx(1024.0).epsilon(1e-13));
}

TEST_CASE("ensemble spectrum: zero term, cap determinism, oracle check") {
    EnsembleSpec spec;
    spec.component1 = rsc_37_21();
    spec.component2 = rsc_37_21();
    spec.interleaver_length = 6;

    const EnsembleSpectrumResult full = ensemble_spectrum(spec, 6, 64);
    CHECK(static_cast<double>(full.spectrum.at(0)) == 1.0);
    CHECK(static_cast<double>(full.spectrum.total()) == doctest::Approx(64.0).epsilon(1e-12));
    CHECK(static_cast<double>(full.missing_mass) == doctest::Approx(0.0).epsilon(1e-9));

    // Recomputing with smaller caps never changes already-reported entries.
    const EnsembleSpectrumResult capped = ensemble_spectrum(spec, 6, 12);
    for (const auto& [d, v] : capped.spectrum.terms) {
        CHECK(static_cast<double>(full.spectrum.at(d)) ==
              doctest::Approx(static_cast<double>(v)).epsilon(1e-13));
    }
    CHECK(capped.missing_mass > 0.0L);

    // Permutation-average oracle for the marginal spectrum.
    const Iowef oracle = permute_average_iowef(spec.component1, spec.component2, 6);
    const DistanceSpectrum oracle_marginal = oracle.marginal_spectrum();
    for (const auto& [d, v] : oracle_marginal.terms) {
        CHECK(static_cast<double>(full.spectrum.at(d)) ==
              doctest::Approx(static_cast<double>(v)).epsilon(1e-10));
    }
    CHECK(!full.assumptions.empty());
}

TEST_CASE("ensemble spec json parsing") {
    const std::string text = R"({
      "interleaver_length": 8,
      "component1": {"notation": "octal", "feedback": "37", "feedforward": "21"},
      "component2": {"notation": "octal", "feedback": "37", "feedforward": "21"}
    })";
    const EnsembleSpec spec = EnsembleSpec::parse(text);
    CHECK(spec.interleaver_length == 8);
    CHECK(spec.component1.memory == 4);
    CHECK(spec.block_length() == 8 + 16 + 16);
    CHECK(spec.rate() == doctest::Approx(8.0 / 40.0));
    CHECK_THROWS_AS(EnsembleSpec::parse("{}"), Error);
}
