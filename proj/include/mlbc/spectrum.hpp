#ifndef MLBC_SPECTRUM_HPP
#define MLBC_SPECTRUM_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mlbc/linear_code.hpp"

namespace mlbc {

/// Weight enumerator {A_d}. Counts are held in extended precision so that
/// specific codes (integer counts) and ensemble averages (rationals with
/// binomial denominators, up to ~2^N in magnitude) share one type.
struct DistanceSpectrum {
    std::size_t n = 0;
    long long k = -1;  // information length when known, -1 otherwise
    std::map<unsigned, long double> terms;

    long double at(unsigned d) const;
    long double total() const;
    /// Smallest d >= 1 with A_d > 0; fails if none.
    unsigned min_nonzero_distance() const;

    std::string to_json() const;
    static DistanceSpectrum from_json(const std::string& text);
    static DistanceSpectrum load(const std::string& path);
    void store(const std::string& path) const;
};

enum class OutputWeightConvention { parity, codeword };

/// Input-output weight enumerator A_{w,j}: w = information weight, j =
/// output weight under the declared convention (parity: total codeword
/// weight is w + j; codeword: it is j).
struct Iowef {
    std::size_t n = 0;
    std::size_t k = 0;
    OutputWeightConvention convention = OutputWeightConvention::parity;
    std::map<std::pair<unsigned, unsigned>, long double> terms;

    long double total() const;
    unsigned total_weight(unsigned w, unsigned j) const {
        return convention == OutputWeightConvention::parity ? w + j : j;
    }

    /// Marginal over w: the distance spectrum implied by the convention.
    DistanceSpectrum marginal_spectrum() const;
    /// sum_w (w/k) A_{w,j} grouped by total weight; the bit-error analogue
    /// of the distance spectrum.
    DistanceSpectrum bit_weighted_spectrum() const;

    std::string to_json() const;
    static Iowef from_json(const std::string& text);
    static Iowef load(const std::string& path);
    void store(const std::string& path) const;
};

/// Exhaustive spectrum of an explicit code (guard: k <= 28).
DistanceSpectrum enumerate_spectrum(const LinearCode& code);

/// Exhaustive IOWEF of a systematic code (or one with an explicit
/// information-bit mask); parity-weight convention.
Iowef enumerate_iowef(const LinearCode& code);

/// Checks A_0 = 1, sum A_d = 2^k and integrality, as expected of a
/// specific (non-ensemble) code's spectrum.
void validate_specific_code_spectrum(const DistanceSpectrum& s);

}  // namespace mlbc

#endif
