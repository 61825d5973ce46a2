#ifndef MLBC_ENSEMBLE_HPP
#define MLBC_ENSEMBLE_HPP

#include <string>
#include <vector>

#include "mlbc/convolutional.hpp"
#include "mlbc/spectrum.hpp"

namespace mlbc {

/// Parallel concatenation of two systematic convolutional components
/// through a uniform interleaver of length N; no puncturing.
struct EnsembleSpec {
    ConvolutionalComponent component1;
    ConvolutionalComponent component2;
    unsigned interleaver_length = 0;

    /// n = systematic block + both parity streams (termination included).
    unsigned block_length() const {
        return interleaver_length + component1.parity_length(interleaver_length) +
               component2.parity_length(interleaver_length);
    }
    double rate() const {
        return static_cast<double>(interleaver_length) / block_length();
    }

    static EnsembleSpec parse(const std::string& json_text, const std::string& base_dir = "");
    static EnsembleSpec load(const std::string& path);
};

/// Ensemble-average IOWEF of the parallel concatenation:
///   A_{w,j} = sum_{j1+j2=j} A1_{w,j1} A2_{w,j2} / C(N,w),
/// where j counts both parity streams. Component tables must share the
/// same input length N.
Iowef uniform_interleaver_combine(const Iowef& a1, const Iowef& a2, unsigned n_interleaver);

struct EnsembleSpectrumResult {
    DistanceSpectrum spectrum;      // total weight d = w + j1 + j2
    Iowef iowef;                    // average table, parity convention
    long double computed_mass = 0;  // sum of retained A_{w,d}
    long double missing_mass = 0;   // 2^N minus computed; lives at d > d_max
    bool w_truncated = false;
    bool j_truncated = false;
    std::vector<std::string> assumptions;
};

/// Average spectrum with caps w <= w_max, d <= d_max. Setting
/// w_max >= d_max keeps every retained d exact, so the whole missing mass
/// sits beyond d_max.
EnsembleSpectrumResult ensemble_spectrum(const EnsembleSpec& spec, unsigned w_max,
                                         unsigned d_max);

}  // namespace mlbc

#endif
