#ifndef MLBC_ORACLES_HPP
#define MLBC_ORACLES_HPP

#include <cstdint>

#include "mlbc/channel.hpp"
#include "mlbc/convolutional.hpp"
#include "mlbc/linear_code.hpp"
#include "mlbc/spectrum.hpp"

namespace mlbc {

struct OracleResult {
    double estimate = 0.0;
    double std_error = 0.0;  // zero for exact results
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

/// Exact ML block error probability on the BSC with uniformly randomized
/// tie-breaking. Coset argument: P(correct) = sum over cosets of
/// p^w_min (1-p)^(n-w_min); the tie multiplicity cancels.
/// Guards: n <= 20 and k <= 16.
OracleResult exact_ml_bsc(const LinearCode& code, double crossover);

enum class ErrorMetric { block, bit };

/// Monte-Carlo ML decoding on the BIAWGN channel, conditioned on the
/// all-zero codeword (valid for linear codes on this output-symmetric
/// channel). Counter-based per-sample streams and fixed 4096-sample
/// reduction blocks make the result bit-identical for any worker count.
/// Guards: k <= 16, samples >= 1e4.
OracleResult mc_ml_awgn(const LinearCode& code, const ChannelModel& channel,
                        std::uint64_t samples, std::uint64_t seed,
                        ErrorMetric metric = ErrorMetric::block, unsigned workers = 1);

/// Exact interleaver-averaged IOWEF by enumerating every (input,
/// permutation) pair; the ground truth for uniform_interleaver_combine.
/// Guard: N <= 6.
Iowef permute_average_iowef(const ConvolutionalComponent& c1, const ConvolutionalComponent& c2,
                            unsigned n_interleaver);

}  // namespace mlbc

#endif
