#ifndef MLBC_CONVOLUTIONAL_HPP
#define MLBC_CONVOLUTIONAL_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mlbc/spectrum.hpp"

namespace mlbc {

enum class Termination { terminate_to_zero, truncate };

/// Rate-1/2-style recursive systematic convolutional component: one
/// systematic stream and one parity stream, with generator
/// [1, p(D)/q(D)]. Polynomial bit i is the coefficient of D^i; the
/// feedback q must have q_0 = 1. Feedforward-only codes use q = 1.
struct ConvolutionalComponent {
    std::uint32_t feedback = 1;
    std::uint32_t feedforward = 1;
    unsigned memory = 0;
    bool systematic = true;
    Termination termination = Termination::terminate_to_zero;

    static ConvolutionalComponent from_polynomials(std::uint32_t feedback,
                                                   std::uint32_t feedforward,
                                                   Termination term);
    /// Octal register notation: the octal value's binary expansion, read
    /// left to right, gives D^0..D^nu; the feedforward is left-padded to
    /// the feedback's length. (37, 21) is [1, (1+D^4)/(1+D+D^2+D^3+D^4)].
    static ConvolutionalComponent from_octal(const std::string& feedback_octal,
                                             const std::string& feedforward_octal,
                                             Termination term);
    static ConvolutionalComponent parse(const std::string& json_text);
    static ConvolutionalComponent load(const std::string& path);

    unsigned state_count() const { return 1u << memory; }

    struct Step {
        unsigned next_state;
        unsigned parity_bit;
    };
    Step step(unsigned state, unsigned input) const;
    /// Input bit that drives the internal bit to zero (trellis tail).
    unsigned termination_input(unsigned state) const;

    struct EncodeResult {
        std::vector<std::uint8_t> parity;            // parity bits, info steps
        std::vector<std::uint8_t> termination_bits;  // tail, interleaved (input, parity)
        unsigned input_weight = 0;
        unsigned parity_weight = 0;  // parity stream + all tail bits
        unsigned final_state = 0;
    };
    EncodeResult encode(std::span<const std::uint8_t> input) const;

    /// Transmitted parity-stream length for an N-bit input block
    /// (termination tail bits included).
    unsigned parity_length(unsigned n_in) const {
        return n_in + (termination == Termination::terminate_to_zero ? 2 * memory : 0);
    }
};

struct ConvIowefResult {
    Iowef iowef;          // k = input length, parity-weight convention
    bool w_truncated = false;
    bool j_truncated = false;
    /// Set when the caps removed every nonzero-input path.
    bool empty_beyond_zero = false;
};

/// Exact A_{w,j} for w <= w_max, j <= j_max by dynamic programming over
/// (time, state, input weight, parity weight). Counts in extended
/// precision; exact integers wherever they fit the mantissa.
ConvIowefResult conv_iowef(const ConvolutionalComponent& comp, unsigned n_in, unsigned w_max,
                           unsigned j_max);

}  // namespace mlbc

#endif
