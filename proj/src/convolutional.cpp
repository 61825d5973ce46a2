#include "mlbc/convolutional.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mlbc/errors.hpp"

namespace mlbc {

namespace {

unsigned parity32(std::uint32_t x) { return std::popcount(x) & 1u; }

std::uint32_t poly_from_octal(const std::string& text, unsigned pad_to_bits) {
    if (text.empty()) fail(ErrorCode::parse_error, "empty polynomial");
    std::uint64_t value = 0;
    for (char c : text) {
        if (c < '0' || c > '7') fail(ErrorCode::parse_error, "bad octal digit in polynomial");
        value = value * 8 + static_cast<unsigned>(c - '0');
        if (value > 0xffffffffULL) fail(ErrorCode::parse_error, "polynomial too long");
    }
    if (value == 0) fail(ErrorCode::parse_error, "zero polynomial");
    unsigned bits = 64 - static_cast<unsigned>(std::countl_zero(value));
    bits = std::max(bits, pad_to_bits);
    // MSB-first expansion maps to coefficients D^0, D^1, ...
    std::uint32_t poly = 0;
    for (unsigned i = 0; i < bits; ++i) {
        if ((value >> (bits - 1 - i)) & 1) poly |= 1u << i;
    }
    return poly;
}

std::uint32_t poly_from_binary(const std::string& text) {
    if (text.empty() || text.size() > 32) fail(ErrorCode::parse_error, "bad binary polynomial");
    std::uint32_t poly = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '1') {
            poly |= 1u << i;
        } else if (text[i] != '0') {
            fail(ErrorCode::parse_error, "binary polynomial must be 0/1 characters");
        }
    }
    return poly;
}

unsigned poly_degree_bits(std::uint32_t p) { return 32 - std::countl_zero(p); }

}  // namespace

ConvolutionalComponent ConvolutionalComponent::from_polynomials(std::uint32_t feedback,
                                                                std::uint32_t feedforward,
                                                                Termination term) {
    if ((feedback & 1u) == 0) fail(ErrorCode::invalid_argument, "feedback must have D^0 term");
    if (feedforward == 0) fail(ErrorCode::invalid_argument, "feedforward must be nonzero");
    ConvolutionalComponent c;
    c.feedback = feedback;
    c.feedforward = feedforward;
    c.memory = std::max(poly_degree_bits(feedback), poly_degree_bits(feedforward)) - 1;
    if (c.memory > 20) fail(ErrorCode::size_guard, "component memory too large");
    c.termination = term;
    return c;
}

ConvolutionalComponent ConvolutionalComponent::from_octal(const std::string& feedback_octal,
                                                          const std::string& feedforward_octal,
                                                          Termination term) {
    const std::uint32_t fb = poly_from_octal(feedback_octal, 0);
    const std::uint32_t ff = poly_from_octal(feedforward_octal, poly_degree_bits(fb));
    return from_polynomials(fb, ff, term);
}

ConvolutionalComponent ConvolutionalComponent::parse(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text, nullptr, false);
    if (j.is_discarded()) fail(ErrorCode::parse_error, "component file: malformed JSON");
    if (!j.contains("feedback") || !j.contains("feedforward"))
        fail(ErrorCode::parse_error, "component file needs 'feedback' and 'feedforward'");
    const std::string notation = j.value("notation", "octal");
    const std::string term_s = j.value("termination", "terminate");
    Termination term;
    if (term_s == "terminate") {
        term = Termination::terminate_to_zero;
    } else if (term_s == "truncate") {
        term = Termination::truncate;
    } else {
        fail(ErrorCode::parse_error, "component termination must be 'terminate' or 'truncate'");
    }
    ConvolutionalComponent c;
    if (notation == "octal") {
        c = from_octal(j["feedback"].get<std::string>(), j["feedforward"].get<std::string>(), term);
    } else if (notation == "binary") {
        c = from_polynomials(poly_from_binary(j["feedback"].get<std::string>()),
                             poly_from_binary(j["feedforward"].get<std::string>()), term);
    } else {
        fail(ErrorCode::parse_error, "component notation must be 'octal' or 'binary'");
    }
    c.systematic = j.value("systematic", true);
    return c;
}

ConvolutionalComponent ConvolutionalComponent::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::io_error, "cannot open component file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

ConvolutionalComponent::Step ConvolutionalComponent::step(unsigned state, unsigned input) const {
    // State bit i-1 holds the internal bit a_{t-i}.
    const unsigned a = input ^ parity32(state & (feedback >> 1));
    const unsigned y = ((feedforward & 1u) & a) ^ parity32(state & (feedforward >> 1));
    const unsigned mask = memory == 0 ? 0u : (1u << memory) - 1u;
    const unsigned next = memory == 0 ? 0u : ((state << 1) | a) & mask;
    return {next, y};
}

unsigned ConvolutionalComponent::termination_input(unsigned state) const {
    return parity32(state & (feedback >> 1));
}

ConvolutionalComponent::EncodeResult ConvolutionalComponent::encode(
    std::span<const std::uint8_t> input) const {
    EncodeResult r;
    unsigned state = 0;
    r.parity.reserve(input.size());
    for (std::uint8_t b : input) {
        if (b > 1) fail(ErrorCode::invalid_argument, "encode: input bits must be 0/1");
        const Step s = step(state, b);
        r.parity.push_back(static_cast<std::uint8_t>(s.parity_bit));
        r.input_weight += b;
        r.parity_weight += s.parity_bit;
        state = s.next_state;
    }
    if (termination == Termination::terminate_to_zero) {
        for (unsigned t = 0; t < memory; ++t) {
            const unsigned b = termination_input(state);
            const Step s = step(state, b);
            r.termination_bits.push_back(static_cast<std::uint8_t>(b));
            r.termination_bits.push_back(static_cast<std::uint8_t>(s.parity_bit));
            r.parity_weight += b + s.parity_bit;
            state = s.next_state;
        }
        if (state != 0) fail(ErrorCode::numeric_failure, "termination failed to reach zero state");
    }
    r.final_state = state;
    return r;
}

ConvIowefResult conv_iowef(const ConvolutionalComponent& comp, unsigned n_in, unsigned w_max,
                           unsigned j_max) {
    if (n_in == 0) fail(ErrorCode::invalid_argument, "conv_iowef: input length must be >= 1");
    w_max = std::min(w_max, n_in);
    j_max = std::min(j_max, comp.parity_length(n_in));
    const unsigned S = comp.state_count();
    const std::size_t wdim = w_max + 1, jdim = j_max + 1;
    const std::size_t slice = static_cast<std::size_t>(S) * wdim * jdim;
    if (slice > (std::size_t{1} << 28))
        fail(ErrorCode::size_guard,
             "conv_iowef: state x weight table too large; lower w_max/j_max");
    std::vector<long double> cur(slice, 0.0L), nxt(slice, 0.0L);
    const auto idx = [&](unsigned s, unsigned w, unsigned j) {
        return (static_cast<std::size_t>(s) * wdim + w) * jdim + j;
    };
    // Precomputed transitions.
    std::vector<ConvolutionalComponent::Step> trans(2 * S);
    for (unsigned s = 0; s < S; ++s)
        for (unsigned b = 0; b < 2; ++b) trans[2 * s + b] = comp.step(s, b);

    ConvIowefResult out;
    cur[idx(0, 0, 0)] = 1.0L;
    for (unsigned t = 0; t < n_in; ++t) {
        std::fill(nxt.begin(), nxt.end(), 0.0L);
        const unsigned w_hi = std::min(w_max, t);
        const unsigned j_hi = std::min(j_max, t);
        for (unsigned s = 0; s < S; ++s) {
            for (unsigned w = 0; w <= w_hi; ++w) {
                const long double* row = &cur[idx(s, w, 0)];
                for (unsigned b = 0; b < 2; ++b) {
                    const unsigned w2 = w + b;
                    const auto [s2, y] = trans[2 * s + b];
                    if (w2 > w_max) {
                        for (unsigned j = 0; j <= j_hi; ++j) {
                            if (row[j] != 0.0L) {
                                out.w_truncated = true;
                                break;
                            }
                        }
                        continue;
                    }
                    if (y > j_max) {
                        for (unsigned j = 0; j <= j_hi; ++j) {
                            if (row[j] != 0.0L) {
                                out.j_truncated = true;
                                break;
                            }
                        }
                        continue;
                    }
                    const unsigned j_end = j_hi + y > j_max ? j_max - y : j_hi;
                    long double* dst = &nxt[idx(s2, w2, y)];
                    for (unsigned j = 0; j <= j_end; ++j) {
                        if (row[j] != 0.0L) dst[j] += row[j];
                    }
                    for (unsigned j = j_end + 1; j <= j_hi; ++j) {
                        if (row[j] != 0.0L) {
                            out.j_truncated = true;
                            break;
                        }
                    }
                }
            }
        }
        cur.swap(nxt);
    }
    if (comp.termination == Termination::terminate_to_zero) {
        for (unsigned t = 0; t < comp.memory; ++t) {
            std::fill(nxt.begin(), nxt.end(), 0.0L);
            for (unsigned s = 0; s < S; ++s) {
                const unsigned b = comp.termination_input(s);
                const auto [s2, y] = trans[2 * s + b];
                const unsigned extra = b + y;
                for (unsigned w = 0; w <= w_max; ++w) {
                    const long double* row = &cur[idx(s, w, 0)];
                    const unsigned j_end = extra > j_max ? 0 : j_max - extra;
                    if (extra <= j_max) {
                        long double* dst = &nxt[idx(s2, w, extra)];
                        for (unsigned j = 0; j <= j_end; ++j) {
                            if (row[j] != 0.0L) dst[j] += row[j];
                        }
                    }
                    for (unsigned j = extra > j_max ? 0 : j_end + 1; j <= j_max; ++j) {
                        if (row[j] != 0.0L) {
                            out.j_truncated = true;
                            break;
                        }
                    }
                }
            }
            cur.swap(nxt);
        }
    }
    Iowef& table = out.iowef;
    table.n = n_in + comp.parity_length(n_in);
    table.k = n_in;
    table.convention = OutputWeightConvention::parity;
    const bool all_states = comp.termination == Termination::truncate;
    for (unsigned s = 0; s < (all_states ? S : 1u); ++s) {
        for (unsigned w = 0; w <= w_max; ++w) {
            for (unsigned j = 0; j <= j_max; ++j) {
                const long double v = cur[idx(s, w, j)];
                if (v != 0.0L) table.terms[{w, j}] += v;
            }
        }
    }
    bool any_nonzero_w = false;
    for (const auto& [wj, v] : table.terms) {
        if (wj.first > 0 && v > 0.0L) {
            any_nonzero_w = true;
            break;
        }
    }
    out.empty_beyond_zero = !any_nonzero_w;
    return out;
}

}  // namespace mlbc
