#ifndef MLBC_LINEAR_CODE_HPP
#define MLBC_LINEAR_CODE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mlbc {

/// Binary linear block code given by an explicit k x n generator matrix
/// over GF(2). Rows are stored as 64-bit word vectors, bit i of the
/// codeword in word i/64, bit position i%64.
class LinearCode {
  public:
    /// rows[r][c] in {0,1}; validates 0 < k <= n and full row rank.
    static LinearCode from_rows(std::size_t n, const std::vector<std::vector<std::uint8_t>>& rows);

    /// Text format: first line "n k", then k lines of n characters in {0,1}.
    static LinearCode parse(const std::string& text);
    static LinearCode load(const std::string& path);
    std::string to_text() const;
    void store(const std::string& path) const;

    std::size_t n() const { return n_; }
    std::size_t k() const { return rows_.size(); }
    double rate() const { return static_cast<double>(k()) / static_cast<double>(n()); }
    std::size_t words_per_row() const { return words_; }

    bool generator_bit(std::size_t row, std::size_t col) const;

    /// True when columns info_positions() of the generator form the
    /// identity, so information weight equals codeword weight on those
    /// positions. Default positions are 0..k-1; an explicit mask overrides.
    bool is_systematic() const;
    void set_info_mask(std::vector<std::size_t> positions);
    const std::vector<std::size_t>& info_positions() const { return info_positions_; }

    /// Codeword for a k-bit message (bit i of message selects row i).
    std::vector<std::uint64_t> codeword(std::uint64_t message) const;
    unsigned codeword_weight(std::uint64_t message) const;

    /// Visits all 2^k codewords in Gray order: f(message, word_span).
    /// One row XOR per step. No size guard here; callers guard.
    template <typename F>
    void for_each_codeword(F&& f) const {
        std::vector<std::uint64_t> cw(words_, 0);
        f(std::uint64_t{0}, cw);
        const std::uint64_t total = std::uint64_t{1} << k();
        for (std::uint64_t i = 1; i < total; ++i) {
            const unsigned bit = static_cast<unsigned>(__builtin_ctzll(i));
            for (std::size_t w = 0; w < words_; ++w) cw[w] ^= rows_[bit][w];
            f(i ^ (i >> 1), cw);
        }
    }

    /// Parity-check matrix rows ((n-k) x n) from the generator, via
    /// Gaussian elimination with column pivoting.
    std::vector<std::vector<std::uint8_t>> parity_check_rows() const;

    const std::vector<std::vector<std::uint64_t>>& rows() const { return rows_; }

  private:
    LinearCode() = default;
    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::vector<std::vector<std::uint64_t>> rows_;
    std::vector<std::size_t> info_positions_;
};

unsigned popcount_words(const std::vector<std::uint64_t>& words);

}  // namespace mlbc

#endif
