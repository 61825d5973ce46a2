#include "mlbc/linear_code.hpp"

#include <bit>
#include <fstream>
#include <sstream>

#include "mlbc/errors.hpp"

namespace mlbc {

unsigned popcount_words(const std::vector<std::uint64_t>& words) {
    unsigned w = 0;
    for (std::uint64_t x : words) w += static_cast<unsigned>(std::popcount(x));
    return w;
}

namespace {

// Row rank over GF(2) by elimination on a copy.
std::size_t gf2_rank(std::vector<std::vector<std::uint64_t>> m, std::size_t n) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < m.size(); ++col) {
        const std::size_t w = col / 64;
        const std::uint64_t mask = std::uint64_t{1} << (col % 64);
        std::size_t pivot = rank;
        while (pivot < m.size() && !(m[pivot][w] & mask)) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[rank], m[pivot]);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r != rank && (m[r][w] & mask)) {
                for (std::size_t i = 0; i < m[r].size(); ++i) m[r][i] ^= m[rank][i];
            }
        }
        ++rank;
    }
    return rank;
}

}  // namespace

LinearCode LinearCode::from_rows(std::size_t n,
                                 const std::vector<std::vector<std::uint8_t>>& rows) {
    if (n == 0 || rows.empty() || rows.size() > n)
        fail(ErrorCode::invalid_argument, "LinearCode: need 0 < k <= n");
    if (rows.size() > 63) fail(ErrorCode::size_guard, "LinearCode: k > 63 unsupported");
    LinearCode c;
    c.n_ = n;
    c.words_ = (n + 63) / 64;
    c.rows_.reserve(rows.size());
    for (const auto& r : rows) {
        if (r.size() != n) fail(ErrorCode::invalid_argument, "LinearCode: row length != n");
        std::vector<std::uint64_t> words(c.words_, 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (r[i] > 1) fail(ErrorCode::invalid_argument, "LinearCode: entries must be 0/1");
            if (r[i]) words[i / 64] |= std::uint64_t{1} << (i % 64);
        }
        c.rows_.push_back(std::move(words));
    }
    if (gf2_rank(c.rows_, n) != c.rows_.size())
        fail(ErrorCode::parse_error, "LinearCode: generator rows are linearly dependent");
    c.info_positions_.resize(c.rows_.size());
    for (std::size_t i = 0; i < c.rows_.size(); ++i) c.info_positions_[i] = i;
    return c;
}

LinearCode LinearCode::parse(const std::string& text) {
    std::istringstream in(text);
    std::size_t n = 0, k = 0;
    if (!(in >> n >> k)) fail(ErrorCode::parse_error, "code file: missing 'n k' header");
    if (k == 0 || n == 0 || k > n) fail(ErrorCode::parse_error, "code file: need 0 < k <= n");
    std::vector<std::vector<std::uint8_t>> rows;
    std::string line;
    while (rows.size() < k && in >> line) {
        if (line.size() != n)
            fail(ErrorCode::parse_error, "code file: generator row has wrong length");
        std::vector<std::uint8_t> row(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (line[i] != '0' && line[i] != '1')
                fail(ErrorCode::parse_error, "code file: generator rows must be 0/1");
            row[i] = line[i] == '1';
        }
        rows.push_back(std::move(row));
    }
    if (rows.size() != k) fail(ErrorCode::parse_error, "code file: fewer than k generator rows");
    return from_rows(n, rows);
}

LinearCode LinearCode::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::io_error, "cannot open code file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string LinearCode::to_text() const {
    std::ostringstream out;
    out << n_ << ' ' << k() << '\n';
    for (std::size_t r = 0; r < k(); ++r) {
        for (std::size_t c = 0; c < n_; ++c) out << (generator_bit(r, c) ? '1' : '0');
        out << '\n';
    }
    return out.str();
}

void LinearCode::store(const std::string& path) const {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::io_error, "cannot write code file: " + path);
    out << to_text();
}

bool LinearCode::generator_bit(std::size_t row, std::size_t col) const {
    return (rows_[row][col / 64] >> (col % 64)) & 1;
}

bool LinearCode::is_systematic() const {
    for (std::size_t r = 0; r < k(); ++r) {
        for (std::size_t j = 0; j < k(); ++j) {
            if (generator_bit(r, info_positions_[j]) != (r == j)) return false;
        }
    }
    return true;
}

void LinearCode::set_info_mask(std::vector<std::size_t> positions) {
    if (positions.size() != k())
        fail(ErrorCode::invalid_argument, "info mask must list exactly k positions");
    for (std::size_t p : positions)
        if (p >= n_) fail(ErrorCode::invalid_argument, "info mask position out of range");
    info_positions_ = std::move(positions);
}

std::vector<std::uint64_t> LinearCode::codeword(std::uint64_t message) const {
    std::vector<std::uint64_t> cw(words_, 0);
    for (std::size_t r = 0; r < k(); ++r) {
        if ((message >> r) & 1) {
            for (std::size_t w = 0; w < words_; ++w) cw[w] ^= rows_[r][w];
        }
    }
    return cw;
}

unsigned LinearCode::codeword_weight(std::uint64_t message) const {
    return popcount_words(codeword(message));
}

std::vector<std::vector<std::uint8_t>> LinearCode::parity_check_rows() const {
    const std::size_t n = n_, kk = k();
    // Reduce a copy of G to RREF, tracking pivot columns.
    std::vector<std::vector<std::uint8_t>> g(kk, std::vector<std::uint8_t>(n));
    for (std::size_t r = 0; r < kk; ++r)
        for (std::size_t c = 0; c < n; ++c) g[r][c] = generator_bit(r, c);
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < kk; ++col) {
        std::size_t p = row;
        while (p < kk && !g[p][col]) ++p;
        if (p == kk) continue;
        std::swap(g[row], g[p]);
        for (std::size_t r = 0; r < kk; ++r) {
            if (r != row && g[r][col]) {
                for (std::size_t c = 0; c < n; ++c) g[r][c] ^= g[row][c];
            }
        }
        pivots.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    // H row per free column f: H[f] = 1 at f, and at pivot column p_r the
    // RREF entry g[r][f] (so that G H^T = 0).
    std::vector<std::vector<std::uint8_t>> h(free_cols.size(), std::vector<std::uint8_t>(n, 0));
    for (std::size_t i = 0; i < free_cols.size(); ++i) {
        h[i][free_cols[i]] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) h[i][pivots[r]] = g[r][free_cols[i]];
    }
    return h;
}

}  // namespace mlbc
