#include "mlbc/oracles.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <numeric>
#include <thread>

#include "mlbc/errors.hpp"
#include "mlbc/numerics.hpp"
#include "mlbc/rng.hpp"

namespace mlbc {

OracleResult exact_ml_bsc(const LinearCode& code, double crossover) {
    if (!(crossover > 0.0 && crossover < 0.5))
        fail(ErrorCode::invalid_argument, "exact_ml_bsc: crossover must be in (0, 1/2)");
    const std::size_t n = code.n(), k = code.k();
    if (n > 20 || k > 16) fail(ErrorCode::size_guard, "exact_ml_bsc: needs n <= 20 and k <= 16");
    const auto h = code.parity_check_rows();
    const std::size_t r = h.size();
    // Column syndromes: flipping bit i toggles syndrome bits col[i].
    std::vector<std::uint32_t> col(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t row = 0; row < r; ++row)
            if (h[row][i]) col[i] |= 1u << row;

    // Pass 1: per-coset minimum weight and its multiplicity.
    std::vector<std::uint8_t> min_weight(std::size_t{1} << r, static_cast<std::uint8_t>(n + 1));
    std::vector<std::uint32_t> min_count(std::size_t{1} << r, 0);
    std::uint32_t syndrome = 0;
    min_weight[0] = 0;
    min_count[0] = 1;
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << n); ++i) {
        syndrome ^= col[static_cast<std::size_t>(std::countr_zero(i))];
        const auto w = static_cast<std::uint8_t>(std::popcount(i ^ (i >> 1)));
        if (w < min_weight[syndrome]) {
            min_weight[syndrome] = w;
            min_count[syndrome] = 1;
        } else if (w == min_weight[syndrome]) {
            ++min_count[syndrome];
        }
    }
    // Pass 2: error mass. A received word with error pattern e decodes
    // correctly with probability [|e| = w_min] / n_min (uniform choice
    // among the minimum-distance codewords), so every pattern contributes
    // a non-negative term and tiny probabilities stay exact.
    const double logp = std::log(crossover);
    const double logq = std::log1p(-crossover);
    LogSumExp err;
    syndrome = 0;
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << n); ++i) {
        syndrome ^= col[static_cast<std::size_t>(std::countr_zero(i))];
        const auto w = static_cast<unsigned>(std::popcount(i ^ (i >> 1)));
        const double log_prob = w * logp + (n - w) * logq;
        if (w > min_weight[syndrome]) {
            err.add(log_prob);
        } else {
            const double miss = 1.0 - 1.0 / min_count[syndrome];
            if (miss > 0.0) err.add(log_prob + std::log(miss));
        }
    }
    OracleResult res;
    res.estimate = err.empty() ? 0.0 : std::exp(err.value());
    return res;
}

namespace {

struct BlockSums {
    double sum = 0.0;
    double sum_sq = 0.0;
};

}  // namespace

OracleResult mc_ml_awgn(const LinearCode& code, const ChannelModel& channel,
                        std::uint64_t samples, std::uint64_t seed, ErrorMetric metric,
                        unsigned workers) {
    if (channel.kind() != ChannelKind::biawgn)
        fail(ErrorCode::unsupported, "mc_ml_awgn: BIAWGN only");
    if (code.k() > 16) fail(ErrorCode::size_guard, "mc_ml_awgn: needs k <= 16");
    if (samples < 10000) fail(ErrorCode::invalid_argument, "mc_ml_awgn: needs samples >= 1e4");
    const std::size_t n = code.n(), k = code.k();
    const double m = channel.signal_amplitude();

    // Support lists of all nonzero codewords, with their message weights.
    struct Competitor {
        std::vector<std::uint16_t> support;
        unsigned message_weight;
    };
    std::vector<Competitor> comp;
    comp.reserve((std::size_t{1} << k) - 1);
    code.for_each_codeword([&](std::uint64_t message, const std::vector<std::uint64_t>& cw) {
        if (message == 0) return;
        Competitor c;
        c.message_weight = static_cast<unsigned>(std::popcount(message));
        for (std::size_t i = 0; i < n; ++i)
            if ((cw[i / 64] >> (i % 64)) & 1) c.support.push_back(static_cast<std::uint16_t>(i));
        comp.push_back(std::move(c));
    });

    constexpr std::uint64_t kBlock = 4096;
    const std::uint64_t blocks = (samples + kBlock - 1) / kBlock;
    std::vector<BlockSums> partial(blocks);
    std::atomic<std::uint64_t> next_block{0};

    const auto run_block = [&](std::uint64_t b) {
        const std::uint64_t lo = b * kBlock;
        const std::uint64_t hi = std::min(samples, lo + kBlock);
        BlockSums acc;
        std::vector<double> r(n);
        for (std::uint64_t s = lo; s < hi; ++s) {
            CounterRng rng(seed, s);
            for (std::size_t i = 0; i < n; ++i) r[i] = m + rng.next_normal();
            // T(c) = sum of r over the support; the all-zero codeword scores 0.
            double best = 0.0;
            unsigned best_msg_weight = 0;
            for (const Competitor& c : comp) {
                double t = 0.0;
                for (std::uint16_t pos : c.support) t += r[pos];
                if (t < best) {
                    best = t;
                    best_msg_weight = c.message_weight;
                }
            }
            const double x = metric == ErrorMetric::block
                                 ? (best < 0.0 ? 1.0 : 0.0)
                                 : static_cast<double>(best_msg_weight) / static_cast<double>(k);
            acc.sum += x;
            acc.sum_sq += x * x;
        }
        partial[b] = acc;
    };

    workers = std::max(1u, workers);
    if (workers == 1) {
        for (std::uint64_t b = 0; b < blocks; ++b) run_block(b);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back([&] {
                for (std::uint64_t b = next_block.fetch_add(1); b < blocks;
                     b = next_block.fetch_add(1))
                    run_block(b);
            });
        }
        for (auto& th : pool) th.join();
    }
    // Fixed-order pairwise tree over blocks keeps the reduction identical
    // for every worker count.
    std::vector<BlockSums> level(partial);
    while (level.size() > 1) {
        std::vector<BlockSums> up((level.size() + 1) / 2);
        for (std::size_t i = 0; i < up.size(); ++i) {
            up[i] = level[2 * i];
            if (2 * i + 1 < level.size()) {
                up[i].sum += level[2 * i + 1].sum;
                up[i].sum_sq += level[2 * i + 1].sum_sq;
            }
        }
        level.swap(up);
    }
    const double mean = level[0].sum / static_cast<double>(samples);
    const double var =
        std::max(0.0, level[0].sum_sq / static_cast<double>(samples) - mean * mean);
    OracleResult res;
    res.estimate = mean;
    res.std_error = std::sqrt(var / static_cast<double>(samples));
    res.samples = samples;
    res.seed = seed;
    return res;
}

Iowef permute_average_iowef(const ConvolutionalComponent& c1, const ConvolutionalComponent& c2,
                            unsigned n_interleaver) {
    const unsigned N = n_interleaver;
    if (N == 0 || N > 6) fail(ErrorCode::size_guard, "permute_average_iowef: needs 1 <= N <= 6");
    std::vector<std::size_t> perm(N);
    std::iota(perm.begin(), perm.end(), 0);
    Iowef out;
    out.n = N + c1.parity_length(N) + c2.parity_length(N);
    out.k = N;
    out.convention = OutputWeightConvention::parity;
    long double n_perms = 0.0L;
    std::vector<std::uint8_t> x(N), xp(N);
    do {
        n_perms += 1.0L;
        for (std::uint32_t bits = 0; bits < (1u << N); ++bits) {
            for (unsigned i = 0; i < N; ++i) x[i] = (bits >> i) & 1;
            for (unsigned i = 0; i < N; ++i) xp[perm[i]] = x[i];
            const auto e1 = c1.encode(x);
            const auto e2 = c2.encode(xp);
            out.terms[{e1.input_weight, e1.parity_weight + e2.parity_weight}] += 1.0L;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (auto& [wj, v] : out.terms) v /= n_perms;
    return out;
}

}  // namespace mlbc
