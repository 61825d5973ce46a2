#include "mlbc/ml_lower.hpp"

#include <bit>
#include <cmath>
#include <vector>

#include "mlbc/errors.hpp"
#include "mlbc/numerics.hpp"
#include "mlbc/optimize.hpp"

namespace mlbc {

namespace {

struct CodewordGeometry {
    std::vector<std::vector<std::uint64_t>> words;
    std::vector<unsigned> weight;
};

CodewordGeometry nonzero_codewords(const LinearCode& code) {
    if (code.k() > 16) fail(ErrorCode::size_guard, "ml_lower_bound: needs k <= 16");
    CodewordGeometry g;
    code.for_each_codeword([&](std::uint64_t message, const std::vector<std::uint64_t>& cw) {
        if (message == 0) return;
        g.words.push_back(cw);
        g.weight.push_back(popcount_words(cw));
    });
    if (g.words.empty()) fail(ErrorCode::invalid_argument, "ml_lower_bound: no competitors");
    return g;
}

unsigned xor_weight(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    unsigned w = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        w += static_cast<unsigned>(std::popcount(a[i] ^ b[i]));
    return w;
}

}  // namespace

double ml_lower_bound(const LinearCode& code, const ChannelModel& channel, double tilt_a) {
    if (channel.kind() != ChannelKind::biawgn)
        fail(ErrorCode::unsupported, "ml_lower_bound: BIAWGN only");
    if (!(tilt_a >= 0.0)) fail(ErrorCode::invalid_argument, "ml_lower_bound: tilt must be >= 0");
    const CodewordGeometry g = nonzero_codewords(code);
    const double m = channel.signal_amplitude();
    const double n = static_cast<double>(code.n());
    const std::size_t M = g.words.size();

    // Numerator tilt exp(-a ||r - s_i||^2): Gaussian with kappa = 2a;
    // denominator uses the square, kappa' = 4a (unit noise variance).
    const double kap_n = 2.0 * tilt_a;
    const double kap_d = 4.0 * tilt_a;
    const auto tilted_threshold = [&](double w, double kap) {
        return m * std::sqrt(w) * (1.0 - kap) / std::sqrt(1.0 + kap);
    };

    std::vector<double> log_num(M);
    for (std::size_t i = 0; i < M; ++i) {
        const double w = g.weight[i];
        log_num[i] = -0.5 * n * std::log1p(kap_n) - 4.0 * tilt_a * m * m * w / (1.0 + kap_n) +
                     log_q_function(tilted_threshold(w, kap_n));
    }
    double bound = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
        const double wi = g.weight[i];
        const double nu_i = tilted_threshold(wi, kap_d);
        const double log_pref =
            -0.5 * n * std::log1p(kap_d) - 8.0 * tilt_a * m * m * wi / (1.0 + kap_d);
        LogSumExp den;
        for (std::size_t j = 0; j < M; ++j) {
            const double wj = g.weight[j];
            const double wij = i == j ? 0.0 : xor_weight(g.words[i], g.words[j]);
            const double rho = (wi + wj - wij) / (2.0 * std::sqrt(wi * wj));
            // Threshold of event j under the measure centered toward s_i.
            const double nu_j =
                m * (wj + kap_d * (wij - wi)) / (std::sqrt(wj) * std::sqrt(1.0 + kap_d));
            den.add(log_pref + log_bivariate_orthant_upper(nu_i, nu_j, rho));
        }
        bound += std::exp(2.0 * log_num[i] - den.value());
    }
    return bound;
}

MlLowerOptimum ml_lower_bound_optimized(const LinearCode& code, const ChannelModel& channel) {
    // a_max: tilted denominator variance 1/(1+4a) shrunk by 100x.
    const double a_max = 99.0 / 4.0;
    const auto objective = [&](double a) { return -ml_lower_bound(code, channel, a); };
    // Log-spaced coarse scan including a = 0, then golden section.
    double best_a = 0.0;
    double best_v = objective(0.0);
    const int grid = 32;
    for (int i = 0; i < grid; ++i) {
        const double a = std::exp(std::log(1e-4) +
                                  (std::log(a_max) - std::log(1e-4)) * i / (grid - 1));
        const double v = objective(a);
        if (v < best_v) {
            best_v = v;
            best_a = a;
        }
    }
    const double lo = best_a / 4.0;
    const double hi = std::fmin(a_max, std::fmax(best_a * 4.0, 1e-3));
    const ScalarMin m = golden_section_min(objective, lo, hi, 1e-8);
    MlLowerOptimum opt;
    if (m.value < best_v) {
        opt.value = -m.value;
        opt.tilt_a = m.x;
    } else {
        opt.value = -best_v;
        opt.tilt_a = best_a;
    }
    return opt;
}

}  // namespace mlbc
