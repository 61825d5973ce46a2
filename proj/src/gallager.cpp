#include "mlbc/gallager.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <sstream>

#include "mlbc/errors.hpp"
#include "mlbc/numerics.hpp"
#include "mlbc/optimize.hpp"

namespace mlbc {

double BoundResult::value() const { return std::exp(log_value); }
double BoundResult::clipped() const { return std::fmin(1.0, value()); }

BoundResult union_bound(const DistanceSpectrum& s, const ChannelModel& ch) {
    LogSumExp acc;
    for (const auto& [d, a] : s.terms) {
        if (d == 0 || a <= 0.0L) continue;
        acc.add(static_cast<double>(logl(a)) + log_pairwise_error(ch, d));
    }
    return {acc.value()};
}

BoundResult union_bhattacharyya_bound(const DistanceSpectrum& s, const ChannelModel& ch) {
    const double log_gamma = std::log(ch.bhattacharyya());
    LogSumExp acc;
    for (const auto& [d, a] : s.terms) {
        if (d == 0 || a <= 0.0L) continue;
        acc.add(static_cast<double>(logl(a)) + d * log_gamma);
    }
    return {acc.value()};
}

double union_tail_estimate_log(const DistanceSpectrum& s, const ChannelModel& ch) {
    // Geometric extrapolation from the trailing terms of the union sum.
    std::vector<std::pair<unsigned, double>> terms;
    for (const auto& [d, a] : s.terms) {
        if (d == 0 || a <= 0.0L) continue;
        terms.emplace_back(d, static_cast<double>(logl(a)) + log_pairwise_error(ch, d));
    }
    if (terms.size() < 4) return kPosInf;
    const auto& [d2, t2] = terms.back();
    const auto& [d1, t1] = terms[terms.size() - 4];
    if (d2 <= d1) return kPosInf;
    const double per_d = (t2 - t1) / static_cast<double>(d2 - d1);
    if (per_d >= -1e-12) return kPosInf;  // not decaying: caps too small
    // sum_{i>=1} exp(t2 + i*per_d) = exp(t2) * r/(1-r), r = exp(per_d).
    const double r = std::exp(per_d);
    return t2 + std::log(r / (1.0 - r));
}

std::string Tilting::describe() const {
    std::ostringstream os;
    switch (family) {
        case TiltFamily::uniform:
            os << "uniform";
            break;
        case TiltFamily::exp_llr:
            os << "exp_llr(s=" << (params.empty() ? 0.0 : params[0]) << ")";
            break;
        case TiltFamily::gaussian:
            os << "gaussian(c=" << params[0] << ", e=" << params[1] << ")";
            break;
    }
    return os.str();
}

namespace {

// log of integral(phi(y - mu) * exp(C y + E y^2) dy); requires E < 1/2.
double log_gaussian_tilt_integral(double mu, double C, double E) {
    const double a = 0.5 - E;
    if (!(a > 0.0))
        fail(ErrorCode::numeric_failure,
             "divergent per-letter integral for the chosen tilting parameters");
    const double t = mu + C;
    return -0.5 * mu * mu + t * t / (4.0 * a) - 0.5 * std::log(2.0 * a);
}

struct TiltCoeffs {
    double c = 0.0;
    double e = 0.0;
};

TiltCoeffs biawgn_tilt_coeffs(const Tilting& tilt, double m) {
    switch (tilt.family) {
        case TiltFamily::uniform:
            return {0.0, 0.0};
        case TiltFamily::exp_llr:
            // ln[p(y|0)/p(y|1)] = 2 m y.
            return {2.0 * m * tilt.params.at(0), 0.0};
        case TiltFamily::gaussian:
            return {tilt.params.at(0), tilt.params.at(1)};
    }
    fail(ErrorCode::invalid_argument, "unknown tilt family");
}

// log g(y) for the two BSC outputs, y = 0 and y = 1.
std::pair<double, double> bsc_log_tilt(const Tilting& tilt, double p) {
    switch (tilt.family) {
        case TiltFamily::uniform:
            return {0.0, 0.0};
        case TiltFamily::exp_llr: {
            const double s = tilt.params.at(0);
            const double llr0 = std::log((1.0 - p) / p);
            return {s * llr0, -s * llr0};
        }
        case TiltFamily::gaussian:
            fail(ErrorCode::unsupported, "gaussian tilting applies to the BIAWGN channel only");
    }
    fail(ErrorCode::invalid_argument, "unknown tilt family");
}

void check_lambda_rho(double lambda, double rho) {
    if (!(lambda >= 0.0)) fail(ErrorCode::invalid_argument, "lambda must be >= 0");
    if (!(rho > 0.0 && rho <= 1.0)) fail(ErrorCode::invalid_argument, "rho must be in (0, 1]");
}

}  // namespace

PerLetterStats per_letter_stats(const ChannelModel& ch, const Tilting& tilt, double lambda,
                                double rho) {
    check_lambda_rho(lambda, rho);
    const double u = 1.0 - 1.0 / rho;  // exponent on g inside the alpha/beta sums
    if (ch.kind() == ChannelKind::biawgn) {
        const double m = ch.signal_amplitude();
        const auto [c, e] = biawgn_tilt_coeffs(tilt, m);
        PerLetterStats st;
        st.log_zeta = log_gaussian_tilt_integral(m, c, e);
        st.log_beta = log_gaussian_tilt_integral(m, u * c, u * e);
        const double mu_l = (1.0 - 2.0 * lambda) * m;
        st.log_alpha =
            -2.0 * lambda * (1.0 - lambda) * m * m + log_gaussian_tilt_integral(mu_l, u * c, u * e);
        return st;
    }
    const double p = ch.crossover();
    const auto [lg0, lg1] = bsc_log_tilt(tilt, p);
    const double l1p = std::log1p(-p), lp = std::log(p);
    const auto two_term = [](double a, double b) {
        LogSumExp acc;
        acc.add(a);
        acc.add(b);
        return acc.value();
    };
    PerLetterStats st;
    st.log_zeta = two_term(lg0 + l1p, lg1 + lp);
    st.log_beta = two_term(u * lg0 + l1p, u * lg1 + lp);
    st.log_alpha = two_term(u * lg0 + (1.0 - lambda) * l1p + lambda * lp,
                            u * lg1 + (1.0 - lambda) * lp + lambda * l1p);
    return st;
}

namespace {

BoundResult ds2_from_spectrum(const DistanceSpectrum& s, const ChannelModel& ch, double lambda,
                              double rho, const Tilting& tilt) {
    const PerLetterStats st = per_letter_stats(ch, tilt, lambda, rho);
    const double n = static_cast<double>(s.n);
    LogSumExp acc;
    for (const auto& [d, a] : s.terms) {
        if (d == 0 || a <= 0.0L) continue;
        acc.add(static_cast<double>(logl(a)) + d * st.log_alpha + (n - d) * st.log_beta);
    }
    if (acc.empty()) return {kNegInf};
    return {n * (1.0 - rho) * st.log_zeta + rho * acc.value()};
}

}  // namespace

BoundResult ds2_bound(const DistanceSpectrum& s, const ChannelModel& ch, double lambda,
                      double rho, const Tilting& tilt) {
    return ds2_from_spectrum(s, ch, lambda, rho, tilt);
}

BoundResult ds2_bit_error_bound(const Iowef& iowef, const ChannelModel& ch, double lambda,
                                double rho, const Tilting& tilt) {
    return ds2_from_spectrum(iowef.bit_weighted_spectrum(), ch, lambda, rho, tilt);
}

namespace {

struct BscEnumeration {
    std::vector<std::uint64_t> codewords;  // nonzero codewords, first word
    std::vector<unsigned> weights;
    std::size_t n;
};

BscEnumeration prepare_bsc_enumeration(const LinearCode& code) {
    if (code.n() > 20 || code.k() > 16)
        fail(ErrorCode::size_guard, "BSC output enumeration needs n <= 20 and k <= 16");
    BscEnumeration e;
    e.n = code.n();
    code.for_each_codeword([&](std::uint64_t message, const std::vector<std::uint64_t>& cw) {
        if (message == 0) return;
        e.codewords.push_back(cw[0]);
        e.weights.push_back(static_cast<unsigned>(std::popcount(cw[0])));
    });
    return e;
}

}  // namespace

BoundResult gallager65_bound_bsc(const LinearCode& code, double crossover, double lambda,
                                 double rho) {
    check_lambda_rho(lambda, rho);
    if (!(crossover > 0.0 && crossover < 0.5))
        fail(ErrorCode::invalid_argument, "gallager65_bound_bsc: crossover in (0, 1/2)");
    const BscEnumeration e = prepare_bsc_enumeration(code);
    const double lp = std::log(crossover), lq = std::log1p(-crossover);
    const double log_ratio = lp - lq;  // log(p / (1-p))
    LogSumExp total;
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << e.n); ++y) {
        const unsigned wy = static_cast<unsigned>(std::popcount(y));
        const double log_py = wy * lp + (e.n - wy) * lq;
        LogSumExp s_acc;
        for (std::size_t i = 0; i < e.codewords.size(); ++i) {
            const unsigned t = static_cast<unsigned>(std::popcount(y & e.codewords[i]));
            // (p(y|x')/p(y|0))^lambda with d - 2t flipped-likelihood letters.
            s_acc.add(lambda * (static_cast<double>(e.weights[i]) - 2.0 * t) * log_ratio);
        }
        total.add(log_py + rho * s_acc.value());
    }
    return {total.value()};
}

BoundResult ds2_bound_enumerated_bsc(const LinearCode& code, double crossover, double lambda,
                                     double rho, const Tilting& tilt) {
    check_lambda_rho(lambda, rho);
    const BscEnumeration e = prepare_bsc_enumeration(code);
    const double lp = std::log(crossover), lq = std::log1p(-crossover);
    const double log_ratio = lp - lq;
    const auto [lg0, lg1] = bsc_log_tilt(tilt, crossover);
    const double u = 1.0 - 1.0 / rho;
    LogSumExp log_z;     // sum_y G(y) p(y|0)
    LogSumExp log_term;  // sum_{m'} sum_y p(y|0) G(y)^(1-1/rho) ratio^lambda
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << e.n); ++y) {
        const unsigned wy = static_cast<unsigned>(std::popcount(y));
        const double log_py = wy * lp + (e.n - wy) * lq;
        const double log_g = wy * lg1 + (e.n - wy) * lg0;
        log_z.add(log_py + log_g);
        LogSumExp s_acc;
        for (std::size_t i = 0; i < e.codewords.size(); ++i) {
            const unsigned t = static_cast<unsigned>(std::popcount(y & e.codewords[i]));
            s_acc.add(lambda * (static_cast<double>(e.weights[i]) - 2.0 * t) * log_ratio);
        }
        log_term.add(log_py + u * log_g + s_acc.value());
    }
    return {(1.0 - rho) * log_z.value() + rho * log_term.value()};
}

namespace {

struct ParamLayout {
    bool free_lambda;
    bool free_rho;
    std::size_t tilt_dim;   // number of tilt parameters in the family
    bool free_tilt;
    std::size_t dim() const {
        return (free_lambda ? 1 : 0) + (free_rho ? 1 : 0) + (free_tilt ? tilt_dim : 0);
    }
};

}  // namespace

Ds2Optimum optimize_ds2(const DistanceSpectrum& s, const ChannelModel& ch,
                        const Ds2Options& opt) {
    const std::size_t tilt_dim = opt.family == TiltFamily::uniform   ? 0
                                 : opt.family == TiltFamily::exp_llr ? 1
                                                                     : 2;
    if (opt.family == TiltFamily::gaussian && ch.kind() != ChannelKind::biawgn)
        fail(ErrorCode::unsupported, "gaussian tilting applies to the BIAWGN channel only");
    ParamLayout layout{!opt.fixed_lambda.has_value(), !opt.fixed_rho.has_value(), tilt_dim,
                       !opt.fixed_tilt.has_value()};

    const double m = ch.kind() == ChannelKind::biawgn ? ch.signal_amplitude() : 0.0;
    const double c_box = 3.0 * m + 3.0;
    const double s_box = 2.0;
    const double e_floor = -10.0;
    const double margin = 1e-6;

    // Pack/unpack between the free-parameter vector and (lambda, rho, tilt).
    const auto unpack = [&](const std::vector<double>& x) {
        std::size_t i = 0;
        const double lambda = layout.free_lambda ? x[i++] : *opt.fixed_lambda;
        const double rho = layout.free_rho ? x[i++] : *opt.fixed_rho;
        std::vector<double> tp;
        if (layout.free_tilt) {
            for (std::size_t t = 0; t < tilt_dim; ++t) tp.push_back(x[i++]);
        } else if (opt.fixed_tilt) {
            tp = *opt.fixed_tilt;
        }
        Tilting tilt{opt.family, tp};
        return std::tuple<double, double, Tilting>{lambda, rho, tilt};
    };

    const auto objective = [&](const std::vector<double>& x) {
        const auto [lambda, rho, tilt] = unpack(x);
        try {
            return ds2_bound(s, ch, lambda, rho, tilt).log_value;
        } catch (const Error&) {
            return kPosInf;
        }
    };

    // Feasible interval of free coordinate i given the rest; keeps the
    // coupled (rho, e) Gaussian-integrability constraint inside the box.
    const auto box = [&](std::size_t i, const std::vector<double>& x) {
        std::size_t idx = 0;
        if (layout.free_lambda) {
            if (i == idx) return std::pair<double, double>{0.0, opt.lambda_max};
            ++idx;
        }
        if (layout.free_rho) {
            if (i == idx) {
                double lo = opt.rho_min;
                const auto [lambda, rho, tilt] = unpack(x);
                (void)lambda;
                (void)rho;
                if (opt.family == TiltFamily::gaussian) {
                    const double e = tilt.params.at(1);
                    if (e < 0.0) lo = std::max(lo, e / (e - 0.5) + margin);
                }
                return std::pair<double, double>{lo, 1.0};
            }
            ++idx;
        }
        if (layout.free_tilt && opt.family == TiltFamily::exp_llr && i == idx)
            return std::pair<double, double>{-s_box, s_box};
        if (layout.free_tilt && opt.family == TiltFamily::gaussian) {
            if (i == idx) return std::pair<double, double>{-c_box, c_box};
            if (i == idx + 1) {
                const auto [lambda, rho, tilt] = unpack(x);
                (void)lambda;
                (void)tilt;
                double lo = e_floor;
                if (rho < 1.0 - 1e-12) lo = std::max(lo, 0.5 * rho / (rho - 1.0) + margin);
                return std::pair<double, double>{lo, 0.5 - margin};
            }
        }
        return std::pair<double, double>{0.0, 0.0};
    };

    // Deterministic first start: the union-Bhattacharyya specialization.
    std::vector<std::vector<double>> starts;
    {
        std::vector<double> x0;
        if (layout.free_lambda) x0.push_back(0.5);
        if (layout.free_rho) x0.push_back(1.0);
        if (layout.free_tilt)
            for (std::size_t t = 0; t < tilt_dim; ++t) x0.push_back(0.0);
        starts.push_back(std::move(x0));
    }
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int extra = std::max(0, opt.starts - 1);
    for (int t = 0; t < extra; ++t) {
        std::vector<double> x;
        if (layout.free_lambda) x.push_back(unit(rng) * std::min(2.0, opt.lambda_max));
        if (layout.free_rho) x.push_back(opt.rho_min + unit(rng) * (1.0 - opt.rho_min));
        if (layout.free_tilt) {
            if (opt.family == TiltFamily::exp_llr) x.push_back((unit(rng) - 0.5) * s_box);
            if (opt.family == TiltFamily::gaussian) {
                x.push_back((unit(rng) - 0.5) * 2.0 * c_box);
                // Sample e inside the current-rho feasible range.
                const double rho = layout.free_rho ? x[layout.free_lambda ? 1 : 0]
                                                   : opt.fixed_rho.value_or(1.0);
                double lo = e_floor;
                if (rho < 1.0 - 1e-12) lo = std::max(lo, 0.5 * rho / (rho - 1.0) + margin);
                x.push_back(lo + unit(rng) * (0.5 - margin - lo));
            }
        }
        starts.push_back(std::move(x));
    }

    Ds2Optimum best;
    best.bound.log_value = kPosInf;
    bool found = false;
    for (const auto& x0 : starts) {
        if (layout.dim() == 0) {
            const double v = objective({});
            if (!found || v < best.bound.log_value) {
                const auto [lambda, rho, tilt] = unpack({});
                best = {lambda, rho, tilt, {v}};
                found = true;
            }
            break;
        }
        const CoordinateMin cm = coordinate_descent(objective, box, x0, 10, 1e-8);
        if (!std::isfinite(cm.value)) continue;
        if (!found || cm.value < best.bound.log_value) {
            const auto [lambda, rho, tilt] = unpack(cm.x);
            best = {lambda, rho, tilt, {cm.value}};
            found = true;
        }
    }
    if (!found) fail(ErrorCode::numeric_failure, "optimize_ds2: every start diverged");
    return best;
}

}  // namespace mlbc
