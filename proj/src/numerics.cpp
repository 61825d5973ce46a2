#include "mlbc/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "mlbc/errors.hpp"
#include "mlbc/quadrature.hpp"

namespace mlbc {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kLogSqrt2Pi = 0.9189385332046727;  // log sqrt(2*pi)

// Mills-ratio continued fraction Q(x) = phi(x) / (x + 1/(x + 2/(x + ...))),
// evaluated with the modified Lentz algorithm. Good for x >= ~6.
double mills_cf(double x) {
    const double tiny = 1e-300;
    double f = x > tiny ? x : tiny;
    double c = f;
    double d = 0.0;
    for (int k = 1; k <= 400; ++k) {
        const double a = static_cast<double>(k);
        d = x + a * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = x + a / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::fabs(delta - 1.0) < 1e-17) break;
    }
    return 1.0 / f;
}

}  // namespace

double q_function(double x) {
    if (std::isnan(x)) return std::numeric_limits<double>::quiet_NaN();
    return 0.5 * std::erfc(x / kSqrt2);
}

double log_q_function(double x) {
    if (x < 7.0) {
        const double q = q_function(x);
        return std::log(q);
    }
    return -0.5 * x * x - kLogSqrt2Pi + std::log(mills_cf(x));
}

double normal_pdf(double x) { return std::exp(-0.5 * x * x - kLogSqrt2Pi); }

double log_normal_pdf(double x) { return -0.5 * x * x - kLogSqrt2Pi; }

double h2(double x) {
    if (x < 0.0 || x > 1.0) fail(ErrorCode::invalid_argument, "h2: argument outside [0,1]");
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double h2_inverse(double y) {
    if (y < 0.0 || y > 1.0) fail(ErrorCode::invalid_argument, "h2_inverse: argument outside [0,1]");
    if (y == 0.0) return 0.0;
    if (y == 1.0) return 0.5;
    double lo = 0.0, hi = 0.5;
    for (int i = 0; i < 120 && hi - lo > 1e-16; ++i) {
        const double mid = 0.5 * (lo + hi);
        (h2(mid) < y ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

// Lower-series for the regularized incomplete gamma; returns log P(a,x).
// Valid (and used) for x < a + 1.
double log_gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < 2000000; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (term < sum * 1e-17) break;
    }
    return a * std::log(x) - x - std::lgamma(a) + std::log(sum);
}

// Continued fraction for Q(a,x); returns log Q(a,x). Valid for x >= a + 1.
double log_gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double f = d;
    for (int i = 1; i <= 2000000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        f *= delta;
        if (std::fabs(delta - 1.0) < 1e-17) break;
    }
    return a * std::log(x) - x - std::lgamma(a) + std::log(f);
}

}  // namespace

double log_gamma_p(double a, double x) {
    if (a <= 0.0 || x < 0.0) fail(ErrorCode::invalid_argument, "log_gamma_p: bad arguments");
    if (x == 0.0) return kNegInf;
    if (x < a + 1.0) return log_gamma_p_series(a, x);
    const double lq = log_gamma_q_cf(a, x);
    return std::log1p(-std::exp(lq));
}

double log_gamma_q(double a, double x) {
    if (a <= 0.0 || x < 0.0) fail(ErrorCode::invalid_argument, "log_gamma_q: bad arguments");
    if (x == 0.0) return 0.0;
    if (x >= a + 1.0) return log_gamma_q_cf(a, x);
    const double lp = log_gamma_p_series(a, x);
    return std::log1p(-std::exp(lp));
}

double gamma_p(double a, double x) { return std::exp(log_gamma_p(a, x)); }

double gamma_q(double a, double x) { return std::exp(log_gamma_q(a, x)); }

double log_sum_exp(std::span<const double> terms) {
    LogSumExp acc;
    for (double t : terms) acc.add(t);
    return acc.value();
}

void LogSumExp::add(double log_term) {
    ++n_;
    if (log_term == kNegInf) return;
    if (log_term <= max_) {
        sum_ += std::exp(log_term - max_);
        return;
    }
    if (max_ == kNegInf) {
        max_ = log_term;
        sum_ = 1.0;
        return;
    }
    sum_ = sum_ * std::exp(max_ - log_term) + 1.0;
    max_ = log_term;
}

double LogSumExp::value() const {
    if (max_ == kNegInf) return kNegInf;
    return max_ + std::log(sum_);
}

double log_binomial(double n, double k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

long double binomial_ld(unsigned n, unsigned k) {
    if (k > n) return 0.0L;
    if (k > n - k) k = n - k;
    long double r = 1.0L;
    for (unsigned i = 1; i <= k; ++i) {
        r *= static_cast<long double>(n - k + i);
        r /= static_cast<long double>(i);
    }
    return r;
}

double binomial_majority_tail(unsigned n, double p) {
    if (n == 0) fail(ErrorCode::invalid_argument, "binomial_majority_tail: n = 0");
    const double logp = std::log(p);
    const double logq = std::log1p(-p);
    LogSumExp acc;
    double half_weight = kNegInf;
    for (unsigned k = 0; k <= n; ++k) {
        const double lt = log_binomial(n, k) + k * logp + (n - k) * logq;
        if (2 * k > n) {
            acc.add(lt);
        } else if (2 * k == n) {
            half_weight = lt;
        }
    }
    double v = acc.empty() ? 0.0 : std::exp(acc.value());
    if (half_weight != kNegInf) v += 0.5 * std::exp(half_weight);
    return v;
}

namespace {

double orthant_degenerate(double a, double b, double rho) {
    if (rho > 0.0) return q_function(std::max(a, b));
    return std::max(0.0, q_function(a) - q_function(-b));
}

}  // namespace

double bivariate_orthant_upper(double a, double b, double rho) {
    if (!(rho >= -1.0 - 1e-9 && rho <= 1.0 + 1e-9))
        fail(ErrorCode::invalid_argument, "bivariate_orthant_upper: |rho| > 1");
    rho = std::clamp(rho, -1.0, 1.0);
    if (std::fabs(rho) >= 1.0 - 1e-12) return orthant_degenerate(a, b, rho);
    if (std::fabs(rho) < 1e-14) return q_function(a) * q_function(b);
    // Integrate the larger threshold's variable so the window stays short.
    if (b > a) std::swap(a, b);
    const double s = std::sqrt((1.0 - rho) * (1.0 + rho));
    const auto f = [&](double z) { return normal_pdf(z) * q_function((b - rho * z) / s); };
    const double lo = std::max(a, -9.5);
    const double hi = std::max(lo, std::max(a, 0.0)) + 9.5;
    double v = integrate(f, lo, hi, 1e-14);
    return std::max(0.0, v);
}

double log_bivariate_orthant_upper(double a, double b, double rho) {
    rho = std::clamp(rho, -1.0, 1.0);
    if (std::fabs(rho) >= 1.0 - 1e-12) {
        if (rho > 0.0) return log_q_function(std::max(a, b));
        const double v = orthant_degenerate(a, b, rho);
        return v > 0.0 ? std::log(v) : kNegInf;
    }
    if (a < 8.0 && b < 8.0) {
        const double v = bivariate_orthant_upper(a, b, rho);
        return v > 0.0 ? std::log(v) : kNegInf;
    }
    if (b > a) std::swap(a, b);
    const double s = std::sqrt((1.0 - rho) * (1.0 + rho));
    const auto flog = [&](double z) { return log_normal_pdf(z) + log_q_function((b - rho * z) / s); };
    // Width chosen so the dropped tail is ~exp(-46) relative to the peak.
    const double width = (-a + std::sqrt(a * a + 92.0));
    return integrate_log(flog, a, a + width, 1e-12);
}

}  // namespace mlbc
