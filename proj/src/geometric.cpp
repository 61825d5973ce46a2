#include "mlbc/geometric.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>
#include <vector>

#include "mlbc/errors.hpp"
#include "mlbc/numerics.hpp"
#include "mlbc/optimize.hpp"
#include "mlbc/quadrature.hpp"
#include "mlbc/rng.hpp"

namespace mlbc {

namespace {

constexpr double kWindow = 8.6;  // radial window in noise sigmas

// log chi-square CDF/SF evaluator for one degree-of-freedom value. Large
// dof switches to cubic-Hermite tables: log CDF on a log-t grid (the lower
// tail is a power law there) and log SF on a linear-t grid (the upper tail
// is exponential in t). Both keep relative accuracy where the function is
// many orders of magnitude below 1.
class Chi2Log {
  public:
    Chi2Log(double dof, double t_max) : dof_(dof) {
        if (dof_ <= 80.0) return;  // direct evaluation is cheap enough
        t_max_ = std::max(t_max, dof_ * 1.5);
        build();
    }

    double log_cdf(double t) const {
        if (t <= 0.0) return kNegInf;
        if (cdf_knots_.empty()) return log_chi2_cdf(dof_, t);
        const double u = std::log(t);
        if (u <= u_lo_) return kNegInf;  // below the -760 quantile
        if (u >= u_hi_) return cdf_knots_.back();
        return hermite(cdf_knots_, u_lo_, du_, u);
    }

    double log_sf(double t) const {
        if (t <= 0.0) return 0.0;
        if (sf_knots_.empty()) return log_chi2_sf(dof_, t);
        if (t >= t_max_) return sf_knots_.back();
        return hermite(sf_knots_, 0.0, dt_, t);
    }

  private:
    void build() {
        // Lower knot: t where log CDF ~ -760 (anything below contributes
        // nothing once multiplied into the bound integrals).
        double lo = 1e-6, hi = dof_;
        for (int i = 0; i < 80; ++i) {
            const double mid = std::sqrt(lo * hi);
            (log_chi2_cdf(dof_, mid) < -760.0 ? lo : hi) = mid;
        }
        u_lo_ = std::log(lo);
        u_hi_ = std::log(t_max_);
        const int knots = 16384;
        du_ = (u_hi_ - u_lo_) / (knots - 1);
        cdf_knots_.resize(knots);
        for (int i = 0; i < knots; ++i)
            cdf_knots_[i] = log_chi2_cdf(dof_, std::exp(u_lo_ + i * du_));
        dt_ = t_max_ / (knots - 1);
        sf_knots_.resize(knots);
        sf_knots_[0] = 0.0;
        for (int i = 1; i < knots; ++i) sf_knots_[i] = log_chi2_sf(dof_, i * dt_);
    }

    static double hermite(const std::vector<double>& k, double x0, double dx, double x) {
        const double s = (x - x0) / dx;
        std::size_t i = static_cast<std::size_t>(s);
        i = std::min(i, k.size() - 2);
        const double t = s - static_cast<double>(i);
        const double y0 = k[i], y1 = k[i + 1];
        const double m0 = i > 0 ? 0.5 * (k[i + 1] - k[i - 1]) : k[i + 1] - k[i];
        const double m1 = i + 2 < k.size() ? 0.5 * (k[i + 2] - k[i]) : k[i + 1] - k[i];
        const double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * m0 + (-2 * t3 + 3 * t2) * y1 +
               (t3 - t2) * m1;
    }

    double dof_;
    double t_max_ = 0.0;
    double u_lo_ = 0.0, u_hi_ = 0.0, du_ = 1.0, dt_ = 1.0;
    std::vector<double> cdf_knots_;
    std::vector<double> sf_knots_;
};

// Tangential radius of the region as a function of the radial coordinate
// z1 (noise units, measured from the transmitted point along the axis).
struct RadialProfile {
    double lo;
    double hi;
    std::function<double(double)> radius;
};

RadialProfile profile_for(const Region& region, double m, double n) {
    const double axis = m * std::sqrt(n);
    switch (region.kind) {
        case Region::Kind::cone: {
            const double t = std::tan(region.half_angle);
            return {-axis, kPosInf, [t, axis](double z1) { return t * (axis + z1); }};
        }
        case Region::Kind::sphere: {
            const double c = region.center_offset, r = region.radius;
            return {c - r, c + r, [c, r](double z1) {
                        const double q = r * r - (z1 - c) * (z1 - c);
                        return q > 0.0 ? std::sqrt(q) : 0.0;
                    }};
        }
        case Region::Kind::whole_space:
            break;
    }
    fail(ErrorCode::invalid_argument, "no radial profile for the whole space");
}

struct SpectrumTerms {
    std::vector<unsigned> d;
    std::vector<double> log_a;
    double log_a_full = kNegInf;  // the d = n term, if present
};

SpectrumTerms collect_terms(const DistanceSpectrum& s) {
    SpectrumTerms t;
    for (const auto& [d, a] : s.terms) {
        if (d == 0 || a <= 0.0L) continue;
        if (d == s.n) {
            t.log_a_full = static_cast<double>(logl(a));
            continue;
        }
        t.d.push_back(d);
        t.log_a.push_back(static_cast<double>(logl(a)));
    }
    return t;
}

// Inner conditional probability, log domain:
//   P_d(z1) = int_{beta_d}^{r} phi(v) F_{chi2,n-2}(r^2 - v^2) dv
// by 64-point Gauss-Legendre on the (smooth) integrand.
double log_inner_probability(double beta, double r, const Chi2Log& chi2_tang) {
    if (!(beta < r)) return kNegInf;
    // The normal factor confines the integrand to ~9.5 units past its
    // peak at max(beta, 0); truncating there drops a relative e^-45.
    const double v_hi = std::min(r, std::max(beta, 0.0) + 9.5);
    const GaussLegendre& gl = gauss_legendre(64);
    const double h = 0.5 * (v_hi - beta), c = 0.5 * (v_hi + beta);
    const double log_h = std::log(h);
    double max_lt = kNegInf;
    double lt[64];
    for (int i = 0; i < 64; ++i) {
        const double v = c + h * gl.nodes[i];
        const double f = chi2_tang.log_cdf(r * r - v * v);
        lt[i] = std::log(gl.weights[i]) + log_h + log_normal_pdf(v) + f;
        max_lt = std::max(max_lt, lt[i]);
    }
    if (max_lt == kNegInf) return kNegInf;
    double sum = 0.0;
    for (double v : lt) sum += std::exp(v - max_lt);
    return max_lt + std::log(sum);
}

struct ConditionalEval {
    const SpectrumTerms& terms;
    const RadialProfile& prof;
    double m;
    double n;
    const Chi2Log& chi2_tang;  // dof n-2
    const Chi2Log& chi2_full;  // dof n-1
    bool clip;

    // log of sum_d A_d P_d(z1), the conditional union term.
    double log_union_term(double z1) const {
        const double r = prof.radius(z1);
        if (!(r > 0.0)) return kNegInf;
        LogSumExp acc;
        const double shift = m + z1 / std::sqrt(n);
        for (std::size_t i = 0; i < terms.d.size(); ++i) {
            const double d = terms.d[i];
            const double beta = std::sqrt(d * n / (n - d)) * shift;
            const double lp = log_inner_probability(beta, r, chi2_tang);
            if (lp != kNegInf) acc.add(terms.log_a[i] + lp);
        }
        if (terms.log_a_full != kNegInf && z1 <= -m * std::sqrt(n)) {
            // The all-ones competitor: the pairwise event is purely radial,
            // so conditionally it contributes the whole tangential cap.
            acc.add(terms.log_a_full + chi2_full.log_cdf(r * r));
        }
        return acc.value();
    }

    double integrand(double z1) const {
        const double lu = log_union_term(z1);
        const double inner = clip ? std::exp(std::fmin(0.0, lu)) : std::exp(lu);
        return normal_pdf(z1) * inner;
    }
};

}  // namespace

GeometricBound region_bound_semi_analytic(const DistanceSpectrum& s, const ChannelModel& channel,
                                          const Region& region, bool clip_inner) {
    if (channel.kind() != ChannelKind::biawgn)
        fail(ErrorCode::unsupported, "geometric bounds apply to the BIAWGN channel");
    if (region.kind == Region::Kind::whole_space) {
        GeometricBound g;
        g.value = 0.0;
        g.region = region;
        g.out_probability = 0.0;
        // Union bound, computed as the degenerate region limit.
        LogSumExp acc;
        for (const auto& [d, a] : s.terms) {
            if (d == 0 || a <= 0.0L) continue;
            acc.add(static_cast<double>(logl(a)) + log_pairwise_error(channel, d));
        }
        g.value = clip_inner ? std::exp(std::fmin(0.0, acc.value())) : std::exp(acc.value());
        g.inner_clipped = clip_inner;
        return g;
    }
    if (s.n < 3) fail(ErrorCode::size_guard, "geometric bounds need block length n >= 3");
    const double m = channel.signal_amplitude();
    const double n = static_cast<double>(s.n);
    const RadialProfile prof = profile_for(region, m, n);
    const double lo = std::max(prof.lo, -kWindow);
    const double hi = std::min(prof.hi, kWindow);
    GeometricBound g;
    g.region = region;
    g.inner_clipped = clip_inner;
    if (!(hi > lo)) {
        g.value = 1.0;
        g.out_probability = 1.0;
        return g;
    }
    double r_max = 0.0;
    for (int i = 0; i <= 256; ++i)
        r_max = std::max(r_max, prof.radius(lo + (hi - lo) * i / 256.0));
    const Chi2Log chi2_tang(n - 2.0, r_max * r_max);
    const Chi2Log chi2_full(n - 1.0, r_max * r_max);
    const SpectrumTerms terms = collect_terms(s);
    const ConditionalEval ev{terms, prof, m, n, chi2_tang, chi2_full, clip_inner};

    const double joint = integrate([&](double z1) { return ev.integrand(z1); }, lo, hi,
                                   1e-13, 1e-9);
    // Pr(outside): complement of the in-region mass over the window plus
    // everything beyond the window (kept as "outside" so the bound stays
    // valid for any window).
    const double in_sf = integrate(
        [&](double z1) {
            const double r = prof.radius(z1);
            return normal_pdf(z1) * std::exp(chi2_full.log_sf(r * r));
        },
        lo, hi, 1e-13, 1e-9);
    const double outside = in_sf + q_function(-lo) + q_function(hi);
    g.out_probability = std::fmin(1.0, outside);
    g.value = std::fmin(1.0 + 1e-12, joint + outside);
    return g;
}

namespace {

double bound_value(const DistanceSpectrum& s, const ChannelModel& ch, const Region& r) {
    return region_bound_semi_analytic(s, ch, r, true).value;
}

}  // namespace

GeometricBound sphere_bound(const DistanceSpectrum& s, const ChannelModel& channel,
                            std::optional<double> radius, bool optimize_center,
                            std::optional<double> center_offset) {
    if (channel.kind() != ChannelKind::biawgn)
        fail(ErrorCode::unsupported, "sphere_bound applies to the BIAWGN channel");
    const double n = static_cast<double>(s.n);
    const double scale = std::sqrt(n);
    if (radius && (center_offset || !optimize_center)) {
        return region_bound_semi_analytic(
            s, channel, Region::sphere(*radius, center_offset.value_or(0.0)), true);
    }
    const double log_lo = std::log(0.2 * scale), log_hi = std::log(400.0 * scale);
    const auto radius_obj = [&](double log_r, double c) {
        return bound_value(s, channel, Region::sphere(std::exp(log_r), c));
    };
    ScalarMin r0 = bracketed_min([&](double lr) { return radius_obj(lr, 0.0); }, log_lo, log_hi,
                                 48, 1e-6);
    if (!optimize_center) {
        return region_bound_semi_analytic(s, channel, Region::sphere(std::exp(r0.x), 0.0), true);
    }
    // Axial center shift: coordinate descent on (offset, log radius).
    const double m = channel.signal_amplitude();
    const auto obj = [&](const std::vector<double>& x) { return radius_obj(x[1], x[0]); };
    const auto box = [&](std::size_t i, const std::vector<double>&) {
        if (i == 0) return std::pair<double, double>{-2.0 * m * scale, 0.5 * m * scale};
        return std::pair<double, double>{log_lo, log_hi + std::log(3.0)};
    };
    const CoordinateMin cm = coordinate_descent(obj, box, {0.0, r0.x}, 6, 1e-6);
    return region_bound_semi_analytic(s, channel,
                                      Region::sphere(std::exp(cm.x[1]), cm.x[0]), true);
}

GeometricBound tsb_bound(const DistanceSpectrum& s, const ChannelModel& channel,
                         std::optional<double> half_angle) {
    if (channel.kind() != ChannelKind::biawgn)
        fail(ErrorCode::unsupported, "tsb_bound applies to the BIAWGN channel");
    if (half_angle) {
        if (!(*half_angle > 0.0 && *half_angle < 1.5707963267948966))
            fail(ErrorCode::invalid_argument, "tsb_bound: half angle must be in (0, pi/2)");
        return region_bound_semi_analytic(s, channel, Region::cone(*half_angle), true);
    }
    // Optimize log tan(theta): wide enough to reach near-whole-space cones.
    const auto obj = [&](double u) {
        return bound_value(s, channel, Region::cone(std::atan(std::exp(u))));
    };
    const ScalarMin best = bracketed_min(obj, std::log(0.02), std::log(60.0), 40, 1e-5);
    return region_bound_semi_analytic(s, channel, Region::cone(std::atan(std::exp(best.x))),
                                      true);
}

OracleResult region_bound_mc(const LinearCode& code, const ChannelModel& channel,
                             const Region& region, std::uint64_t samples, std::uint64_t seed,
                             unsigned workers) {
    if (channel.kind() != ChannelKind::biawgn)
        fail(ErrorCode::unsupported, "region_bound_mc: BIAWGN only");
    if (code.k() > 16) fail(ErrorCode::size_guard, "region_bound_mc: needs k <= 16");
    if (samples < 10000)
        fail(ErrorCode::invalid_argument, "region_bound_mc: needs samples >= 1e4");
    const std::size_t n = code.n();
    const double m = channel.signal_amplitude();
    const double axis = m * std::sqrt(static_cast<double>(n));
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));

    struct Competitor {
        std::vector<std::uint16_t> support;
        double threshold;  // m * d
    };
    std::vector<Competitor> comp;
    code.for_each_codeword([&](std::uint64_t message, const std::vector<std::uint64_t>& cw) {
        if (message == 0) return;
        Competitor c;
        for (std::size_t i = 0; i < n; ++i)
            if ((cw[i / 64] >> (i % 64)) & 1) c.support.push_back(static_cast<std::uint16_t>(i));
        c.threshold = m * static_cast<double>(c.support.size());
        comp.push_back(std::move(c));
    });

    const double tan_theta = region.kind == Region::Kind::cone ? std::tan(region.half_angle) : 0.0;

    constexpr std::uint64_t kBlock = 4096;
    const std::uint64_t blocks = (samples + kBlock - 1) / kBlock;
    std::vector<std::pair<double, double>> partial(blocks, {0.0, 0.0});
    std::atomic<std::uint64_t> next_block{0};
    const auto run_block = [&](std::uint64_t b) {
        const std::uint64_t lo = b * kBlock;
        const std::uint64_t hi = std::min(samples, lo + kBlock);
        double sum = 0.0, sum_sq = 0.0;
        std::vector<double> z(n);
        for (std::uint64_t t = lo; t < hi; ++t) {
            CounterRng rng(seed, t);
            double z_sum = 0.0, z_norm2 = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                z[i] = rng.next_normal();
                z_sum += z[i];
                z_norm2 += z[i] * z[i];
            }
            const double z1 = z_sum * inv_sqrt_n;
            bool in_region = true;
            switch (region.kind) {
                case Region::Kind::whole_space:
                    break;
                case Region::Kind::sphere: {
                    const double c = region.center_offset;
                    in_region = z_norm2 - 2.0 * c * z1 + c * c <= region.radius * region.radius;
                    break;
                }
                case Region::Kind::cone: {
                    const double a = axis + z1;
                    in_region = a > 0.0 && z_norm2 - z1 * z1 <= tan_theta * tan_theta * a * a;
                    break;
                }
            }
            double x;
            if (!in_region) {
                x = 1.0;
            } else {
                unsigned multiplicity = 0;
                for (const Competitor& c : comp) {
                    double u = 0.0;
                    for (std::uint16_t pos : c.support) u -= z[pos];
                    if (u >= c.threshold) ++multiplicity;
                }
                x = static_cast<double>(multiplicity);
            }
            sum += x;
            sum_sq += x * x;
        }
        partial[b] = {sum, sum_sq};
    };
    workers = std::max(1u, workers);
    if (workers == 1) {
        for (std::uint64_t b = 0; b < blocks; ++b) run_block(b);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t)
            pool.emplace_back([&] {
                for (std::uint64_t b = next_block.fetch_add(1); b < blocks;
                     b = next_block.fetch_add(1))
                    run_block(b);
            });
        for (auto& th : pool) th.join();
    }
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& [a, b] : partial) {
        sum += a;
        sum_sq += b;
    }
    const double mean = sum / static_cast<double>(samples);
    const double var = std::max(0.0, sum_sq / static_cast<double>(samples) - mean * mean);
    OracleResult res;
    res.estimate = mean;
    res.std_error = std::sqrt(var / static_cast<double>(samples));
    res.samples = samples;
    res.seed = seed;
    return res;
}

}  // namespace mlbc
