#include "mlbc/optimize.hpp"

#include <algorithm>
#include <cmath>

namespace mlbc {

ScalarMin golden_section_min(const std::function<double(double)>& f, double a, double b,
                             double x_tol, int max_iter) {
    const double invphi = 0.6180339887498949;
    if (b < a) std::swap(a, b);
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c);
    double fd = f(d);
    ScalarMin best = fc <= fd ? ScalarMin{c, fc} : ScalarMin{d, fd};
    for (int i = 0; i < max_iter && (b - a) > x_tol; ++i) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
        const ScalarMin cand = fc <= fd ? ScalarMin{c, fc} : ScalarMin{d, fd};
        if (cand.value < best.value) best = cand;
    }
    return best;
}

ScalarMin bracketed_min(const std::function<double(double)>& f, double lo, double hi,
                        int grid_points, double x_tol) {
    if (hi < lo) std::swap(lo, hi);
    if (grid_points < 3) grid_points = 3;
    int best_i = 0;
    double best_v = std::numeric_limits<double>::infinity();
    std::vector<double> xs(grid_points);
    for (int i = 0; i < grid_points; ++i) {
        xs[i] = lo + (hi - lo) * i / (grid_points - 1);
        const double v = f(xs[i]);
        if (v < best_v) {
            best_v = v;
            best_i = i;
        }
    }
    const double a = xs[std::max(0, best_i - 1)];
    const double b = xs[std::min(grid_points - 1, best_i + 1)];
    ScalarMin m = golden_section_min(f, a, b, x_tol);
    if (best_v < m.value) return {xs[best_i], best_v};
    return m;
}

CoordinateMin coordinate_descent(
    const std::function<double(const std::vector<double>&)>& f,
    const std::function<std::pair<double, double>(std::size_t, const std::vector<double>&)>& box,
    std::vector<double> x0, int sweeps, double x_tol) {
    std::vector<double> x = std::move(x0);
    double fx = f(x);
    for (int s = 0; s < sweeps; ++s) {
        double improvement = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            auto [lo, hi] = box(i, x);
            if (!(hi > lo)) continue;
            x[i] = std::clamp(x[i], lo, hi);
            const auto line = [&](double t) {
                std::vector<double> y = x;
                y[i] = t;
                return f(y);
            };
            const ScalarMin m = bracketed_min(line, lo, hi, 24, x_tol);
            if (m.value < fx) {
                improvement += fx - m.value;
                x[i] = m.x;
                fx = m.value;
            }
        }
        if (improvement <= std::fabs(fx) * 1e-12 + 1e-300) break;
    }
    return {x, fx};
}

}  // namespace mlbc
