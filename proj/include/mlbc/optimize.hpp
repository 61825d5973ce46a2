#ifndef MLBC_OPTIMIZE_HPP
#define MLBC_OPTIMIZE_HPP

#include <functional>
#include <utility>
#include <vector>

namespace mlbc {

struct ScalarMin {
    double x;
    double value;
};

/// Golden-section minimization of f on [a, b]. Assumes unimodality on the
/// bracket; returns the best evaluated point.
ScalarMin golden_section_min(const std::function<double(double)>& f, double a, double b,
                             double x_tol = 1e-9, int max_iter = 200);

/// Coarse grid scan followed by golden section around the grid minimum.
ScalarMin bracketed_min(const std::function<double(double)>& f, double lo, double hi,
                        int grid_points = 64, double x_tol = 1e-9);

/// Cyclic coordinate descent with golden-section line searches. box(i, x)
/// supplies the feasible interval of coordinate i given the other current
/// coordinates, so coupled constraints stay inside the feasible set.
struct CoordinateMin {
    std::vector<double> x;
    double value;
};
CoordinateMin coordinate_descent(
    const std::function<double(const std::vector<double>&)>& f,
    const std::function<std::pair<double, double>(std::size_t, const std::vector<double>&)>& box,
    std::vector<double> x0, int sweeps = 8, double x_tol = 1e-7);

}  // namespace mlbc

#endif
