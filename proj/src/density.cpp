#include "mlbc/density.hpp"

#include "mlbc/errors.hpp"
#include "mlbc/numerics.hpp"

namespace mlbc {

namespace {

void check_rate(double rate) {
    if (!(rate > 0.0 && rate < 1.0))
        fail(ErrorCode::invalid_argument, "rate must be in (0, 1)");
}

}  // namespace

double normalized_density(double rate, double delta) {
    check_rate(rate);
    if (!(delta >= 0.0)) fail(ErrorCode::invalid_argument, "density must be >= 0");
    return rate / (2.0 - rate) * delta;
}

double min_density(double rate, double t_min) {
    check_rate(rate);
    if (!(t_min >= 0.0)) fail(ErrorCode::invalid_argument, "normalized density must be >= 0");
    return (2.0 - rate) * t_min / rate;
}

double pb_lower_from_entropy(double h_norm, double rate, FanoNormalization norm) {
    check_rate(rate);
    if (!(h_norm >= 0.0)) fail(ErrorCode::invalid_argument, "entropy bound must be >= 0");
    if (h_norm > rate)
        fail(ErrorCode::invalid_argument, "entropy bound exceeds the rate: inconsistent inputs");
    const double arg = norm == FanoNormalization::rate ? h_norm / rate : h_norm;
    return h2_inverse(arg);
}

}  // namespace mlbc
