#ifndef MLBC_ML_LOWER_HPP
#define MLBC_ML_LOWER_HPP

#include "mlbc/channel.hpp"
#include "mlbc/linear_code.hpp"

namespace mlbc {

/// Cohen-Merhav lower bound on ML block error over the BIAWGN channel
/// with the isotropic exponential weighting m_i(r) = exp(-a ||r - s_i||^2),
/// a >= 0; the Gaussian-times-exponential products collapse to univariate
/// and bivariate normal orthant terms. a = 0 is the de Caen special case.
/// Specific codes only (takes an explicit generator); guards: k <= 16.
double ml_lower_bound(const LinearCode& code, const ChannelModel& channel, double tilt_a);

struct MlLowerOptimum {
    double value = 0.0;
    double tilt_a = 0.0;
};

/// Scalar search over a in [0, a_max], a_max where the tilted variance has
/// shrunk 100x; always includes a = 0, so the result never falls below the
/// de Caen value.
MlLowerOptimum ml_lower_bound_optimized(const LinearCode& code, const ChannelModel& channel);

}  // namespace mlbc

#endif
