#ifndef MLBC_GALLAGER_HPP
#define MLBC_GALLAGER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mlbc/channel.hpp"
#include "mlbc/linear_code.hpp"
#include "mlbc/spectrum.hpp"

namespace mlbc {

/// A bound value carried in the log domain; raw (unclipped) values are
/// kept so ordering comparisons stay meaningful, clipping at 1 happens at
/// the reporting layer.
struct BoundResult {
    double log_value = 0.0;
    double value() const;    // exp(log_value); may overflow to +inf
    double clipped() const;  // min(1, value)
};

/// Union bound sum_{d>=1} A_d P2(d) and the union-Bhattacharyya bound
/// sum_{d>=1} A_d gamma^d, in the log domain.
BoundResult union_bound(const DistanceSpectrum& s, const ChannelModel& ch);
BoundResult union_bhattacharyya_bound(const DistanceSpectrum& s, const ChannelModel& ch);

/// Geometric extrapolation of the union-bound terms beyond the largest
/// computed distance: an estimate (not a bound) of the truncated tail.
/// Returns +inf when the trailing terms are not decaying.
double union_tail_estimate_log(const DistanceSpectrum& s, const ChannelModel& ch);

enum class TiltFamily { uniform, exp_llr, gaussian };

/// Per-letter unnormalized tilting measure g. uniform: g = 1 (no
/// parameters); exp_llr: g(y) = exp(s * ln[p(y|0)/p(y|1)]), one parameter;
/// gaussian (BIAWGN only): g(y) = exp(c y + e y^2), two parameters.
struct Tilting {
    TiltFamily family = TiltFamily::uniform;
    std::vector<double> params;

    static Tilting uniform() { return {TiltFamily::uniform, {}}; }
    static Tilting exp_llr(double s) { return {TiltFamily::exp_llr, {s}}; }
    static Tilting gaussian(double c, double e) { return {TiltFamily::gaussian, {c, e}}; }
    std::string describe() const;
};

/// Per-letter sums of the DS2 bound for the tilt g at (lambda, rho):
///   zeta  = sum_y g(y) p(y|0)
///   alpha = sum_y g(y)^(1-1/rho) p(y|0)^(1-lambda) p(y|1)^lambda
///   beta  = sum_y g(y)^(1-1/rho) p(y|0)
/// Closed forms for both channels; throws on divergent Gaussian-tilt
/// integrals instead of clipping.
struct PerLetterStats {
    double log_zeta;
    double log_alpha;
    double log_beta;
};
PerLetterStats per_letter_stats(const ChannelModel& ch, const Tilting& tilt, double lambda,
                                double rho);

/// DS2 bound in distance-spectrum form:
///   zeta^{n(1-rho)} * ( sum_{d>=1} A_d alpha^d beta^{n-d} )^rho.
BoundResult ds2_bound(const DistanceSpectrum& s, const ChannelModel& ch, double lambda,
                      double rho, const Tilting& tilt);

/// Bit-error variant: A_d replaced by sum_w (w/k) A_{w,j} grouped by total
/// weight.
BoundResult ds2_bit_error_bound(const Iowef& iowef, const ChannelModel& ch, double lambda,
                                double rho, const Tilting& tilt);

/// The pre-Jensen Gallager bound E_0[ S(y)^rho ], S(y) =
/// sum_{m' != 0} (p(y|x^{m'})/p(y|0))^lambda, evaluated exactly by output
/// enumeration on the BSC. The tilting measure cancels before Jensen, so
/// the value depends on (lambda, rho) only. Guards: n <= 20, k <= 16.
BoundResult gallager65_bound_bsc(const LinearCode& code, double crossover, double lambda,
                                 double rho);

/// The displayed DS2 form evaluated by direct output enumeration on the
/// BSC; cross-checks the factorized route above (they agree identically).
BoundResult ds2_bound_enumerated_bsc(const LinearCode& code, double crossover, double lambda,
                                     double rho, const Tilting& tilt);

struct Ds2Options {
    TiltFamily family = TiltFamily::uniform;
    int starts = 6;
    std::uint64_t seed = 1;
    double lambda_max = 4.0;
    double rho_min = 1e-3;
    std::optional<double> fixed_lambda;
    std::optional<double> fixed_rho;
    std::optional<std::vector<double>> fixed_tilt;
};

struct Ds2Optimum {
    double lambda = 0.5;
    double rho = 1.0;
    Tilting tilt;
    BoundResult bound;
};

/// Multi-start coordinate descent over (lambda, rho, tilt parameters).
/// The union-Bhattacharyya point (lambda=1/2, rho=1, g=1) is always one of
/// the starts, so the optimum never exceeds that specialization.
/// Deterministic given the seed.
Ds2Optimum optimize_ds2(const DistanceSpectrum& s, const ChannelModel& ch,
                        const Ds2Options& options);

}  // namespace mlbc

#endif
