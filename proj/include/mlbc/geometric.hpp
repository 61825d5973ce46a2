#ifndef MLBC_GEOMETRIC_HPP
#define MLBC_GEOMETRIC_HPP

#include <cstdint>
#include <optional>

#include "mlbc/channel.hpp"
#include "mlbc/linear_code.hpp"
#include "mlbc/oracles.hpp"
#include "mlbc/spectrum.hpp"

namespace mlbc {

/// Good region around the transmitted BIAWGN signal point. Coordinates
/// are in noise-sigma units: the transmitted signal sits at m * sqrt(n)
/// along the region axis.
struct Region {
    enum class Kind { whole_space, sphere, cone };
    Kind kind = Kind::whole_space;
    double radius = 0.0;         // sphere
    double center_offset = 0.0;  // sphere center along the signal axis, from the signal point
    double half_angle = 0.0;     // cone, apex at the origin, axis through the signal

    static Region whole_space() { return {}; }
    static Region sphere(double radius, double center_offset = 0.0) {
        return {Kind::sphere, radius, center_offset, 0.0};
    }
    static Region cone(double half_angle) { return {Kind::cone, 0.0, 0.0, half_angle}; }
};

/// Monte-Carlo evaluation of the region decomposition
///   sum_{m' != 0} Pr(pairwise error to m' AND r in R) + Pr(r not in R)
/// with per-sample multiplicity counting (union-bound semantics). With the
/// whole space as region this estimates the analytic union bound.
/// Guards: k <= 16, samples >= 1e4.
OracleResult region_bound_mc(const LinearCode& code, const ChannelModel& channel,
                             const Region& region, std::uint64_t samples, std::uint64_t seed,
                             unsigned workers = 1);

/// Semi-analytic evaluation of the same decomposition from the distance
/// spectrum: 1-D quadrature over the radial noise component, conditional
/// per-weight tangential probabilities by nested quadrature, chi-square
/// complement outside. The inner union term is clipped at 1 per radial
/// slice when clip_inner is set (valid and never looser).
struct GeometricBound {
    double value = 1.0;
    Region region;
    double out_probability = 0.0;  // Pr(r not in R) part of the bound
    bool inner_clipped = true;
};
GeometricBound region_bound_semi_analytic(const DistanceSpectrum& s, const ChannelModel& channel,
                                          const Region& region, bool clip_inner = true);

/// Sphere-region bound; optimizes the radius (and the axial center shift
/// when optimize_center is set) unless explicit values are supplied.
GeometricBound sphere_bound(const DistanceSpectrum& s, const ChannelModel& channel,
                            std::optional<double> radius = std::nullopt,
                            bool optimize_center = false,
                            std::optional<double> center_offset = std::nullopt);

/// Tangential-sphere bound: circular cone of half-angle theta; theta is
/// optimized by a coarse bracket plus golden section when not supplied.
GeometricBound tsb_bound(const DistanceSpectrum& s, const ChannelModel& channel,
                         std::optional<double> half_angle = std::nullopt);

}  // namespace mlbc

#endif
