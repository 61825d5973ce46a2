#ifndef MLBC_DENSITY_HPP
#define MLBC_DENSITY_HPP

namespace mlbc {

/// Normalized parity-check density t = (R / (2 - R)) * Delta, where Delta
/// is the number of ones per information bit; t = 1 is a cycle-free
/// bipartite graph.
double normalized_density(double rate, double delta);

/// Inverse conversion: Delta_min = (2 - R) t_min / R.
double min_density(double rate, double t_min);

enum class FanoNormalization { rate, one };

/// Fano step: from a lower bound on H(X|Y)/n to a lower bound on the bit
/// error probability, P_b >= h2^{-1}(H_norm / R). The `one` variant keeps
/// the older normalization with the rate factor replaced by 1.
double pb_lower_from_entropy(double h_norm, double rate,
                             FanoNormalization norm = FanoNormalization::rate);

}  // namespace mlbc

#endif
