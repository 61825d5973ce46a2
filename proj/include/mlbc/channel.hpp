#ifndef MLBC_CHANNEL_HPP
#define MLBC_CHANNEL_HPP

#include <string>

namespace mlbc {

enum class ChannelKind { biawgn, bsc };

/// Memoryless binary-input channel. BIAWGN uses antipodal signalling with
/// per-letter means +-m and unit noise variance, m^2 = 2 R Eb/N0; the BSC
/// is given by its crossover probability.
class ChannelModel {
  public:
    static ChannelModel biawgn(double ebno_db, double rate);
    static ChannelModel bsc(double crossover);

    ChannelKind kind() const { return kind_; }
    double ebno_db() const { return ebno_db_; }
    double rate() const { return rate_; }
    double crossover() const { return p_; }

    /// Half-distance in noise-sigma units: the antipodal mean m with
    /// sigma = 1 normalization (BIAWGN only).
    double signal_amplitude() const;

    /// Bhattacharyya parameter gamma = sum_y sqrt(p(y|0) p(y|1)).
    double bhattacharyya() const;

    std::string describe() const;

  private:
    ChannelModel() = default;
    ChannelKind kind_ = ChannelKind::biawgn;
    double ebno_db_ = 0.0;
    double rate_ = 0.0;
    double p_ = 0.0;
};

/// P(ML pairwise error to a codeword at Hamming distance d | all-zero sent).
/// BIAWGN: Q(sqrt(2 d R Eb/N0)). BSC: majority tail with 1/2-weighted ties.
double pairwise_error(const ChannelModel& ch, unsigned d);
double log_pairwise_error(const ChannelModel& ch, unsigned d);

/// Joint probability of two pairwise-error events on the BIAWGN channel,
/// for codewords of weights w_i, w_j whose XOR has weight w_ij. Reduces to
/// a standard bivariate normal orthant with correlation
/// rho = (w_i + w_j - w_ij) / (2 sqrt(w_i w_j)).
double joint_pairwise_error(const ChannelModel& ch, unsigned w_i, unsigned w_j, unsigned w_ij);

/// The correlation above; errors on weight triples violating the triangle
/// or parity consistency of XOR weights.
double pairwise_correlation(unsigned w_i, unsigned w_j, unsigned w_ij);

}  // namespace mlbc

#endif
