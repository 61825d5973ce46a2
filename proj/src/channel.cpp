#include "mlbc/channel.hpp"

#include <cmath>
#include <sstream>

#include "mlbc/errors.hpp"
#include "mlbc/numerics.hpp"

namespace mlbc {

ChannelModel ChannelModel::biawgn(double ebno_db, double rate) {
    if (!(rate > 0.0 && rate <= 1.0))
        fail(ErrorCode::invalid_argument, "biawgn: rate must be in (0,1]");
    if (!std::isfinite(ebno_db)) fail(ErrorCode::invalid_argument, "biawgn: Eb/N0 must be finite");
    ChannelModel c;
    c.kind_ = ChannelKind::biawgn;
    c.ebno_db_ = ebno_db;
    c.rate_ = rate;
    return c;
}

ChannelModel ChannelModel::bsc(double crossover) {
    if (!(crossover > 0.0 && crossover < 0.5))
        fail(ErrorCode::invalid_argument, "bsc: crossover must be in (0, 1/2)");
    ChannelModel c;
    c.kind_ = ChannelKind::bsc;
    c.p_ = crossover;
    return c;
}

double ChannelModel::signal_amplitude() const {
    if (kind_ != ChannelKind::biawgn)
        fail(ErrorCode::unsupported, "signal_amplitude: BIAWGN only");
    const double ebno = std::pow(10.0, ebno_db_ / 10.0);
    return std::sqrt(2.0 * rate_ * ebno);
}

double ChannelModel::bhattacharyya() const {
    if (kind_ == ChannelKind::bsc) return 2.0 * std::sqrt(p_ * (1.0 - p_));
    const double m = signal_amplitude();
    return std::exp(-0.5 * m * m);
}

std::string ChannelModel::describe() const {
    std::ostringstream os;
    if (kind_ == ChannelKind::biawgn) {
        os << "biawgn(ebno_db=" << ebno_db_ << ", rate=" << rate_ << ")";
    } else {
        os << "bsc(p=" << p_ << ")";
    }
    return os.str();
}

double pairwise_error(const ChannelModel& ch, unsigned d) {
    if (d == 0) fail(ErrorCode::invalid_argument, "pairwise_error: d must be >= 1");
    if (ch.kind() == ChannelKind::biawgn) {
        const double m = ch.signal_amplitude();
        return q_function(m * std::sqrt(static_cast<double>(d)));
    }
    return binomial_majority_tail(d, ch.crossover());
}

double log_pairwise_error(const ChannelModel& ch, unsigned d) {
    if (d == 0) fail(ErrorCode::invalid_argument, "log_pairwise_error: d must be >= 1");
    if (ch.kind() == ChannelKind::biawgn) {
        const double m = ch.signal_amplitude();
        return log_q_function(m * std::sqrt(static_cast<double>(d)));
    }
    return std::log(binomial_majority_tail(d, ch.crossover()));
}

double pairwise_correlation(unsigned w_i, unsigned w_j, unsigned w_ij) {
    if (w_i == 0 || w_j == 0)
        fail(ErrorCode::invalid_argument, "pairwise_correlation: weights must be >= 1");
    const unsigned lo = w_i > w_j ? w_i - w_j : w_j - w_i;
    if (w_ij < lo || w_ij > w_i + w_j || ((w_i + w_j + w_ij) % 2) != 0)
        fail(ErrorCode::invalid_argument, "pairwise_correlation: inconsistent weight triple");
    const double rho = (static_cast<double>(w_i) + w_j - w_ij) /
                       (2.0 * std::sqrt(static_cast<double>(w_i) * w_j));
    if (rho > 1.0 + 1e-9 || rho < -1.0 - 1e-9)
        fail(ErrorCode::invalid_argument, "pairwise_correlation: |rho| > 1");
    return std::fmin(1.0, std::fmax(-1.0, rho));
}

double joint_pairwise_error(const ChannelModel& ch, unsigned w_i, unsigned w_j, unsigned w_ij) {
    if (ch.kind() != ChannelKind::biawgn)
        fail(ErrorCode::unsupported, "joint_pairwise_error: BIAWGN only");
    const double rho = pairwise_correlation(w_i, w_j, w_ij);
    const double m = ch.signal_amplitude();
    const double a_i = m * std::sqrt(static_cast<double>(w_i));
    const double a_j = m * std::sqrt(static_cast<double>(w_j));
    return bivariate_orthant_upper(a_i, a_j, rho);
}

}  // namespace mlbc
