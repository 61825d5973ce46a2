#ifndef MLBC_NUMERICS_HPP
#define MLBC_NUMERICS_HPP

#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace mlbc {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

/// Gaussian tail Q(x) = P(Z > x) for standard normal Z, via erfc.
double q_function(double x);

/// log Q(x), stable for large x (continued fraction for the Mills ratio).
double log_q_function(double x);

double normal_pdf(double x);
double log_normal_pdf(double x);

/// Binary entropy in bits, h2(0) = h2(1) = 0 by continuity.
double h2(double x);

/// Inverse of h2 restricted to [0, 1/2], bisection to 1e-14.
double h2_inverse(double y);

/// Regularized incomplete gamma P(a,x) and Q(a,x) = 1 - P(a,x), plus
/// log versions that keep relative accuracy when the value underflows.
double gamma_p(double a, double x);
double gamma_q(double a, double x);
double log_gamma_p(double a, double x);
double log_gamma_q(double a, double x);

/// Chi-square CDF / survival with dof degrees of freedom.
inline double chi2_cdf(double dof, double x) { return gamma_p(0.5 * dof, 0.5 * x); }
inline double chi2_sf(double dof, double x) { return gamma_q(0.5 * dof, 0.5 * x); }
inline double log_chi2_cdf(double dof, double x) { return log_gamma_p(0.5 * dof, 0.5 * x); }
inline double log_chi2_sf(double dof, double x) { return log_gamma_q(0.5 * dof, 0.5 * x); }

/// Upper orthant probability P(X >= a, Y >= b) for standard bivariate
/// normal with correlation rho, by conditioning quadrature. Accuracy is
/// uniform in rho, including |rho| near 1.
double bivariate_orthant_upper(double a, double b, double rho);
double log_bivariate_orthant_upper(double a, double b, double rho);

double log_sum_exp(std::span<const double> terms);

/// Streaming log-sum-exp accumulator (two-pass-free).
class LogSumExp {
  public:
    void add(double log_term);
    double value() const;
    bool empty() const { return n_ == 0; }

  private:
    double max_ = kNegInf;
    double sum_ = 0.0;  // sum of exp(term - max_)
    std::size_t n_ = 0;
};

double log_binomial(double n, double k);

/// Exact-ish binomial coefficient in extended precision; stays in range for
/// n up to a few thousand.
long double binomial_ld(unsigned n, unsigned k);

/// P(Binomial(n,p) > n/2) + 0.5 * P(Binomial(n,p) = n/2); randomized-tie
/// convention for hard-decision pairwise errors.
double binomial_majority_tail(unsigned n, double p);

}  // namespace mlbc

#endif
