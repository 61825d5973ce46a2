#ifndef MLBC_QUADRATURE_HPP
#define MLBC_QUADRATURE_HPP

#include <functional>

namespace mlbc {

/// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b].
/// Bisects until the local error estimate |K15 - G7| meets the tolerance
/// budget for the subinterval. abs_tol is the global absolute target;
/// rel_tol additionally refines relative to the running estimate so that
/// very small integrals keep significant digits.
double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 double rel_tol = 1e-10);

/// log of the integral of exp(f_log) over [a, b]; the integrand is rescaled
/// by its sampled maximum so the result stays meaningful far below the
/// double underflow threshold. Returns -inf for an identically -inf
/// integrand.
double integrate_log(const std::function<double(double)>& f_log, double a, double b,
                     double rel_tol = 1e-10);

/// Gauss-Legendre nodes and weights on [-1, 1], computed once by Newton
/// iteration on the Legendre recurrence.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int points);

}  // namespace mlbc

#endif
