#ifndef ORBITKIT_QUADRATURE_HPP
#define ORBITKIT_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace orbitkit::quad {

struct GaussLegendreRule {
    std::vector<double> nodes;   // on (-1, 1)
    std::vector<double> weights; // sum to 2
};

/// Gauss-Legendre rule with q points (Newton on the Legendre recurrence).
/// Rules are cached per q; thread-safe.
const GaussLegendreRule& gauss_legendre(int q);

/// Integrate f over [a, b] with the q-point Gauss-Legendre rule.
double integrate_gl(const std::function<double(double)>& f, double a, double b, int q);

/// Adaptive Simpson to absolute tolerance `tol` (depth-capped).
double integrate_adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double tol);

} // namespace orbitkit::quad

#endif
