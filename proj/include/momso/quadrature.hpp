#ifndef MOMSO_QUADRATURE_HPP
#define MOMSO_QUADRATURE_HPP

#include <cmath>
#include <functional>
#include <vector>

#include "momso/types.hpp"

namespace momso {

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-300;
  int max_subdivisions = 4000;
};

/// Carries the best estimate and its error bound when adaptive refinement
/// runs out of subdivisions.
class QuadratureError : public NumericalError {
 public:
  QuadratureError(const std::string& what, CVector estimate, double error_bound)
      : NumericalError(what), estimate_(std::move(estimate)), error_bound_(error_bound) {}
  const CVector& estimate() const { return estimate_; }
  double error_bound() const { return error_bound_; }

 private:
  CVector estimate_;
  double error_bound_;
};

/// Trapezoidal sum of a 2pi-periodic integrand over m equispaced nodes.
template <typename F>
auto periodic_trapezoid(F&& f, int m) -> decltype(f(0.0)) {
  using R = decltype(f(0.0));
  R sum = f(0.0);
  const double h = 2.0 * pi / m;
  for (int i = 1; i < m; ++i) sum += f(i * h);
  return sum * h;
}

using VectorIntegrand = std::function<CVector(double)>;

/// Globally adaptive Gauss-Kronrod (7/15) over [breakpoints.front(), breakpoints.back()].
CVector integrate_adaptive(const VectorIntegrand& f, int dim, const std::vector<double>& breakpoints,
                           const QuadratureSpec& spec = {});

/// Integral over [0, inf) of an integrand whose envelope decays at least like
/// e^{-decay_rate t} beyond the last breakpoint; the tail is cut where the
/// envelope has fallen below e^{-40}.
CVector semi_infinite_quadrature(const VectorIntegrand& f, int dim, double decay_rate,
                                 const QuadratureSpec& spec = {},
                                 std::vector<double> breakpoints = {});

Complex semi_infinite_quadrature(const std::function<Complex(double)>& f, double decay_rate,
                                 const QuadratureSpec& spec = {},
                                 std::vector<double> breakpoints = {});

}  // namespace momso

#endif  // MOMSO_QUADRATURE_HPP
