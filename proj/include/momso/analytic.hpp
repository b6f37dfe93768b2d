#ifndef MOMSO_ANALYTIC_HPP
#define MOMSO_ANALYTIC_HPP

// Classical cable-constant formulas. Everything here is per unit length,
// e^{+jwt}, and ignores proximity between conductors.

#include "momso/cable_model.hpp"

namespace momso {

/// Horizontal separation and the two burial depths (positive downward).
/// For a self term use d = outer radius and h1 = h2.
struct LoopGeometry {
  double d = 0.0;
  double h1 = 1.0;
  double h2 = 1.0;
};

/// Round rod, uniform current return at infinity:
///   (rho m / 2 pi a) I0(m a) / I1(m a),  m = sqrt(j w mu sigma).
Complex solid_internal_impedance_exact(double a, double sigma, double mu, double omega);

struct TubeImpedance {
  Complex inner;     // return path inside the bore
  Complex outer;     // return path outside the tube
  Complex transfer;  // mutual between the two loops
};

TubeImpedance tubular_internal_impedance(double b_in, double b_out, double sigma, double mu, double omega);

/// Earth-return impedance by direct quadrature of the infinite integral:
///   (j w mu0 / 2 pi) [K0(m d1) - K0(m d2)
///     + 2 int_0^inf e^{-(h1+h2) u} / (beta + u) cos(beta d) dbeta],  u = sqrt(beta^2 + m^2).
Complex pollaczek_mutual_impedance(const LoopGeometry& g, double sigma_g, double omega,
                                   const QuadratureSpec& spec = {});

/// Closed-form series approximation of the same quantity:
///   (j w mu0 / 2 pi) [K0(m d1) + 2 e^{-(h1+h2) m} / (4 + m^2 d^2)].
/// Intended for |m| (h1+h2) small to moderate; it degrades at high frequency.
Complex saad_ground_impedance(const LoopGeometry& g, double sigma_g, double omega);

enum class EarthFormula { pollaczek, saad };

/// Full P x P cable-constant impedance. Each tube must enclose exactly one
/// solid core (an SC cable); solid conductors without a screen are allowed.
/// The earth-return radius is the screen's jacket radius (or the outermost
/// metal radius when no jacket is given).
CMatrix cable_constants_impedance(const CableSystem& sys, double omega, EarthFormula earth = EarthFormula::pollaczek);

}  // namespace momso

#endif  // MOMSO_ANALYTIC_HPP
