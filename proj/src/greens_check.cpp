#include "momso/greens_check.hpp"

#include <cmath>

#include "momso/greens.hpp"
#include "momso/oracles.hpp"
#include "momso/special_functions.hpp"

namespace momso {

namespace {

constexpr int trapezoid_nodes = 128;
constexpr int self_nodes = 4096;

std::string label(const CableSystem& sys, const Contour& c) {
  switch (c.kind) {
    case Contour::Kind::conductor_inner:
      return sys.conductors[c.owner].id + "/inner";
    case Contour::Kind::conductor_outer:
      return sys.conductors[c.owner].id + "/outer";
    case Contour::Kind::hole:
      return sys.holes[c.owner].id;
  }
  return {};
}

double rel(const CMatrix& a, const CMatrix& b) {
  const double n = b.norm();
  return n > 0.0 ? (a - b).norm() / n : a.norm();
}

// Smallest distance between the two circles, relative to the smaller radius.
double clearance(const Contour& a, const Contour& b) {
  const double d = distance(a.center, b.center);
  const double gap = d >= a.radius + b.radius ? d - a.radius - b.radius : std::abs(std::abs(a.radius - b.radius) - d);
  return gap / std::min(a.radius, b.radius);
}

void homogeneous_pair(std::vector<GreensCheckItem>& out, const std::string& name, const Contour& a,
                      const Contour& b, Complex k, double tol) {
  GreensCheckItem item{name, 0.0, tol};
  const CMatrix g = homogeneous_harmonic_matrix(a, b, k);
  if (&a == &b) {
    CMatrix ref = CMatrix::Zero(a.size(), a.size());
    for (int n = -a.order; n <= a.order; ++n) {
      ref(a.index(n) - a.offset, a.index(n) - a.offset) = oracle::self_term_log_subtraction(n, k, a.radius, self_nodes);
    }
    // The midpoint rule on the log-subtracted integrand converges algebraically.
    item.tolerance = std::max(tol, 1e-6);
    item.error = rel(g, ref);
  } else if (clearance(a, b) < 0.25) {
    item.skipped = true;
  } else {
    const auto kernel = [k](Point r, Point rp) { return Complex{0.0, 0.25} * hankel2(0, k * distance(r, rp)); };
    item.error = rel(g, oracle::harmonic_matrix_quadrature(a, b, kernel, trapezoid_nodes));
  }
  out.push_back(item);
}

}  // namespace

std::vector<GreensCheckItem> run_greens_check(const CableSystem& sys, double f_hz, double tol) {
  const double omega = 2.0 * pi * f_hz;
  const HarmonicBasis basis(sys);
  std::vector<GreensCheckItem> out;

  // Conductor contours in their surrounding medium.
  const auto& cc = basis.conductor_contours;
  for (std::size_t i = 0; i < cc.size(); ++i) {
    for (std::size_t j = i; j < cc.size(); ++j) {
      const auto& ci = sys.conductors[cc[i].owner];
      const auto& cj = sys.conductors[cc[j].owner];
      if (ci.hole != cj.hole) continue;
      const Complex k = surrounding_medium(sys, cc[i].owner).wavenumber(omega);
      homogeneous_pair(out, "homogeneous " + label(sys, cc[i]) + " x " + label(sys, cc[j]), cc[i], cc[j], k, tol);
    }
  }

  // Hole interiors: boundary against each member, and the regular waves.
  for (const Contour& hc : basis.hole_contours) {
    const Complex kh = sys.holes[hc.owner].medium.wavenumber(omega);
    for (const Contour& c : cc) {
      if (sys.conductors[c.owner].hole != hc.owner) continue;
      homogeneous_pair(out, "homogeneous " + label(sys, hc) + " x " + label(sys, c), hc, c, kh, tol);
      GreensCheckItem item{"regular wave " + label(sys, c) + " in " + label(sys, hc), 0.0, tol};
      item.error = rel(regular_wave_matrix({c}, hc, kh), oracle::regular_wave_quadrature(c, hc, kh, 64));
      out.push_back(item);
    }
  }

  // Ground kernel on the contours that see it.
  const std::vector<Contour>& ground_contours = sys.direct_burial() ? cc : basis.hole_contours;
  if (sys.ground.kind == GroundKind::two_layer) {
    for (std::size_t i = 0; i < ground_contours.size(); ++i) {
      const Contour& a = ground_contours[i];
      const Contour& b = ground_contours[i];
      const auto kernel = [&](Point r, Point rp) { return reflected_green(r, rp, omega, sys.ground, sys.solver.quadrature); };
      GreensCheckItem item{"reflected " + label(sys, a), 0.0, tol};
      item.error = rel(reflected_harmonic_matrix(a, b, omega, sys.ground, sys.solver.quadrature),
                       oracle::harmonic_matrix_quadrature(a, b, kernel, 24));
      out.push_back(item);
    }
    // Point kernel against the full spectral integral between contour centres.
    for (std::size_t i = 0; i < ground_contours.size(); ++i) {
      for (std::size_t j = i + 1; j < ground_contours.size(); ++j) {
        const Point r = ground_contours[i].center;
        const Point rp = ground_contours[j].center;
        if (distance(r, rp) == 0.0) continue;
        GreensCheckItem item{"two-layer kernel " + label(sys, ground_contours[i]) + " -> " + label(sys, ground_contours[j]),
                             0.0, tol};
        const Complex g = two_layer_green(r, rp, omega, sys.ground, sys.solver.quadrature);
        const Complex ref = oracle::brute_force_two_layer_green(r, rp, omega, sys.ground);
        item.error = std::abs(g - ref) / std::abs(ref);
        out.push_back(item);
      }
    }
  }
  return out;
}

}  // namespace momso
