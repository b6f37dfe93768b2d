#include "momso/analytic.hpp"

#include <cmath>
#include <optional>

#include "momso/special_functions.hpp"

namespace momso {

namespace {

Complex diffusion_constant(double sigma, double mu, double omega) { return std::sqrt(imj * omega * mu * sigma); }

Complex insulation(double omega, double r_out, double r_in) {
  return imj * omega * mu0 / (2.0 * pi) * std::log(r_out / r_in);
}

}  // namespace

Complex solid_internal_impedance_exact(double a, double sigma, double mu, double omega) {
  const Complex m = diffusion_constant(sigma, mu, omega);
  const Complex z = m * a;
  // The e^{-z} scalings cancel in the ratio.
  return m / (2.0 * pi * a * sigma) * bessel_i_scaled(0, z) / bessel_i_scaled(1, z);
}

TubeImpedance tubular_internal_impedance(double b_in, double b_out, double sigma, double mu, double omega) {
  if (!(b_in > 0.0 && b_in < b_out)) throw std::invalid_argument("tube needs 0 < b_in < b_out");
  const Complex m = diffusion_constant(sigma, mu, omega);
  const Complex x = m * b_in;
  const Complex y = m * b_out;
  // With I~ = I e^{-z}, K~ = K e^{z}, every product below carries a common
  // e^{y-x}, which is divided out; E2 = e^{-2(y-x)} is what remains.
  const Complex e = std::exp(-(y - x));
  const Complex e2 = e * e;
  const Complex i0x = bessel_i_scaled(0, x), i1x = bessel_i_scaled(1, x);
  const Complex i0y = bessel_i_scaled(0, y), i1y = bessel_i_scaled(1, y);
  const Complex k0x = bessel_k_scaled(0, x), k1x = bessel_k_scaled(1, x);
  const Complex k0y = bessel_k_scaled(0, y), k1y = bessel_k_scaled(1, y);
  const Complex ds = i1y * k1x - i1x * k1y * e2;
  const double rho = 1.0 / sigma;
  TubeImpedance z;
  z.inner = rho * m / (2.0 * pi * b_in) * (i0x * k1y * e2 + k0x * i1y) / ds;
  z.outer = rho * m / (2.0 * pi * b_out) * (i0y * k1x + k0y * i1x * e2) / ds;
  z.transfer = rho * e / (2.0 * pi * b_in * b_out * ds);
  return z;
}

Complex pollaczek_mutual_impedance(const LoopGeometry& g, double sigma_g, double omega, const QuadratureSpec& spec) {
  if (!(g.h1 > 0.0 && g.h2 > 0.0)) throw std::invalid_argument("burial depths must be positive");
  const Complex m = diffusion_constant(sigma_g, mu0, omega);
  const double hs = g.h1 + g.h2;
  const double d1 = std::hypot(g.d, g.h1 - g.h2);
  const double d2 = std::hypot(g.d, hs);
  const auto f = [&](double beta) {
    const Complex u = std::sqrt(beta * beta + m * m);
    return std::exp(-hs * u) / (beta + u) * std::cos(beta * g.d);
  };
  std::vector<double> bp{0.0, std::abs(m)};
  if (g.d > 0.0) bp.push_back(std::max(bp.back(), pi / g.d));
  bp.push_back(bp.back() + 1.0 / hs);
  const Complex integral = semi_infinite_quadrature(f, hs, spec, bp);
  return imj * omega * mu0 / (2.0 * pi) * (bessel_k0(m * d1) - bessel_k0(m * d2) + 2.0 * integral);
}

Complex saad_ground_impedance(const LoopGeometry& g, double sigma_g, double omega) {
  const Complex m = diffusion_constant(sigma_g, mu0, omega);
  const double hs = g.h1 + g.h2;
  const double d1 = std::hypot(g.d, g.h1 - g.h2);
  return imj * omega * mu0 / (2.0 * pi) *
         (bessel_k0(m * d1) + 2.0 * std::exp(-hs * m) / (4.0 + m * m * g.d * g.d));
}

CMatrix cable_constants_impedance(const CableSystem& sys, double omega, EarthFormula earth) {
  const int P = sys.size();
  // Pair each screen with the core inside its bore.
  std::vector<std::optional<int>> core_of(P), screen_of(P);
  for (int s = 0; s < P; ++s) {
    const Conductor& t = sys.conductors[s];
    if (!t.is_tube()) continue;
    for (int c = 0; c < P; ++c) {
      const Conductor& k = sys.conductors[c];
      if (k.is_tube() || distance(k.center, t.center) > 1e-9 * t.radius || k.radius >= t.inner_radius) continue;
      if (core_of[s]) throw std::invalid_argument("screen " + t.id + " encloses more than one core");
      core_of[s] = c;
      screen_of[c] = s;
    }
    if (!core_of[s]) throw std::invalid_argument("screen " + t.id + " has no concentric core");
  }

  auto outer_radius = [&](int p) {
    const int s = screen_of[p] ? *screen_of[p] : p;
    const Conductor& c = sys.conductors[s];
    return c.jacket_radius ? *c.jacket_radius : c.radius;
  };
  auto depth = [&](int p) {
    const double h = -sys.conductors[p].center.y;
    if (!(h > 0.0)) throw std::invalid_argument("conductor " + sys.conductors[p].id + " is not buried");
    return h;
  };
  auto ground = [&](const LoopGeometry& g) {
    return earth == EarthFormula::pollaczek ? pollaczek_mutual_impedance(g, sys.ground.sigma_g, omega, sys.solver.quadrature)
                                            : saad_ground_impedance(g, sys.ground.sigma_g, omega);
  };
  auto cable_center = [&](int p) { return sys.conductors[p].center; };

  CMatrix z(P, P);
  for (int p = 0; p < P; ++p) {
    for (int q = p; q < P; ++q) {
      const bool same_cable = p == q || (screen_of[p] && *screen_of[p] == q) || (screen_of[q] && *screen_of[q] == p);
      Complex v;
      if (!same_cable) {
        v = ground({distance(cable_center(p), cable_center(q)), depth(p), depth(q)});
      } else {
        const int core = core_of[p] ? *core_of[p] : (core_of[q] ? *core_of[q] : p);
        const Conductor& c = sys.conductors[core];
        const double rext = outer_radius(core);
        const Complex zg = ground({rext, depth(core), depth(core)});
        const Complex zc = solid_internal_impedance_exact(c.radius, c.material.sigma, c.material.mu(), omega);
        if (!screen_of[core]) {
          v = zc + insulation(omega, rext, c.radius) + zg;
        } else {
          const Conductor& s = sys.conductors[*screen_of[core]];
          const TubeImpedance zs =
              tubular_internal_impedance(s.inner_radius, s.radius, s.material.sigma, s.material.mu(), omega);
          const Complex zss = zs.outer + insulation(omega, rext, s.radius) + zg;
          if (p == q && p == core) {
            v = zc + insulation(omega, s.inner_radius, c.radius) + zs.inner - 2.0 * zs.transfer + zss;
          } else if (p == q) {
            v = zss;
          } else {
            v = zss - zs.transfer;
          }
        }
      }
      z(p, q) = v;
      z(q, p) = v;
    }
  }
  return z;
}

}  // namespace momso
