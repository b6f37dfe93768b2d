#include <cmath>

#include "check.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "momso/analytic.hpp"
#include "momso/oracles.hpp"
#include "momso/special_functions.hpp"

using namespace momso;
using momso::testing::rel;

namespace {

const double sigma_core = 1.0 / fixtures::core_resistivity;
const double sigma_screen = 1.0 / fixtures::screen_resistivity;

}  // namespace

TEST_CASE("rod: DC limit and high-frequency asymptote") {
  const double a = fixtures::core_radius;
  const double dc = fixtures::core_resistivity / (pi * a * a);
  CHECK(solid_internal_impedance_exact(a, sigma_core, mu0, 2.0 * pi * 0.1).real() == doctest::Approx(dc).epsilon(1e-3));
  const double w = 2.0 * pi * 1e6;
  const Complex z = solid_internal_impedance_exact(a, sigma_core, mu0, w);
  CHECK(z.real() == doctest::Approx(std::sqrt(w * mu0 * fixtures::core_resistivity / 2.0) / (2.0 * pi * a)).epsilon(0.02));
  CHECK(z.imag() / z.real() == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("tube: DC, thin wall, degenerate bore, transfer magnitude") {
  const double bi = fixtures::screen_inner, bo = fixtures::screen_outer;
  const double rho = fixtures::screen_resistivity;
  const TubeImpedance dc = tubular_internal_impedance(bi, bo, sigma_screen, mu0, 2.0 * pi * 0.01);
  const double r_dc = rho / (pi * (bo * bo - bi * bi));
  CHECK(dc.inner.real() == doctest::Approx(r_dc).epsilon(1e-4));
  CHECK(dc.outer.real() == doctest::Approx(r_dc).epsilon(1e-4));
  CHECK(dc.transfer.real() == doctest::Approx(r_dc).epsilon(1e-4));
  const double t = bo - bi;
  CHECK(dc.outer.real() == doctest::Approx(rho / (2.0 * pi * 0.5 * (bi + bo) * t)).epsilon(0.01));

  const double w = 2.0 * pi * 1e3;
  const TubeImpedance k = tubular_internal_impedance(bi, bo, sigma_screen, mu0, w);
  CHECK(std::abs(k.transfer) <= std::abs(k.inner));
  CHECK(std::abs(k.transfer) <= std::abs(k.outer));

  const double a = fixtures::core_radius;
  const TubeImpedance nearly_solid = tubular_internal_impedance(1e-7, a, sigma_core, mu0, w);
  CHECK(rel(nearly_solid.outer, solid_internal_impedance_exact(a, sigma_core, mu0, w)) < 1e-8);
  CHECK_THROWS_AS(tubular_internal_impedance(bo, bi, sigma_screen, mu0, w), std::invalid_argument);
}

TEST_CASE("Pollaczek against a 10x oversampled fixed grid") {
  const LoopGeometry g{0.085, 1.0, 1.0};
  const double sigma_g = 0.01;
  const double w = 2.0 * pi * 50.0;
  const Complex m = std::sqrt(imj * w * mu0 * sigma_g);
  const auto integrand = [&](double beta) {
    const Complex u = std::sqrt(beta * beta + m * m);
    return std::exp(-(g.h1 + g.h2) * u) / (std::abs(beta) + u) * std::cos(beta * g.d);
  };
  // e^{-2 beta} makes [0, 40] ample.
  const Complex integral = oracle::fixed_grid(integrand, 0.0, 40.0, 4000, 20);
  const double d1 = std::hypot(g.d, g.h1 - g.h2), d2 = std::hypot(g.d, g.h1 + g.h2);
  const Complex ref = imj * w * mu0 / (2.0 * pi) * (bessel_k0(m * d1) - bessel_k0(m * d2) + 2.0 * integral);
  CHECK(rel(pollaczek_mutual_impedance(g, sigma_g, w), ref) < 1e-8);
}

TEST_CASE("Pollaczek for deep loops, where the integrand dies long before pi / d") {
  const double sigma_g = 0.01;
  for (double h : {128.0, 256.0}) {
    const LoopGeometry g{0.085, h, h};
    const double w = 2.0 * pi * 50.0;
    const Complex m = std::sqrt(imj * w * mu0 * sigma_g);
    const auto integrand = [&](double beta) {
      const Complex u = std::sqrt(beta * beta + m * m);
      return std::exp(-2.0 * h * u) / (beta + u) * std::cos(beta * g.d);
    };
    const Complex integral = oracle::fixed_grid(integrand, 0.0, 0.01, 2000) + oracle::fixed_grid(integrand, 0.01, 40.0 / h, 2000);
    const Complex ref = imj * w * mu0 / (2.0 * pi) * (bessel_k0(m * g.d) - bessel_k0(m * std::hypot(g.d, 2.0 * h)) + 2.0 * integral);
    CHECK(rel(pollaczek_mutual_impedance(g, sigma_g, w), ref) < 1e-8);
  }
}

TEST_CASE("Pollaczek: h1 <-> h2 reciprocity and weakly conducting ground stays finite") {
  const double w = 2.0 * pi * 1e3;
  CHECK(rel(pollaczek_mutual_impedance({0.3, 0.8, 1.4}, 0.01, w), pollaczek_mutual_impedance({0.3, 1.4, 0.8}, 0.01, w)) < 1e-12);
  double prev = 0.0;
  for (double s : {1e-5, 1e-7, 1e-9}) {
    const Complex z = pollaczek_mutual_impedance({0.085, 1.0, 1.0}, s, w);
    CHECK(std::isfinite(z.real()));
    CHECK(z.imag() > prev);
    prev = z.imag();
  }
}

TEST_CASE("Saad agrees with Pollaczek at 50 Hz and converges with depth") {
  const double w = 2.0 * pi * 50.0;
  for (double d : {0.0425, 0.085, 0.17, 2.0, 4.0}) {
    const LoopGeometry g{d, 1.0, 1.0};
    CHECK(rel(saad_ground_impedance(g, 0.01, w), pollaczek_mutual_impedance(g, 0.01, w)) < 0.01);
  }
  // The series term only becomes negligible once the depth exceeds the skin depth.
  const double wh = 2.0 * pi * 1e5;
  double prev = INFINITY;
  for (double h : {4.0, 8.0, 16.0, 32.0, 64.0, 128.0}) {
    const LoopGeometry g{0.085, h, h};
    const double dev = rel(saad_ground_impedance(g, 0.01, wh), pollaczek_mutual_impedance(g, 0.01, wh));
    CHECK(dev < prev);
    prev = dev;
  }
  CHECK(prev < 1e-7);
}

TEST_CASE("cable-constant matrix") {
  const CableSystem sys = fixtures::load("three_sc_85mm.toml");
  const double w = 2.0 * pi * 50.0;
  const CMatrix z = cable_constants_impedance(sys, w);
  CHECK(z == z.transpose());
  for (int i = 0; i < 6; ++i) CHECK(z(i, i).real() > 0.0);
  // Core and screen of different cables couple only through the ground.
  CHECK(z(0, 4) == z(3, 4));
  CHECK(rel(z(0, 4), pollaczek_mutual_impedance({0.085, 1.0, 1.0}, 0.01, w)) < 1e-12);

  CableSystem one;
  one.ground = sys.ground;
  one.conductors = {sys.conductors[0], sys.conductors[3]};
  const CMatrix z1 = cable_constants_impedance(one, w);
  const TubeImpedance t = tubular_internal_impedance(fixtures::screen_inner, fixtures::screen_outer, sigma_screen, mu0, w);
  const Complex zg = pollaczek_mutual_impedance({fixtures::jacket_radius, 1.0, 1.0}, 0.01, w);
  const Complex ins = imj * w * mu0 / (2.0 * pi) * std::log(fixtures::jacket_radius / fixtures::screen_outer);
  CHECK(rel(z1(1, 1), t.outer + ins + zg) < 1e-12);
  CHECK(rel(z1(0, 1), z1(1, 1) - t.transfer) < 1e-12);

  CableSystem bare = one;
  bare.conductors.pop_back();
  bare.conductors.push_back(fixtures::core("x", {1.0, -1.0}));
  bare.conductors[1].radius = 0.05;
  CHECK_NOTHROW(cable_constants_impedance(fixtures::single_core(), w));
  CableSystem lone_tube;
  lone_tube.conductors = {sys.conductors[3]};
  CHECK_THROWS_AS(cable_constants_impedance(lone_tube, w), std::invalid_argument);
}
