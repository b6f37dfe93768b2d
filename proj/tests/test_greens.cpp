#include "check.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "momso/greens.hpp"
#include "momso/oracles.hpp"
#include "momso/special_functions.hpp"

using namespace momso;
using momso::testing::rel;
using momso::testing::rel_norm;

namespace {

Contour circle(Point c, double r, int order, int offset = 0, Contour::Kind kind = Contour::Kind::conductor_outer) {
  Contour k;
  k.kind = kind;
  k.center = c;
  k.radius = r;
  k.order = order;
  k.offset = offset;
  return k;
}

oracle::PointKernel hankel_kernel(Complex k) {
  return [k](Point a, Point b) { return Complex{0.0, 0.25} * hankel2(0, k * distance(a, b)); };
}

}  // namespace

TEST_CASE("separated circles: closed form matches the trapezoid double integral") {
  const Contour a = circle({0.0, -1.0}, 0.0195, 4);
  const Contour b = circle({0.085, -1.0}, 0.03797, 3);
  for (Complex k : {Complex{1e-3, -1e-3}, Complex{2.0, -1.5}, Complex{20.0, -0.0}}) {
    const CMatrix g = homogeneous_harmonic_matrix(a, b, k);
    const CMatrix q = oracle::harmonic_matrix_quadrature(a, b, hankel_kernel(k), 128);
    CHECK(rel_norm(g, q) < 1e-10);
  }
}

TEST_CASE("concentric circles are diagonal with J H entries") {
  const Complex k{3.0, -2.0};
  const Contour in = circle({0.2, -1.0}, 0.02, 3);
  const Contour out = circle({0.2, -1.0}, 0.04, 3);
  const CMatrix g = homogeneous_harmonic_matrix(out, in, k);
  for (int m = -3; m <= 3; ++m) {
    for (int n = -3; n <= 3; ++n) {
      const Complex expect =
          m == n ? Complex{0.0, 0.25} * bessel_j(std::abs(n), k * 0.02) * hankel2(std::abs(n), k * 0.04) : Complex{};
      CHECK(std::abs(g(m + 3, n + 3) - expect) < 1e-14);
    }
  }
}

TEST_CASE("self term matches the log-subtracted quadrature") {
  const double a = 0.0195;
  for (Complex k : {Complex{1e-4, -1e-4}, Complex{5.0, -5.0}}) {
    const Contour c = circle({0.0, -1.0}, a, 4);
    const CMatrix g = homogeneous_harmonic_matrix(c, c, k);
    for (int n = -4; n <= 4; ++n) CHECK(rel(g(n + 4, n + 4), oracle::self_term_log_subtraction(n, k, a, 4096)) < 1e-6);
    CHECK(std::abs(g(0, 1)) == doctest::Approx(0.0));
  }
}

TEST_CASE("radial derivative matches a central difference") {
  const Complex k{1.5, -0.7};
  const Contour src = circle({0.1, -1.0}, 0.02, 2);
  const Contour obs = circle({0.0, -1.05}, 0.5, 2, 0, Contour::Kind::hole);
  const double h = 1e-5;
  Contour lo = obs, hi = obs;
  lo.radius -= h;
  hi.radius += h;
  const CMatrix fd = (homogeneous_harmonic_matrix(hi, src, k) - homogeneous_harmonic_matrix(lo, src, k)) / (2.0 * h);
  CHECK(rel_norm(homogeneous_harmonic_matrix_radial_derivative(obs, src, k), fd) < 1e-7);
}

TEST_CASE("regular waves use J of |n|") {
  const Complex k{0.8, -0.2};
  const Contour hole = circle({0.0, -1.0}, 0.5, 3, 0, Contour::Kind::hole);
  const Contour a = circle({0.1, -1.05}, 0.02, 2);
  const Contour b = circle({-0.12, -0.9}, 0.03, 1, a.size());
  const CMatrix h = regular_wave_matrix({a, b}, hole, k);
  CHECK(rel_norm(h.topRows(a.size()), oracle::regular_wave_quadrature(a, hole, k, 64)) < 1e-12);
  CHECK(rel_norm(h.bottomRows(b.size()), oracle::regular_wave_quadrature(b, hole, k, 64)) < 1e-12);
}

TEST_CASE("ground kernel: vacuum ground reduces to the free-space kernel") {
  GroundModel g;
  g.sigma_g = 0.0;
  const double w = 2.0 * pi * 1e5;
  const double k0 = w / 299792458.0;
  const Point r{0.3, -1.0}, rp{-0.4, -0.2};
  CHECK(rel(two_layer_green(r, rp, w, g), Complex{0.0, 0.25} * hankel2(0, Complex{k0 * distance(r, rp)})) < 1e-10);
  CHECK(std::abs(reflected_green(r, rp, w, g)) < 1e-12);
}

TEST_CASE("ground kernel: lossy ground against brute force, and reciprocity") {
  GroundModel g;
  g.sigma_g = 0.01;
  const Point r{0.085, -1.0}, rp{0.0, -1.3};
  for (double f : {1.0, 50.0, 1e4, 1e6}) {
    const double w = 2.0 * pi * f;
    const Complex a = two_layer_green(r, rp, w, g);
    CHECK(rel(a, oracle::brute_force_two_layer_green(r, rp, w, g)) < 1e-8);
    CHECK(rel(reflected_green(r, rp, w, g), oracle::brute_force_reflected_green(r, rp, w, g)) < 1e-8);
    CHECK(rel(two_layer_green(rp, r, w, g), a) < 1e-13);
  }
  GroundModel homo = g;
  homo.kind = GroundKind::homogeneous;
  CHECK(reflected_green(r, rp, 2.0 * pi * 50.0, homo) == Complex{});
}

TEST_CASE("reflected harmonic blocks against trapezoid over the reflected kernel") {
  GroundModel g;
  const double w = 2.0 * pi * 1e3;
  const Contour a = circle({0.0, -1.0}, 0.0195, 3);
  const Contour b = circle({0.085, -1.0}, 0.03797, 3);
  const auto kernel = [&](Point p, Point q) { return reflected_green(p, q, w, g); };
  CHECK(rel_norm(reflected_harmonic_matrix(a, b, w, g), oracle::harmonic_matrix_quadrature(a, b, kernel, 24)) < 1e-9);
  CHECK(rel_norm(reflected_harmonic_matrix(a, a, w, g), oracle::harmonic_matrix_quadrature(a, a, kernel, 24)) < 1e-9);
}

TEST_CASE("symmetric block assembly mirrors (m, n) -> (-n, -m)") {
  const Complex k{4.0, -3.0};
  const Contour a = circle({0.0, -1.0}, 0.02, 2, 0);
  const Contour b = circle({0.09, -0.95}, 0.03, 3, a.size());
  const CMatrix full = symmetric_block_matrix({a, b}, a.size() + b.size(),
                                              [&](const Contour& o, const Contour& s) { return homogeneous_harmonic_matrix(o, s, k); });
  CHECK(rel_norm(CMatrix(full.block(b.offset, a.offset, b.size(), a.size())), homogeneous_harmonic_matrix(b, a, k)) < 1e-13);
}

TEST_CASE("mirror layout: index reflection symmetry") {
  // Circles mirrored about x = 0 give G(m, n) between mirrored pairs = G(-m, -n).
  const Complex k{2.0, -2.0};
  const Contour a = circle({-0.085, -1.0}, 0.02, 2);
  const Contour b = circle({0.085, -1.0}, 0.02, 2);
  const Contour c = circle({0.0, -1.2}, 0.02, 2);
  const CMatrix ac = homogeneous_harmonic_matrix(a, c, k);
  const CMatrix bc = homogeneous_harmonic_matrix(b, c, k);
  for (int m = -2; m <= 2; ++m) {
    for (int n = -2; n <= 2; ++n) {
      const double s = ((m + n) % 2) ? -1.0 : 1.0;
      CHECK(std::abs(ac(m + 2, n + 2) - s * bc(-m + 2, -n + 2)) < 1e-13 * ac.norm());
    }
  }
}
