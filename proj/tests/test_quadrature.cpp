#include <cmath>

#include "check.hpp"
#include "doctest.h"
#include "momso/oracles.hpp"
#include "momso/quadrature.hpp"

using namespace momso;
using momso::testing::rel;

TEST_CASE("adaptive integration of a smooth vector integrand") {
  const auto f = [](double x) {
    CVector v(2);
    v << std::exp(-x) * std::cos(3.0 * x), Complex{0.0, 1.0} / (1.0 + x * x);
    return v;
  };
  const CVector r = integrate_adaptive(f, 2, {0.0, 2.0});
  CHECK(rel(r(0), (1.0 - std::exp(-2.0) * (std::cos(6.0) - 3.0 * std::sin(6.0))) / 10.0) < 1e-12);
  CHECK(rel(r(1), Complex{0.0, std::atan(2.0)}) < 1e-12);
}

TEST_CASE("semi-infinite integral with oscillation") {
  // int_0^inf e^{-2u} cos(5u) du = 2 / 29
  const Complex r = semi_infinite_quadrature([](double u) { return Complex{std::exp(-2.0 * u) * std::cos(5.0 * u)}; }, 2.0);
  CHECK(rel(r, Complex{2.0 / 29.0}) < 1e-10);
}

TEST_CASE("integrable endpoint singularity") {
  // int_0^1 1/sqrt(x) dx = 2
  const Complex r = semi_infinite_quadrature(
      [](double u) { return u < 1.0 ? Complex{1.0 / std::sqrt(u)} : Complex{}; }, 1.0, {}, {1.0});
  CHECK(rel(r, Complex{2.0}) < 1e-8);
}

TEST_CASE("non-convergence reports best estimate") {
  QuadratureSpec spec;
  spec.rel_tol = 1e-15;
  spec.max_subdivisions = 3;
  const auto f = [](double x) {
    CVector v(1);
    v << std::sin(200.0 * x) * std::sin(200.0 * x);
    return v;
  };
  try {
    integrate_adaptive(f, 1, {0.0, 10.0}, spec);
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(e.estimate().size() == 1);
    CHECK(e.error_bound() > 0.0);
  }
}

TEST_CASE("periodic trapezoid is exact for trigonometric polynomials") {
  const Complex r = periodic_trapezoid([](double t) { return std::exp(Complex{0.0, 3.0 * t}) * std::exp(Complex{0.0, -3.0 * t}); }, 16);
  CHECK(rel(r, Complex{2.0 * pi}) < 1e-14);
  const Complex z = periodic_trapezoid([](double t) { return std::exp(Complex{0.0, 5.0 * t}); }, 16);
  CHECK(std::abs(z) < 1e-13);
}

TEST_CASE("Gauss-Legendre and fixed grid") {
  const auto [x, w] = oracle::gauss_legendre(10);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], 18);
  CHECK(std::abs(s - 2.0 / 19.0) < 1e-14);
  CHECK(rel(oracle::fixed_grid([](double t) { return Complex{std::cos(t)}; }, 0.0, pi / 2, 8), Complex{1.0}) < 1e-14);
}
