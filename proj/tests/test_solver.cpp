#include <Eigen/Eigenvalues>

#include "check.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "momso/analytic.hpp"
#include "momso/solver.hpp"
#include "momso/special_functions.hpp"
#include "momso/surface_operators.hpp"

using namespace momso;
using momso::testing::rel;

TEST_CASE("selection matrix picks the n = 0 harmonic of every surface") {
  const CableSystem sys = fixtures::load("three_sc_85mm.toml");
  const HarmonicBasis b(sys);
  const CMatrix u = selection_matrix_u(sys, b);
  CHECK(u.rows() == b.nc);
  CHECK(u.cols() == 6);
  CHECK(u.col(0).sum() == Complex{1.0});
  CHECK(u.col(4).sum() == Complex{2.0});
  for (int p = 0; p < 6; ++p) {
    for (int id : b.contours_of_conductor[p]) CHECK(u(b.conductor_contours[id].index(0), p) == Complex{1.0});
  }
}

TEST_CASE("isolated tube: impedance is the outer-surface impedance plus the medium's self term") {
  // The bore holds the surrounding medium; a conducting bore shifts the result
  // by about |k_g b|^2, so keep the medium nearly insulating.
  CableSystem sys;
  sys.ground.kind = GroundKind::homogeneous;
  sys.ground.sigma_g = 1e-6;
  sys.conductors.push_back(fixtures::screen("s", {0.0, -1.0}));
  const Conductor& s = sys.conductors[0];
  for (double f : {1.0, 50.0, 1e3, 1e5}) {
    const double w = 2.0 * pi * f;
    const Complex kg = sys.ground.material().wavenumber(w);
    const Complex external = w * mu0 / 4.0 * bessel_j(0, kg * s.radius) * hankel2(0, kg * s.radius);
    const TubeImpedance t = tubular_internal_impedance(s.inner_radius, s.radius, s.material.sigma, mu0, w);
    const FrequencyResult r = solve_frequency(sys, f);
    CHECK(rel(r.z(0, 0) - external, t.outer) < 1e-6);
  }
}

TEST_CASE("mirror layout gives mirrored impedances") {
  const CableSystem sys = fixtures::load("three_sc_85mm.toml");
  const FrequencyResult r = solve_frequency(sys, 50.0);
  const CMatrix& z = r.z;
  CHECK(rel(z(0, 0), z(2, 2)) < 1e-12);
  CHECK(rel(z(3, 3), z(5, 5)) < 1e-12);
  CHECK(rel(z(0, 1), z(1, 2)) < 1e-12);
  CHECK(rel(z(0, 4), z(2, 4)) < 1e-12);
}

TEST_CASE("passivity and reciprocity across the sweep") {
  for (const char* name : {"three_sc_85mm.toml", "three_sc_tunnel.toml"}) {
    const CableSystem sys = fixtures::load(name);
    for (double f : {1.0, 50.0, 1e3, 1e5, 1e6}) {
      const FrequencyResult r = solve_frequency(sys, f);
      CHECK(r.asymmetry < 1e-10);
      CHECK(r.r == r.r.transpose());
      CHECK(Eigen::SelfAdjointEigenSolver<RMatrix>(r.r).eigenvalues().minCoeff() > 0.0);
      CHECK(Eigen::SelfAdjointEigenSolver<RMatrix>(r.l).eigenvalues().minCoeff() > 0.0);
    }
  }
}

TEST_CASE("single conductor: resistance is nondecreasing and inductance nonincreasing in frequency") {
  const CableSystem sys = fixtures::single_core();
  double r_prev = 0.0, l_prev = INFINITY;
  for (double f : sys.sweep.frequencies()) {
    const FrequencyResult r = solve_frequency(sys, f);
    CHECK(r.r(0, 0) >= r_prev);
    CHECK(r.l(0, 0) <= l_prev);
    r_prev = r.r(0, 0);
    l_prev = r.l(0, 0);
  }
}

TEST_CASE("matched holes are invisible; a lossy fill is not") {
  const CableSystem direct = fixtures::load("three_sc_85mm.toml");
  const CableSystem holes = fixtures::matched_holes(direct);
  CHECK(validate_geometry(holes).ok());
  const FrequencyResult a = solve_frequency(direct, 1e4);
  const FrequencyResult b = solve_frequency(holes, 1e4);
  CHECK((a.z - b.z).norm() < 1e-10 * a.z.norm());

  CableSystem wet = holes;
  for (auto& h : wet.holes) h.medium.sigma = 10.0;
  const FrequencyResult c = solve_frequency(wet, 1e4);
  CHECK((a.z - c.z).norm() > 1e-6 * a.z.norm());
}

TEST_CASE("hole operators: no ground coupling means no hole potential") {
  const CableSystem sys = fixtures::load("three_sc_tunnel.toml");
  const HarmonicBasis b(sys);
  const OperatorSet ops = assemble_operators(sys, b, 2.0 * pi * 50.0);
  CHECK(ops.t.rows() == b.nh);
  CHECK(ops.t.cols() == b.nc);
  const CMatrix zero = CMatrix::Zero(ops.gg.rows(), ops.gg.cols());
  CHECK(solve_hole_potentials(zero, ops.yhat, ops.t).norm() == 0.0);
  CHECK(ops.psi.rows() == b.nc);
}

TEST_CASE("conductors above the surface are rejected") {
  CableSystem sys = fixtures::single_core();
  sys.conductors[0].center.y = 0.5;
  CHECK_THROWS_AS(solve_frequency(sys, 50.0), GeometryError);
}

TEST_CASE("solve is deterministic") {
  const CableSystem sys = fixtures::load("three_sc_tunnel.toml");
  const FrequencyResult a = solve_frequency(sys, 777.0);
  const FrequencyResult b = solve_frequency(sys, 777.0);
  CHECK(a.z == b.z);
}
