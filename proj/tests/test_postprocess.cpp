#include "check.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "momso/postprocess.hpp"

using namespace momso;
using momso::testing::rel;
using momso::testing::rel_norm;

namespace {

CableSystem short_sweep(const char* name, int points = 4) {
  CableSystem sys = fixtures::load(name);
  sys.sweep.f_min = 10.0;
  sys.sweep.f_max = 1e5;
  sys.sweep.points = points;
  return sys;
}

}  // namespace

TEST_CASE("grounded reduction of a 2x2 matrix") {
  CMatrix z(2, 2);
  z << Complex{1.0, 2.0}, Complex{0.3, 0.4}, Complex{0.3, 0.4}, Complex{2.0, 1.0};
  const ReducedImpedance r = reduce_grounded(z, {1});
  REQUIRE(r.z.rows() == 1);
  CHECK(rel(r.z(0, 0), z(0, 0) - z(0, 1) * z(1, 0) / z(1, 1)) < 1e-15);
  CHECK(r.retained == std::vector<int>{0});
}

TEST_CASE("open reduction keeps the retained submatrix") {
  CMatrix z = CMatrix::Random(4, 4);
  z = (z + z.transpose()).eval();
  const ReducedImpedance r = reduce_open(z, {0, 2});
  CHECK(r.retained == std::vector<int>{1, 3});
  CHECK(r.z(0, 1) == z(1, 3));
  CHECK(r.z(1, 1) == z(3, 3));
}

TEST_CASE("reductions keep symmetry and reject bad input") {
  const CableSystem sys = fixtures::load("three_sc_85mm.toml");
  const CMatrix z = cable_constants_impedance(sys, 2.0 * pi * 50.0);
  const CMatrix g = reduce_grounded(z, {3, 4, 5}).z;
  CHECK((g - g.transpose()).norm() < 1e-15 * g.norm());
  CMatrix singular = CMatrix::Identity(3, 3);
  singular(2, 2) = 0.0;
  CHECK_THROWS_AS(reduce_grounded(singular, {2}), NumericalError);
}

TEST_CASE("circulant phase matrix: zero and positive sequence") {
  const Complex s{2.0, 5.0}, m{0.5, 1.5};
  CMatrix z(3, 3);
  z << s, m, m, m, s, m, m, m, s;
  const SequenceResult q = sequence_impedances(z);
  CHECK(rel(q.z0, s + 2.0 * m) < 1e-14);
  CHECK(rel(q.z1, s - m) < 1e-14);
  const CMatrix seq = sequence_matrix(z);
  CHECK(std::abs(seq(0, 1)) < 1e-14);
  const CMatrix a = fortescue_matrix();
  CHECK(rel_norm(CMatrix(a * seq * a.inverse()), z) < 1e-12);
}

TEST_CASE("sweep modes and CSV round-trip") {
  const CableSystem sys = short_sweep("three_sc_85mm.toml");
  SweepOptions opt;
  opt.mode = SweepMode::both;
  opt.reduction = Reduction{Reduction::Kind::grounded, {3, 4, 5}};
  opt.sequence = true;
  const SweepReport rep = run_sweep(sys, opt);
  REQUIRE(rep.all_ok());
  CHECK(rep.records.size() == 4);
  CHECK(rep.reduced_size == 3);
  CHECK(rep.records[0].reference.has_value());
  CHECK(rep.records[0].primary->sequence.has_value());

  const std::string csv = emit_csv(rep);
  CHECK(csv.rfind("f_hz,R_1_1,", 0) == 0);
  CHECK(csv.find("cc_R0") != std::string::npos);
  CHECK(csv.find("dev_L_6_6") != std::string::npos);
  const SweepReport back = parse_csv(csv);
  CHECK(same_tabulation(rep, back));
  CHECK(emit_csv(back) == csv);
}

TEST_CASE("worker count does not change a single bit") {
  const CableSystem sys = short_sweep("three_sc_tunnel.toml", 6);
  SweepOptions one;
  SweepOptions four;
  four.workers = 4;
  CHECK(emit_csv(run_sweep(sys, one)) == emit_csv(run_sweep(sys, four)));
  CHECK(emit_csv(run_sweep(sys, one)) == emit_csv(run_sweep(sys, one)));
}

TEST_CASE("compare_report") {
  const CableSystem sys = short_sweep("three_sc_2m.toml");
  SweepOptions mom;
  SweepOptions cc;
  cc.mode = SweepMode::analytic;
  const SweepReport a = run_sweep(sys, mom);
  const DeviationTable same = compare_report(a, a);
  CHECK(same.max_r == 0.0);
  CHECK(same.max_l == 0.0);
  const DeviationTable d = compare_report(a, run_sweep(sys, cc));
  CHECK(d.f_hz.size() == 4);
  CHECK(d.max_r > 0.0);
  CHECK(d.median_r <= d.max_r);
  CableSystem other = sys;
  other.sweep.points = 3;
  CHECK_THROWS(compare_report(a, run_sweep(other, mom)));
}

TEST_CASE("option validation happens before any solve") {
  const CableSystem sys = short_sweep("three_sc_85mm.toml");
  SweepOptions opt;
  opt.sequence = true;
  CHECK_THROWS_AS(run_sweep(sys, opt), ConfigError);
  opt.sequence = false;
  opt.reduction = Reduction{Reduction::Kind::open, {9}};
  CHECK_THROWS_AS(run_sweep(sys, opt), ConfigError);
}

TEST_CASE("a failing frequency is recorded and the sweep continues") {
  CableSystem sys = short_sweep("single_core.toml", 2);
  sys.conductors[0].center.y = 0.5;
  SweepOptions opt;
  opt.mode = SweepMode::both;
  const SweepReport rep = run_sweep(sys, opt);
  REQUIRE(rep.records.size() == 2);
  CHECK(!rep.all_ok());
  CHECK(rep.records[0].status.find("momso:") != std::string::npos);
  const std::string csv = emit_csv(rep);
  CHECK(csv.find("nan") != std::string::npos);
  CHECK(parse_csv(csv).records[1].status == rep.records[1].status);
}
