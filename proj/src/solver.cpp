#include "momso/solver.hpp"

#include <array>
#include <cmath>
#include <map>
#include <sstream>

#include "momso/greens.hpp"
#include "momso/special_functions.hpp"

namespace momso {

namespace {

constexpr double asymmetry_gate = 1e-8;
constexpr double cond_warning = 1e10;

int max_order(const std::vector<Contour>& cs) {
  int n = 0;
  for (const auto& c : cs) n = std::max(n, c.order);
  return n;
}

// mu0 * (homogeneous + reflected) ground kernel over a contour list. Every
// contour pair sharing the same two centres reuses one set of spectral moments.
CMatrix ground_matrix(const std::vector<Contour>& contours, int dim, double omega, const GroundModel& ground,
                      const QuadratureSpec& spec) {
  const Complex kg = ground.material().wavenumber(omega);
  const int S = 2 * max_order(contours);
  std::map<std::array<double, 4>, ReflectedMoments> cache;
  auto block = [&](const Contour& obs, const Contour& src) {
    CMatrix g = homogeneous_harmonic_matrix(obs, src, kg);
    if (ground.kind == GroundKind::two_layer) {
      if (!(obs.center.y + obs.radius < 0.0 && src.center.y + src.radius < 0.0)) {
        throw GeometryError("contours must lie below the ground surface");
      }
      const std::array<double, 4> key{obs.center.x, obs.center.y, src.center.x, src.center.y};
      auto it = cache.find(key);
      if (it == cache.end()) {
        it = cache.emplace(key, reflected_moments(obs.center, src.center, S, omega, ground, spec)).first;
      }
      g += reflected_block(it->second, obs, src);
    }
    return CMatrix(mu0 * g);
  };
  return symmetric_block_matrix(contours, dim, block);
}

std::vector<int> member_contours(const HarmonicBasis& basis, const CableSystem& sys, int hole) {
  std::vector<int> ids;
  for (int i = 0; i < static_cast<int>(basis.conductor_contours.size()); ++i) {
    const Conductor& c = sys.conductors[basis.conductor_contours[i].owner];
    if (c.hole && *c.hole == hole) ids.push_back(i);
  }
  return ids;
}

double rcond_of(const Eigen::PartialPivLU<CMatrix>& lu) { return lu.rcond(); }

std::string fmt_cond(const char* what, double rc) {
  std::ostringstream os;
  os << what << " condition number ~" << (rc > 0.0 ? 1.0 / rc : INFINITY);
  return os.str();
}

}  // namespace

CMatrix selection_matrix_u(const CableSystem& sys, const HarmonicBasis& basis) {
  CMatrix u = CMatrix::Zero(basis.nc, sys.size());
  for (const auto& c : basis.conductor_contours) u(c.index(0), c.owner) = 1.0;
  return u;
}

CMatrix assemble_t(const CableSystem& sys, const HarmonicBasis& basis, int hole, double omega) {
  const Hole& h = sys.holes[hole];
  const Contour& hc = basis.hole_contours[hole];
  const Complex kh = h.medium.wavenumber(omega);
  const HoleAdmittance adm = hole_surface_admittance(h, sys.ground, omega);
  CMatrix t = CMatrix::Zero(hc.size(), basis.nc);
  for (int id : member_contours(basis, sys, hole)) {
    const Contour& cc = basis.conductor_contours[id];
    const CMatrix g0 = homogeneous_harmonic_matrix(hc, cc, kh);
    const CMatrix gt = homogeneous_harmonic_matrix_radial_derivative(hc, cc, kh);
    t.middleCols(cc.offset, cc.size()) = 2.0 * pi * h.radius * (gt - adm.d2.asDiagonal() * g0);
  }
  return t;
}

CMatrix solve_hole_potentials(const CMatrix& gg, const CVector& yhat, const CMatrix& t) {
  const int nh = static_cast<int>(gg.rows());
  const CMatrix a = CMatrix::Identity(nh, nh) + mu0 * gg * yhat.asDiagonal();
  Eigen::PartialPivLU<CMatrix> lu(a);
  const double rc = rcond_of(lu);
  if (!(rc > 1e-15)) throw ResonanceError(fmt_cond("hole-potential system singular:", rc));
  return -mu0 * lu.solve(gg * t);
}

OperatorSet assemble_operators(const CableSystem& sys, const HarmonicBasis& basis, double omega) {
  const QuadratureSpec& spec = sys.solver.quadrature;
  OperatorSet ops;
  ops.omega = omega;
  ops.ys = surface_admittance(sys, basis, omega);
  ops.u = selection_matrix_u(sys, basis);

  if (sys.direct_burial()) {
    ops.psi = ground_matrix(basis.conductor_contours, basis.nc, omega, sys.ground, spec);
    ops.gc = ops.psi;
    return ops;
  }

  const int nc = basis.nc;
  const int nh = basis.nh;
  ops.yhat = CVector::Zero(nh);
  ops.d1 = CVector::Zero(nh);
  ops.d2 = CVector::Zero(nh);
  ops.g0 = CMatrix::Zero(nh, nc);
  ops.gt0 = CMatrix::Zero(nh, nc);
  ops.h = CMatrix::Zero(nc, nh);
  ops.t = CMatrix::Zero(nh, nc);

  std::vector<int> hole_of(basis.conductor_contours.size(), -1);
  for (int hi = 0; hi < static_cast<int>(sys.holes.size()); ++hi) {
    const Hole& h = sys.holes[hi];
    const Contour& hc = basis.hole_contours[hi];
    const Complex kh = h.medium.wavenumber(omega);
    const double muh = h.medium.mu();
    const HoleAdmittance adm = hole_surface_admittance(h, sys.ground, omega);
    ops.yhat.segment(hc.offset, hc.size()) = adm.ys;
    ops.d1.segment(hc.offset, hc.size()) = adm.d1;
    ops.d2.segment(hc.offset, hc.size()) = adm.d2;

    const auto ids = member_contours(basis, sys, hi);
    std::vector<Contour> members;
    for (int id : ids) {
      hole_of[id] = hi;
      const Contour& cc = basis.conductor_contours[id];
      members.push_back(cc);
      const CMatrix g0 = homogeneous_harmonic_matrix(hc, cc, kh);
      const CMatrix gt = homogeneous_harmonic_matrix_radial_derivative(hc, cc, kh);
      ops.g0.block(hc.offset, cc.offset, hc.size(), cc.size()) = muh * g0;
      ops.gt0.block(hc.offset, cc.offset, hc.size(), cc.size()) = gt;
      ops.t.block(hc.offset, cc.offset, hc.size(), cc.size()) =
          2.0 * pi * h.radius * (gt - adm.d2.asDiagonal() * g0);
    }
    if (!members.empty()) {
      const CMatrix hr = regular_wave_matrix(members, hc, kh);
      int row = 0;
      for (const auto& cc : members) {
        ops.h.block(cc.offset, hc.offset, cc.size(), hc.size()) = hr.middleRows(row, cc.size());
        row += cc.size();
      }
    }
  }

  ops.gc = symmetric_block_matrix(basis.conductor_contours, nc, [&](const Contour& a, const Contour& b) {
    const int ha = hole_of[&a - basis.conductor_contours.data()];
    const int hb = hole_of[&b - basis.conductor_contours.data()];
    if (ha != hb) return CMatrix(CMatrix::Zero(a.size(), b.size()));
    const Material& m = sys.holes[ha].medium;
    return CMatrix(m.mu() * homogeneous_harmonic_matrix(a, b, m.wavenumber(omega)));
  });

  // Hole boundaries see the ground kernel without the mu0 factor.
  ops.gg = ground_matrix(basis.hole_contours, nh, omega, sys.ground, spec) / mu0;
  ops.ma = solve_hole_potentials(ops.gg, ops.yhat, ops.t);
  ops.psi = ops.h * ops.d1.asDiagonal() * (-ops.ma - ops.g0) + ops.gc;
  return ops;
}

FrequencyResult extract_rl(const OperatorSet& ops, double f_hz) {
  FrequencyResult out;
  out.f_hz = f_hz;
  const int nc = static_cast<int>(ops.ys.rows());
  const CMatrix a = CMatrix::Identity(nc, nc) - imj * ops.omega * ops.ys * ops.psi;
  Eigen::PartialPivLU<CMatrix> lu(a);
  const double rc = rcond_of(lu);
  if (!(rc > 1e-15)) throw ResonanceError(fmt_cond("surface system singular:", rc));
  if (1.0 / rc > cond_warning) out.diagnostics.push_back(fmt_cond("surface system", rc));

  const CMatrix inner = ops.u.transpose() * lu.solve(ops.ys * ops.u);
  Eigen::PartialPivLU<CMatrix> lu2(inner);
  const double rc2 = rcond_of(lu2);
  if (!(rc2 > 1e-15)) throw ResonanceError(fmt_cond("reduced admittance singular:", rc2));
  if (1.0 / rc2 > cond_warning) out.diagnostics.push_back(fmt_cond("reduced admittance", rc2));
  const CMatrix z = lu2.inverse();

  const double norm = z.norm();
  out.asymmetry = norm > 0.0 ? (z - z.transpose()).norm() / norm : 0.0;
  if (!(out.asymmetry <= asymmetry_gate)) {
    std::ostringstream os;
    os << "impedance matrix not reciprocal (relative asymmetry " << out.asymmetry << "); assembly error";
    throw NumericalError(os.str());
  }
  const RMatrix r = z.real();
  const RMatrix l = z.imag();
  out.asymmetry_r = (r - r.transpose()).norm() / r.norm();
  out.asymmetry_l = (l - l.transpose()).norm() / l.norm();
  out.z = 0.5 * (z + z.transpose());
  out.r = out.z.real();
  out.l = out.z.imag() / ops.omega;
  return out;
}

FrequencyResult solve_frequency(const CableSystem& sys, double f_hz) {
  const HarmonicBasis basis(sys);
  auto attempt = [&](double f) { return extract_rl(assemble_operators(sys, basis, 2.0 * pi * f), f_hz); };
  try {
    return attempt(f_hz);
  } catch (const ResonanceError& e) {
    const double shifted = f_hz * (1.0 + 1e-9);
    FrequencyResult r = attempt(shifted);
    std::ostringstream os;
    os.precision(17);
    os << "resonance at " << f_hz << " Hz (" << e.what() << "); solved at " << shifted << " Hz";
    r.diagnostics.push_back(os.str());
    return r;
  }
}

}  // namespace momso
