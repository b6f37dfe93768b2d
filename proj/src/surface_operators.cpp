#include "momso/surface_operators.hpp"

#include <cmath>

#include "momso/special_functions.hpp"

namespace momso {

HarmonicBasis::HarmonicBasis(const CableSystem& sys) {
  contours_of_conductor.resize(sys.conductors.size());
  for (int p = 0; p < sys.size(); ++p) {
    const Conductor& c = sys.conductors[p];
    if (c.is_tube()) {
      Contour in{Contour::Kind::conductor_inner, p, c.center, c.inner_radius, c.n_p, nc};
      nc += in.size();
      contours_of_conductor[p].push_back(static_cast<int>(conductor_contours.size()));
      conductor_contours.push_back(in);
    }
    Contour out{Contour::Kind::conductor_outer, p, c.center, c.radius, c.n_p, nc};
    nc += out.size();
    contours_of_conductor[p].push_back(static_cast<int>(conductor_contours.size()));
    conductor_contours.push_back(out);
  }
  for (int h = 0; h < static_cast<int>(sys.holes.size()); ++h) {
    const Hole& hole = sys.holes[h];
    Contour c{Contour::Kind::hole, h, hole.center, hole.radius, hole.n_hat, nh};
    nh += c.size();
    hole_contours.push_back(c);
  }
}

CVector solid_conductor_admittance(const Conductor& cond, const Material& outside, double omega) {
  const int N = cond.n_p;
  const Complex k = cond.material.wavenumber(omega);
  const Complex kh = outside.wavenumber(omega);
  const double mu = cond.material.mu();
  const double muh = outside.mu();
  const double a = cond.radius;
  const Complex pre = 2.0 * pi / (imj * omega);
  CVector y(2 * N + 1);
  for (int m = 0; m <= N; ++m) {
    // z J'/J = |n| + h(z); the |n| parts cancel exactly for matched permeability.
    const Complex hk = bessel_j_zdlog_reduced(m, k * a);
    const Complex hkh = bessel_j_zdlog_reduced(m, kh * a);
    const Complex v = pre * (m * (1.0 / mu - 1.0 / muh) + hk / mu - hkh / muh);
    y(N + m) = v;
    y(N - m) = v;
  }
  return y;
}

namespace {

// Annulus Dirichlet-to-Neumann map: (E(b_in), E(b_out)) -> (b_in dE/drho, b_out dE/drho).
Eigen::Matrix2cd annulus_dtn(int n, Complex k, double b_in, double b_out) {
  const Complex zi = k * b_in;
  const Complex zo = k * b_out;
  Eigen::Matrix2cd M;
  Eigen::Matrix2cd N;
  // z C'_n(z) = n C_n(z) - z C_{n+1}(z)
  auto zd = [n](Complex z, Complex c_n, Complex c_n1) { return static_cast<double>(n) * c_n - z * c_n1; };
  // J and Y both grow like e^{|Im z|}; across a thin wall their determinant
  // cancels to ~e^{-2|Im z|}, so switch to the Hankel pair early.
  if (std::abs(zo) <= 20.0 && std::abs(zo.imag()) <= 1.0) {
    const auto ji = bessel_j_array(n + 1, zi);
    const auto jo = bessel_j_array(n + 1, zo);
    const auto yi = bessel_y_array(n + 1, zi);
    const auto yo = bessel_y_array(n + 1, zo);
    M << ji[n], yi[n], jo[n], yo[n];
    N << zd(zi, ji[n], ji[n + 1]), zd(zi, yi[n], yi[n + 1]), zd(zo, jo[n], jo[n + 1]), zd(zo, yo[n], yo[n + 1]);
  } else {
    // Scaled Hankel pair; columns rescaled so the only exponential left is
    // e^{-ik(b_out-b_in)}, which has modulus <= 1 for lossy k.
    const Complex decay = std::exp(-imj * k * (b_out - b_in));
    const Complex h1i = hankel1_scaled(n, zi) * decay, h1i1 = hankel1_scaled(n + 1, zi) * decay;
    const Complex h1o = hankel1_scaled(n, zo), h1o1 = hankel1_scaled(n + 1, zo);
    const Complex h2i = hankel2_scaled(n, zi), h2i1 = hankel2_scaled(n + 1, zi);
    const Complex h2o = hankel2_scaled(n, zo) * decay, h2o1 = hankel2_scaled(n + 1, zo) * decay;
    M << h1i, h2i, h1o, h2o;
    N << zd(zi, h1i, h1i1), zd(zi, h2i, h2i1), zd(zo, h1o, h1o1), zd(zo, h2o, h2o1);
  }
  const Complex det = M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
  const double scale = std::abs(M(0, 0) * M(1, 1)) + std::abs(M(0, 1) * M(1, 0));
  if (!(std::abs(det) > 1e-12 * scale)) throw ResonanceError("annulus resonance in tube admittance");
  Eigen::Matrix2cd inv;
  inv << M(1, 1), -M(0, 1), -M(1, 0), M(0, 0);
  return N * inv / det;
}

}  // namespace

std::vector<Eigen::Matrix2cd> tubular_conductor_admittance(const Conductor& cond, const Material& surrounding,
                                                           double omega) {
  const int N = cond.n_p;
  const Complex k = cond.material.wavenumber(omega);
  const Complex kh = surrounding.wavenumber(omega);
  const double mu = cond.material.mu();
  const double muh = surrounding.mu();
  const Complex pre = 2.0 * pi / (imj * omega);
  std::vector<Eigen::Matrix2cd> out(static_cast<std::size_t>(2 * N + 1));
  for (int m = 0; m <= N; ++m) {
    const Eigen::Matrix2cd lam = annulus_dtn(m, k, cond.inner_radius, cond.radius) / mu -
                                 annulus_dtn(m, kh, cond.inner_radius, cond.radius) / muh;
    Eigen::Matrix2cd y;
    // The conductor's outward normal is -rho on the bore surface.
    y.row(0) = -pre * lam.row(0);
    y.row(1) = pre * lam.row(1);
    out[N + m] = y;
    out[N - m] = y;
  }
  return out;
}

Material surrounding_medium(const CableSystem& sys, int conductor) {
  const Conductor& c = sys.conductors[conductor];
  return c.hole ? sys.holes[*c.hole].medium : sys.ground.material();
}

CMatrix surface_admittance(const CableSystem& sys, const HarmonicBasis& basis, double omega) {
  CMatrix ys = CMatrix::Zero(basis.nc, basis.nc);
  for (int p = 0; p < sys.size(); ++p) {
    const Conductor& c = sys.conductors[p];
    const Material surrounding = surrounding_medium(sys, p);
    const auto& ids = basis.contours_of_conductor[p];
    if (c.is_tube()) {
      const Contour& in = basis.conductor_contours[ids[0]];
      const Contour& out = basis.conductor_contours[ids[1]];
      const auto blocks = tubular_conductor_admittance(c, surrounding, omega);
      for (int n = -c.n_p; n <= c.n_p; ++n) {
        const Eigen::Matrix2cd& b = blocks[n + c.n_p];
        const int i = in.index(n);
        const int o = out.index(n);
        ys(i, i) = b(0, 0);
        ys(i, o) = b(0, 1);
        ys(o, i) = b(1, 0);
        ys(o, o) = b(1, 1);
      }
    } else {
      const Contour& out = basis.conductor_contours[ids[0]];
      const CVector d = solid_conductor_admittance(c, surrounding, omega);
      for (int n = -c.n_p; n <= c.n_p; ++n) ys(out.index(n), out.index(n)) = d(n + c.n_p);
    }
  }
  return ys;
}

HoleAdmittance hole_surface_admittance(const Hole& hole, const GroundModel& ground, double omega) {
  const int N = hole.n_hat;
  const Material gm = ground.material();
  const Complex kg = gm.wavenumber(omega);
  const Complex kh = hole.medium.wavenumber(omega);
  const double mug = gm.mu();
  const double muh = hole.medium.mu();
  const double a = hole.radius;
  HoleAdmittance out{CVector(2 * N + 1), CVector(2 * N + 1), CVector(2 * N + 1)};
  const auto jh = bessel_j_array(N, kh * a);
  for (int m = 0; m <= N; ++m) {
    const Complex hg = bessel_j_zdlog_reduced(m, kg * a);
    const Complex hh = bessel_j_zdlog_reduced(m, kh * a);
    if (std::abs(jh[m]) == 0.0) throw BesselPole("hole interior at a zero of J_" + std::to_string(m));
    const Complex ys = 2.0 * pi * (m * (1.0 / mug - 1.0 / muh) + hg / mug - hh / muh);
    const Complex d2 = (static_cast<double>(m) + hh) / a;
    for (int s : {N + m, N - m}) {
      out.ys(s) = ys;
      out.d1(s) = 1.0 / jh[m];
      out.d2(s) = d2;
    }
  }
  return out;
}

}  // namespace momso
