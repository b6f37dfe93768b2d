#include "momso/greens.hpp"

#include <algorithm>
#include <cmath>

#include "momso/special_functions.hpp"

namespace momso {

namespace {

constexpr Complex quarter_j{0.0, 0.25};

// Signed-order lookup into an array of orders 0..n: C_{-n} = (-1)^n C_n.
Complex ord(const std::vector<Complex>& c, int n) {
  const int m = std::abs(n);
  return (n < 0 && (m % 2 == 1)) ? -c[m] : c[m];
}

Complex cis(double x) { return {std::cos(x), std::sin(x)}; }

enum class Relation { identical, disjoint, src_inside_obs, obs_inside_src };

Relation classify(const Contour& obs, const Contour& src) {
  const double d = distance(obs.center, src.center);
  const double scale = std::max(obs.radius, src.radius);
  if (d <= 1e-12 * scale && std::abs(obs.radius - src.radius) <= 1e-12 * scale) return Relation::identical;
  if (d >= (obs.radius + src.radius) * (1.0 - 1e-12)) return Relation::disjoint;
  if (d + src.radius <= obs.radius * (1.0 + 1e-12)) return Relation::src_inside_obs;
  if (d + obs.radius <= src.radius * (1.0 + 1e-12)) return Relation::obs_inside_src;
  throw GeometryError("contours overlap without being identical");
}

// Source circle inside the observation circle. `outer` holds H_m(k a_obs) or
// its radial derivative.
CMatrix nested_matrix(const Contour& obs, const Contour& src, Complex k, const std::vector<Complex>& outer) {
  const int No = obs.order;
  const int Ns = src.order;
  const Point D{src.center.x - obs.center.x, src.center.y - obs.center.y};
  const double d = std::hypot(D.x, D.y);
  const double phi = std::atan2(D.y, D.x);
  const auto js = bessel_j_array(Ns, k * src.radius);
  const auto jd = bessel_j_array(No + Ns, k * d);
  CMatrix g(obs.size(), src.size());
  for (int m = -No; m <= No; ++m) {
    for (int n = -Ns; n <= Ns; ++n) {
      g(m + No, n + Ns) = quarter_j * ord(js, n) * ord(outer, m) * ord(jd, m - n) * cis(-(m - n) * phi);
    }
  }
  return g;
}

CMatrix flip(const CMatrix& g) {
  // block'(m,n) = block(-n,-m)
  CMatrix f(g.cols(), g.rows());
  for (int m = 0; m < g.cols(); ++m) {
    for (int n = 0; n < g.rows(); ++n) f(m, n) = g(g.rows() - 1 - n, g.cols() - 1 - m);
  }
  return f;
}

std::vector<Complex> hankel_derivative_array(int nmax, Complex z, Complex k) {
  const auto h = hankel2_array(nmax + 1, z);
  std::vector<Complex> d(static_cast<std::size_t>(nmax) + 1);
  // H'_0 = -H_1, H'_m = H_{m-1} - (m/z) H_m
  d[0] = -k * h[1];
  for (int m = 1; m <= nmax; ++m) d[m] = k * (h[m - 1] - static_cast<double>(m) / z * h[m]);
  return d;
}

}  // namespace

CMatrix homogeneous_harmonic_matrix(const Contour& obs, const Contour& src, Complex k) {
  const int No = obs.order;
  const int Ns = src.order;
  switch (classify(obs, src)) {
    case Relation::identical: {
      const int N = std::max(No, Ns);
      const auto j = bessel_j_array(N, k * obs.radius);
      const auto h = hankel2_array(N, k * obs.radius);
      CMatrix g = CMatrix::Zero(obs.size(), src.size());
      for (int n = -std::min(No, Ns); n <= std::min(No, Ns); ++n) {
        g(n + No, n + Ns) = quarter_j * ord(j, n) * ord(h, n);
      }
      return g;
    }
    case Relation::disjoint: {
      const Point D{obs.center.x - src.center.x, obs.center.y - src.center.y};
      const double d = std::hypot(D.x, D.y);
      const double phi = std::atan2(D.y, D.x);
      const auto js = bessel_j_array(Ns, k * src.radius);
      const auto jo = bessel_j_array(No, k * obs.radius);
      const auto hd = hankel2_array(No + Ns, k * d);
      CMatrix g(obs.size(), src.size());
      for (int m = -No; m <= No; ++m) {
        for (int n = -Ns; n <= Ns; ++n) {
          g(m + No, n + Ns) = quarter_j * ord(js, n) * ord(jo, m) * ord(hd, n - m) * cis((n - m) * phi);
        }
      }
      return g;
    }
    case Relation::src_inside_obs:
      return nested_matrix(obs, src, k, hankel2_array(No, k * obs.radius));
    case Relation::obs_inside_src:
      return flip(nested_matrix(src, obs, k, hankel2_array(Ns, k * src.radius)));
  }
  return {};
}

CMatrix homogeneous_harmonic_matrix_radial_derivative(const Contour& obs, const Contour& src, Complex k) {
  const Relation rel = classify(obs, src);
  if (rel != Relation::src_inside_obs) {
    throw GeometryError("radial-derivative matrix needs the source strictly inside the observation circle");
  }
  return nested_matrix(obs, src, k, hankel_derivative_array(obs.order, k * obs.radius, k));
}

CMatrix regular_wave_matrix(const std::vector<Contour>& obs, const Contour& hole, Complex k) {
  int rows = 0;
  for (const auto& c : obs) rows += c.size();
  const int Nh = hole.order;
  CMatrix h(rows, hole.size());
  int row = 0;
  for (const auto& c : obs) {
    const Point D{c.center.x - hole.center.x, c.center.y - hole.center.y};
    const double d = std::hypot(D.x, D.y);
    const double phi = std::atan2(D.y, D.x);
    const auto jp = bessel_j_array(c.order, k * c.radius);
    const auto jd = bessel_j_array(c.order + Nh, k * d);
    for (int m = -c.order; m <= c.order; ++m) {
      for (int n = -Nh; n <= Nh; ++n) {
        // Graf gives J_n e^{jn theta}; J_|n| differs by (-1)^n for n < 0.
        const double s = (n < 0 && (n % 2)) ? -1.0 : 1.0;
        h(row + m + c.order, n + Nh) = s * ord(jd, n - m) * cis((n - m) * phi) * ord(jp, m);
      }
    }
    row += c.size();
  }
  return h;
}

namespace {

struct Spectral {
  Complex kg;
  double k0;
  Complex kg2;
  Complex k02;
};

Spectral spectral_params(double omega, const GroundModel& ground) {
  const Material gm = ground.material();
  const Complex kg = gm.wavenumber(omega);
  const double k0 = omega * std::sqrt(mu0 * eps0);
  return {kg, k0, kg * kg, Complex{k0 * k0, 0.0}};
}

// R_TM / gamma_g * e^{ysum gamma_g}, plus gamma_g for the caller.
struct SpectralSample {
  Complex weight;
  Complex gamma;
};

SpectralSample spectral_sample(double beta, double ysum, const Spectral& s) {
  const Complex gg = std::sqrt(Complex{beta * beta, 0.0} - s.kg2);
  // k0 carries an infinitesimal loss: gamma_0 = +j sqrt(k0^2 - beta^2) below k0.
  const Complex g0 = std::sqrt(Complex{beta * beta - s.k02.real(), 0.0});
  const Complex sum = gg + g0;
  const Complex r = (s.k02 - s.kg2) / (sum * sum);
  return {r / gg * std::exp(ysum * gg), gg};
}

std::vector<double> spectral_breakpoints(const Spectral& s, double ysum, double dx, int order) {
  const double depth = std::abs(ysum);
  const double kmag = std::abs(s.kg);
  const double lo = 0.05 * std::min(kmag, 1.0 / depth);
  const double hi = std::max(4.0 * kmag, (8.0 + order) / depth);
  std::vector<double> bp;
  for (double b = lo; b < hi; b *= 2.0) bp.push_back(b);
  bp.push_back(hi);
  if (s.k0 > 0.0) bp.push_back(s.k0);
  bp.push_back(kmag);
  if (std::abs(dx) > 0.0) {
    const double step = pi / std::abs(dx);
    for (int i = 1; i <= 400 && i * step < hi; ++i) bp.push_back(i * step);
  }
  std::sort(bp.begin(), bp.end());
  return bp;
}

double spectral_decay(double ysum, int order) {
  // e^{ysum beta} times polynomial growth beta^order in the moments.
  return std::abs(ysum) / (1.0 + 0.1 * order);
}

}  // namespace

Complex reflected_green(Point r, Point rp, double omega, const GroundModel& ground, const QuadratureSpec& spec) {
  if (ground.kind == GroundKind::homogeneous) return 0.0;
  if (!(r.y < 0.0 && rp.y < 0.0)) throw GeometryError("ground kernel needs both points below the surface");
  const Spectral s = spectral_params(omega, ground);
  const double ysum = r.y + rp.y;
  const double dx = r.x - rp.x;
  const auto f = [&](double beta) {
    return spectral_sample(beta, ysum, s).weight * std::cos(beta * dx);
  };
  const Complex integral =
      semi_infinite_quadrature(f, spectral_decay(ysum, 0), spec, spectral_breakpoints(s, ysum, dx, 0));
  return -integral / (2.0 * pi);
}

Complex two_layer_green(Point r, Point rp, double omega, const GroundModel& ground, const QuadratureSpec& spec) {
  const Complex kg = ground.material().wavenumber(omega);
  const double R = distance(r, rp);
  if (R == 0.0) throw BesselDomainError("ground kernel is singular at coincident points");
  return quarter_j * hankel2(0, kg * R) + reflected_green(r, rp, omega, ground, spec);
}

ReflectedMoments reflected_moments(Point obs_center, Point src_center, int max_order, double omega,
                                   const GroundModel& ground, const QuadratureSpec& spec) {
  const Spectral s = spectral_params(omega, ground);
  const int S = max_order;
  const double ysum = obs_center.y + src_center.y;
  const double dx = obs_center.x - src_center.x;
  if (!(ysum < 0.0)) throw GeometryError("ground kernel needs both contours below the surface");
  ReflectedMoments out;
  out.max_order = S;
  out.kg = s.kg;
  // v = -i (gamma + beta) ell; ell balances the powers v^t against J_m(k a)/(k ell)^m.
  out.ell = 1.0 / std::max(std::abs(s.kg), 1.0 / std::abs(ysum));
  const double ell = out.ell;
  const int width = 2 * S + 1;
  const VectorIntegrand f = [&](double beta) {
    const SpectralSample smp = spectral_sample(beta, ysum, s);
    const Complex v = Complex{0.0, -1.0} * (smp.gamma + beta) * ell;
    const Complex e = cis(-beta * dx);
    CVector row(2 * width);
    Complex p = smp.weight;
    Complex q = smp.weight;
    const Complex vinv = 1.0 / v;
    row(S) = smp.weight * e;
    row(width + S) = smp.weight * std::conj(e);
    for (int t = 1; t <= S; ++t) {
      p *= v;
      q *= vinv;
      row(S + t) = p * e;
      row(S - t) = q * e;
      row(width + S + t) = p * std::conj(e);
      row(width + S - t) = q * std::conj(e);
    }
    return row;
  };
  out.values = semi_infinite_quadrature(f, 2 * width, spectral_decay(ysum, S), spec,
                                        spectral_breakpoints(s, ysum, dx, S));
  return out;
}

CMatrix reflected_block(const ReflectedMoments& mom, const Contour& obs, const Contour& src) {
  const int No = obs.order;
  const int Ns = src.order;
  const int S = mom.max_order;
  if (No + Ns > S) throw NumericalError("reflected moments computed for too low an order");
  const int width = 2 * S + 1;
  // F_m = J_m(k a) / (k ell)^m for signed m.
  auto scaled_j = [&](double a, int N) {
    const auto j = bessel_j_array(N, mom.kg * a);
    const Complex kl = mom.kg * mom.ell;
    std::vector<Complex> F(static_cast<std::size_t>(2 * N + 1));
    Complex pw = 1.0;
    for (int m = 0; m <= N; ++m) {
      F[N + m] = j[m] / pw;
      F[N - m] = ((m % 2) ? -1.0 : 1.0) * j[m] * pw;
      pw *= kl;
    }
    return F;
  };
  const auto Fo = scaled_j(obs.radius, No);
  const auto Fs = scaled_j(src.radius, Ns);
  CMatrix g(obs.size(), src.size());
  for (int m = -No; m <= No; ++m) {
    for (int n = -Ns; n <= Ns; ++n) {
      const double sn = (n % 2) ? -1.0 : 1.0;
      const double smn = ((m + n) % 2) ? -1.0 : 1.0;
      const Complex plus = Fo[No + m] * Fs[Ns + n] * mom.values(S + m + n);
      const Complex minus = smn * Fo[No - m] * Fs[Ns - n] * mom.values(width + S - (m + n));
      g(m + No, n + Ns) = -sn * (plus + minus) / (4.0 * pi);
    }
  }
  return g;
}

CMatrix reflected_harmonic_matrix(const Contour& obs, const Contour& src, double omega, const GroundModel& ground,
                                  const QuadratureSpec& spec) {
  if (ground.kind == GroundKind::homogeneous) return CMatrix::Zero(obs.size(), src.size());
  if (!(obs.center.y + obs.radius < 0.0 && src.center.y + src.radius < 0.0)) {
    throw GeometryError("contours must lie below the ground surface");
  }
  const auto mom = reflected_moments(obs.center, src.center, obs.order + src.order, omega, ground, spec);
  return reflected_block(mom, obs, src);
}

CMatrix two_layer_harmonic_matrix(const Contour& obs, const Contour& src, double omega, const GroundModel& ground,
                                  const QuadratureSpec& spec) {
  const Complex kg = ground.material().wavenumber(omega);
  CMatrix g = homogeneous_harmonic_matrix(obs, src, kg);
  if (ground.kind == GroundKind::two_layer) g += reflected_harmonic_matrix(obs, src, omega, ground, spec);
  return g;
}

}  // namespace momso
