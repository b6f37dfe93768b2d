#include "momso/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include <Eigen/Eigenvalues>

#include "momso/special_functions.hpp"

namespace momso::oracle {

CMatrix harmonic_matrix_quadrature(const Contour& obs, const Contour& src, const PointKernel& kernel, int m) {
  const double h = 2.0 * pi / m;
  CMatrix samples(m, m);
  for (int i = 0; i < m; ++i) {
    const Point r{obs.center.x + obs.radius * std::cos(i * h), obs.center.y + obs.radius * std::sin(i * h)};
    for (int j = 0; j < m; ++j) {
      const Point rp{src.center.x + src.radius * std::cos(j * h), src.center.y + src.radius * std::sin(j * h)};
      samples(i, j) = kernel(r, rp);
    }
  }
  CMatrix g(obs.size(), src.size());
  for (int a = -obs.order; a <= obs.order; ++a) {
    for (int b = -src.order; b <= src.order; ++b) {
      Complex s = 0.0;
      for (int i = 0; i < m; ++i) {
        Complex row = 0.0;
        for (int j = 0; j < m; ++j) row += samples(i, j) * std::polar(1.0, b * j * h);
        s += row * std::polar(1.0, -a * i * h);
      }
      g(a + obs.order, b + src.order) = s / (static_cast<double>(m) * m);
    }
  }
  return g;
}

CMatrix regular_wave_quadrature(const Contour& obs, const Contour& hole, Complex k, int m) {
  const double h = 2.0 * pi / m;
  CMatrix g = CMatrix::Zero(obs.size(), hole.size());
  for (int i = 0; i < m; ++i) {
    const double t = i * h;
    const double dx = obs.center.x + obs.radius * std::cos(t) - hole.center.x;
    const double dy = obs.center.y + obs.radius * std::sin(t) - hole.center.y;
    const double rho = std::hypot(dx, dy);
    const double th = std::atan2(dy, dx);
    for (int n = -hole.order; n <= hole.order; ++n) {
      const Complex wave = bessel_j(std::abs(n), k * rho) * std::polar(1.0, n * th);
      for (int a = -obs.order; a <= obs.order; ++a) g(a + obs.order, n + hole.order) += wave * std::polar(1.0, -a * t);
    }
  }
  return g / static_cast<double>(m);
}

Complex self_term_log_subtraction(int n, Complex k, double a, int m) {
  // (1/2pi) int K(phi) e^{-jn phi} dphi with K = (j/4) H0(2ka|sin(phi/2)|).
  // Subtract (1/2pi) ln|2 sin(phi/2)|, whose coefficients are -1/(2|n|) (0 for n = 0).
  const double h = 2.0 * pi / m;
  Complex s = 0.0;
  for (int i = 0; i < m; ++i) {
    const double phi = (i + 0.5) * h;
    const double chord = 2.0 * std::abs(std::sin(phi / 2.0));
    const Complex kern = Complex{0.0, 0.25} * hankel2(0, k * a * chord);
    const double sing = std::log(chord) / (2.0 * pi);
    s += (kern - sing) * std::polar(1.0, -n * phi);
  }
  s /= static_cast<double>(m);
  const Complex analytic = n == 0 ? Complex{} : Complex{-1.0 / (4.0 * pi * std::abs(n)), 0.0};
  return s + analytic;
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  static std::mutex mtx;
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) jac(i, i - 1) = jac(i - 1, i) = i / std::sqrt(4.0 * i * i - 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    x[i] = es.eigenvalues()(i);
    w[i] = 2.0 * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
  }
  cache[n] = {x, w};
  return {x, w};
}

Complex fixed_grid(const std::function<Complex(double)>& f, double a, double b, int panels, int order) {
  const auto [x, w] = gauss_legendre(order);
  const double width = (b - a) / panels;
  Complex s = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double c = lo + 0.5 * width;
    Complex ps = 0.0;
    for (int i = 0; i < order; ++i) ps += w[i] * f(c + 0.5 * width * x[i]);
    s += ps * (0.5 * width);
  }
  return s;
}

Complex expint_e1(Complex z) {
  // Modified Lentz on E1(z) = e^{-z} / (z + 1/(1 + 1/(z + 2/(1 + 2/(z + ...))))).
  constexpr double tiny = 1e-300;
  Complex f = z;
  Complex c = z;
  Complex d = 0.0;
  for (int i = 1; i < 100000; ++i) {
    const double a = std::ceil(i / 2.0);
    const Complex b = (i % 2 == 1) ? Complex{1.0, 0.0} : z;
    d = b + a * d;
    if (std::abs(d) < tiny) d = tiny;
    c = b + a / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const Complex delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-z) / f;
}

namespace {

struct Waves {
  Complex kg2;
  double k02;
};

Waves waves(double omega, const GroundModel& ground) {
  const Complex kg = ground.material().wavenumber(omega);
  const double k0 = omega * std::sqrt(mu0 * eps0);
  return {kg * kg, k0 * k0};
}

// Panel edges: geometric grading from 0 and around the branch points, then
// uniform panels out to b_max.
std::vector<double> edges(double kmag, double k0, double b_max, double width) {
  std::vector<double> e{0.0};
  for (double b = 1e-6 * std::min(kmag, 1.0); b < std::min(b_max, std::max(8.0 * kmag, 4.0 * width)); b *= 1.5) e.push_back(b);
  for (double p : {k0, kmag}) {
    if (!(p > 0.0) || p >= b_max) continue;
    for (int i = 1; i <= 45; ++i) {
      e.push_back(p * (1.0 - std::pow(0.5, i)));
      e.push_back(p * (1.0 + std::pow(0.5, i)));
    }
    e.push_back(p);
  }
  double last = 0.0;
  for (double v : e) last = std::max(last, std::min(v, b_max));
  for (double b = last + width; b < b_max; b += width) e.push_back(b);
  e.push_back(b_max);
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  while (e.back() > b_max) e.pop_back();
  return e;
}

Complex integrate_edges(const std::function<Complex(double)>& f, const std::vector<double>& e, int refine) {
  Complex s = 0.0;
  for (std::size_t i = 0; i + 1 < e.size(); ++i) s += fixed_grid(f, e[i], e[i + 1], refine, 20);
  return s;
}

}  // namespace

Complex brute_force_reflected_green(Point r, Point rp, double omega, const GroundModel& ground, int refine) {
  if (ground.kind == GroundKind::homogeneous) return 0.0;
  const Waves w = waves(omega, ground);
  const double ysum = r.y + rp.y;
  const double dx = std::abs(r.x - rp.x);
  const auto f = [&](double beta) {
    const Complex gg = std::sqrt(beta * beta - w.kg2);
    const Complex g0 = std::sqrt(Complex{beta * beta - w.k02, 0.0});
    const Complex rtm = (w.k02 - w.kg2) / ((gg + g0) * (gg + g0));
    return rtm / gg * std::exp(ysum * gg) * std::cos(beta * dx);
  };
  const double b_max = 60.0 / std::abs(ysum) + 10.0 * std::sqrt(std::abs(w.kg2));
  const double width = std::min(0.25 / std::abs(ysum), dx > 0.0 ? 0.5 / dx : 1e300);
  return -integrate_edges(f, edges(std::sqrt(std::abs(w.kg2)), std::sqrt(w.k02), b_max, width), refine) /
         (2.0 * pi);
}

Complex brute_force_two_layer_green(Point r, Point rp, double omega, const GroundModel& ground, int refine) {
  const Waves w = waves(omega, ground);
  const bool layered = ground.kind == GroundKind::two_layer;
  const double ysum = r.y + rp.y;
  const double dy = std::abs(r.y - rp.y);
  const double dx = std::abs(r.x - rp.x);
  const double rho = std::hypot(dx, dy);
  const double kmag = std::sqrt(std::abs(w.kg2));
  const auto f = [&](double beta) {
    const Complex gg = std::sqrt(beta * beta - w.kg2);
    Complex v = std::exp(-dy * gg);
    if (layered) {
      const Complex g0 = std::sqrt(Complex{beta * beta - w.k02, 0.0});
      v += (w.k02 - w.kg2) / ((gg + g0) * (gg + g0)) * std::exp(ysum * gg);
    }
    return v / gg * std::cos(beta * dx);
  };
  const double b_max = std::max(3e4 * kmag, 2e3 / rho);
  const double width = std::min(0.25 / rho, std::max(kmag, 0.25 / rho));
  Complex s = integrate_edges(f, edges(kmag, std::sqrt(w.k02), b_max, width), refine);
  // Tail: 1/gamma -> 1/beta and the reflected wave has died out.
  s += expint_e1(Complex{b_max * dy, -b_max * dx}).real();
  return -s / (2.0 * pi);
}

}  // namespace momso::oracle
