#include "momso/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <mutex>

#include <Eigen/Eigenvalues>

namespace momso {

namespace {

constexpr double euler_gamma = 0.57721566490153286061;
constexpr double small_arg = 2.0;

Complex ipow(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

double sign_of_order(int n) { return (n < 0 && (-n) % 2 == 1) ? -1.0 : 1.0; }

void check_unscaled(Complex z) {
  if (std::abs(z.imag()) > max_unscaled_imag) {
    throw BesselOverflow("cylindrical function overflows for |Im z| > 690 (use scaled forms)");
  }
}

// Miller backward recurrence for J_0..J_{nkeep}, normalized with the
// generating-function identity e^{+-iz} = J_0 + 2 sum (+-i)^k J_k, whose
// terms carry the same e^{|Im z|} growth as the result.
std::vector<Complex> miller_j(Complex z, int nkeep) {
  const double az = std::abs(z);
  const int start = std::max(nkeep, static_cast<int>(std::ceil(az))) + 30 +
                    static_cast<int>(std::ceil(15.0 * std::cbrt(az)));
  std::vector<Complex> f(static_cast<std::size_t>(start) + 2, Complex{});
  f[start + 1] = 0.0;
  f[start] = 1e-300;
  const Complex inv_z = 1.0 / z;
  for (int k = start; k >= 1; --k) {
    f[k - 1] = 2.0 * k * inv_z * f[k] - f[k + 1];
    if (std::abs(f[k - 1]) > 1e250) {
      for (int i = k - 1; i <= start; ++i) f[i] *= 1e-250;
    }
  }
  const Complex c = z.imag() <= 0.0 ? Complex{0.0, 1.0} : Complex{0.0, -1.0};
  Complex sum = f[0];
  Complex ck = 1.0;
  for (int k = 1; k <= start; ++k) {
    ck *= c;
    sum += 2.0 * ck * f[k];
  }
  const Complex ez = std::exp(c * z);
  std::vector<Complex> out(static_cast<std::size_t>(nkeep) + 1);
  for (int k = 0; k <= nkeep; ++k) out[k] = (f[k] / sum) * ez;
  return out;
}

// Gauss-Hermite rule on (-inf, inf), weight e^{-t^2}, via Golub-Welsch.
struct HermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const HermiteRule& hermite_rule() {
  static const HermiteRule rule = [] {
    constexpr int n = 120;
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) {
      jac(i, i - 1) = jac(i - 1, i) = std::sqrt(i / 2.0);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    HermiteRule r;
    for (int i = 0; i < n; ++i) {
      const double w = std::sqrt(pi) * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
      if (w < 1e-300) continue;
      r.nodes.push_back(es.eigenvalues()(i));
      r.weights.push_back(w);
    }
    return r;
  }();
  return rule;
}

// Scaled Hankel functions of orders 0 and 1 from the Laguerre-type integral
//   H^(2)_v(z) e^{iz} = sqrt(2/(pi z)) e^{i(v pi/2 + pi/4)} / Gamma(v+1/2)
//                       * int_0^inf e^{-u} u^{v-1/2} (1 - iu/(2z))^{v-1/2} du
// (kind 1: conjugate phases and +iu). Valid in the half-plane where the
// function decays, i.e. Im z <= 0 for kind 2 and Im z >= 0 for kind 1.
std::array<Complex, 2> hankel_integral(int kind, Complex z) {
  const HermiteRule& rule = hermite_rule();
  const double s = kind == 2 ? -1.0 : 1.0;
  const Complex a = Complex{0.0, s} / (2.0 * z);
  Complex i0 = 0.0;
  Complex i1 = 0.0;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double t = rule.nodes[q];
    const double u = t * t;
    const Complex base = 1.0 + a * u;
    const Complex root = std::sqrt(base);
    i0 += rule.weights[q] / root;
    i1 += rule.weights[q] * u * root;
  }
  const Complex pre = std::sqrt(2.0 / (pi * z));
  const double sp = std::sqrt(pi);
  const Complex ph0 = std::exp(Complex{0.0, -s * pi / 4.0});
  const Complex ph1 = std::exp(Complex{0.0, -s * 3.0 * pi / 4.0});
  return {pre * ph0 * i0 / sp, pre * ph1 * i1 / (sp / 2.0)};
}

// Large-|z| Hankel expansion, scaled; used only where |Im z| is beyond the
// unscaled range (so |z| > 690 and the series is accurate to rounding).
Complex hankel_asymptotic_scaled(int kind, int nu, Complex z) {
  const double s = kind == 1 ? 1.0 : -1.0;
  const double mu = 4.0 * nu * nu;
  Complex term = 1.0;
  Complex sum = 1.0;
  const Complex isz = Complex{0.0, s} / z;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (8.0 * k) * isz;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  const Complex phase = std::exp(Complex{0.0, -s * (nu * pi / 2.0 + pi / 4.0)});
  return std::sqrt(2.0 / (pi * z)) * phase * sum;
}

// Y_0, Y_1 from the Neumann series in J_k (small |z|).
std::array<Complex, 2> neumann_y01(Complex z) {
  const std::vector<Complex> jk = miller_j(z, 60);
  const Complex lg = std::log(z / 2.0) + euler_gamma;
  Complex s0 = 0.0;
  Complex s1 = 0.0;
  for (int k = 1; 2 * k + 1 < static_cast<int>(jk.size()); ++k) {
    const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
    s0 += sgn * jk[2 * k] / static_cast<double>(k);
    s1 += sgn * (jk[2 * k - 1] - jk[2 * k + 1]) / static_cast<double>(k);
  }
  const Complex y0 = (2.0 / pi) * lg * jk[0] - (4.0 / pi) * s0;
  const Complex y1 = (2.0 / pi) * lg * jk[1] - 2.0 / (pi * z) * jk[0] + (2.0 / pi) * s1;
  return {y0, y1};
}

template <typename Seq>
void recur_up(Seq& c, int nmax, Complex z) {
  for (int k = 1; k < nmax; ++k) c[k + 1] = 2.0 * k / z * c[k] - c[k - 1];
}

// Scaled Hankel pair (orders 0,1) for either kind, any z != 0.
std::array<Complex, 2> hankel_scaled01(int kind, Complex z) {
  const bool decaying = kind == 2 ? z.imag() <= 0.0 : z.imag() >= 0.0;
  if (decaying && std::abs(z) > small_arg) return hankel_integral(kind, z);
  if (std::abs(z.imag()) > max_unscaled_imag) {
    return {hankel_asymptotic_scaled(kind, 0, z), hankel_asymptotic_scaled(kind, 1, z)};
  }
  const std::vector<Complex> jv = miller_j(z, 1);
  std::array<Complex, 2> yv{};
  if (std::abs(z) <= small_arg) {
    yv = neumann_y01(z);
  } else {
    // Growing kind: Y from J and the decaying kind, which is accurate here.
    const int other = kind == 2 ? 1 : 2;
    const std::array<Complex, 2> h = hankel_integral(other, z);
    const Complex scale = other == 2 ? std::exp(Complex{0.0, -1.0} * z) : std::exp(imj * z);
    const double s = other == 2 ? -1.0 : 1.0;
    for (int k = 0; k < 2; ++k) yv[k] = (h[k] * scale - jv[k]) / Complex{0.0, s};
  }
  const double s = kind == 1 ? 1.0 : -1.0;
  const Complex scale = std::exp(Complex{0.0, -s} * z);
  return {(jv[0] + Complex{0.0, s} * yv[0]) * scale, (jv[1] + Complex{0.0, s} * yv[1]) * scale};
}

std::vector<Complex> hankel_scaled_array(int kind, int nmax, Complex z) {
  if (z == Complex{}) throw BesselDomainError("Hankel function is singular at z = 0");
  std::vector<Complex> c(static_cast<std::size_t>(std::max(nmax, 1)) + 1);
  const auto h01 = hankel_scaled01(kind, z);
  c[0] = h01[0];
  c[1] = h01[1];
  recur_up(c, nmax, z);
  c.resize(static_cast<std::size_t>(nmax) + 1);
  return c;
}

}  // namespace

std::vector<Complex> bessel_j_array(int nmax, Complex z) {
  if (nmax < 0) throw BesselDomainError("negative maximum order");
  if (z == Complex{}) {
    std::vector<Complex> out(static_cast<std::size_t>(nmax) + 1, Complex{});
    out[0] = 1.0;
    return out;
  }
  check_unscaled(z);
  return miller_j(z, nmax);
}

Complex bessel_j(int n, Complex z) {
  const int m = std::abs(n);
  return sign_of_order(n) * bessel_j_array(m, z)[m];
}

std::vector<Complex> bessel_y_array(int nmax, Complex z) {
  if (z == Complex{}) throw BesselDomainError("Y_n is singular at z = 0");
  check_unscaled(z);
  std::vector<Complex> y(static_cast<std::size_t>(std::max(nmax, 1)) + 1);
  if (std::abs(z) <= small_arg) {
    const auto y01 = neumann_y01(z);
    y[0] = y01[0];
    y[1] = y01[1];
  } else {
    // Y = -i (J - H2) when H2 decays, Y = -i (H1 - J) otherwise.
    const std::vector<Complex> jv = miller_j(z, 1);
    const bool lower = z.imag() <= 0.0;
    const std::array<Complex, 2> h = hankel_integral(lower ? 2 : 1, z);
    const Complex unscale = lower ? std::exp(Complex{0.0, -1.0} * z) : std::exp(imj * z);
    for (int k = 0; k < 2; ++k) {
      const Complex hk = h[k] * unscale;
      y[k] = lower ? Complex{0.0, -1.0} * (jv[k] - hk) : Complex{0.0, -1.0} * (hk - jv[k]);
    }
  }
  recur_up(y, nmax, z);
  y.resize(static_cast<std::size_t>(nmax) + 1);
  return y;
}

Complex bessel_y(int n, Complex z) {
  const int m = std::abs(n);
  return sign_of_order(n) * bessel_y_array(m, z)[m];
}

std::vector<Complex> hankel2_array(int nmax, Complex z) {
  if (z.imag() > max_unscaled_imag) throw BesselOverflow("H2 overflows for Im z > 690");
  std::vector<Complex> h = hankel_scaled_array(2, nmax, z);
  const Complex unscale = std::exp(Complex{0.0, -1.0} * z);
  for (auto& v : h) v *= unscale;
  return h;
}

Complex hankel2(int n, Complex z) {
  const int m = std::abs(n);
  return sign_of_order(n) * hankel2_array(m, z)[m];
}

Complex hankel1(int n, Complex z) {
  if (z.imag() < -max_unscaled_imag) throw BesselOverflow("H1 overflows for Im z < -690");
  const int m = std::abs(n);
  return sign_of_order(n) * hankel_scaled_array(1, m, z)[m] * std::exp(imj * z);
}

Complex hankel1_scaled(int n, Complex z) {
  const int m = std::abs(n);
  return sign_of_order(n) * hankel_scaled_array(1, m, z)[m];
}

Complex hankel2_scaled(int n, Complex z) {
  const int m = std::abs(n);
  return sign_of_order(n) * hankel_scaled_array(2, m, z)[m];
}

Complex bessel_j_zdlog_reduced(int n, Complex z) {
  const int m = std::abs(n);
  if (z == Complex{}) return 0.0;
  // J_{m+1}/J_m = 1/(b_1 - 1/(b_2 - ...)), b_k = 2(m+k)/z, modified Lentz.
  constexpr double tiny = 1e-300;
  const Complex inv_z = 1.0 / z;
  Complex f = tiny;
  Complex c = f;
  Complex d = 0.0;
  const int max_iter = 200000 + static_cast<int>(4.0 * std::abs(z));
  bool converged = false;
  for (int k = 1; k <= max_iter; ++k) {
    const Complex b = 2.0 * (m + k) * inv_z;
    const double a = k == 1 ? 1.0 : -1.0;
    d = b + a * d;
    if (std::abs(d) < tiny) d = tiny;
    c = b + a / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const Complex delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) {
      converged = true;
      break;
    }
  }
  if (!converged) throw NumericalError("continued fraction for J'/J did not converge");
  const Complex reduced = -z * f;
  if (!std::isfinite(reduced.real()) || !std::isfinite(reduced.imag()) ||
      std::abs(reduced) > 1e12 * (m + 1.0 + std::abs(z))) {
    throw BesselPole("argument at a zero of J_" + std::to_string(m));
  }
  return reduced;
}

Complex bessel_j_log_derivative(int n, Complex z) {
  const int m = std::abs(n);
  if (z == Complex{}) {
    if (m == 0) return 0.0;
    throw BesselDomainError("J'_n/J_n is singular at z = 0 for n != 0");
  }
  return (static_cast<double>(m) + bessel_j_zdlog_reduced(m, z)) / z;
}

Complex bessel_i_scaled(int n, Complex z) {
  const int m = std::abs(n);
  const Complex v = imj * z;
  if (std::abs(z.real()) < 600.0) {
    return ipow(-m) * bessel_j_array(m, v)[m] * std::exp(-z);
  }
  // I_m(z) e^{-z} = i^{-m} (H1(v) e^{-iv} e^{2iv} + H2(v) e^{iv}) / 2.
  const Complex h1 = hankel_scaled_array(1, m, v)[m];
  const Complex h2 = hankel_scaled_array(2, m, v)[m];
  return ipow(-m) * 0.5 * (h1 * std::exp(2.0 * imj * v) + h2);
}

Complex bessel_k_scaled(int n, Complex z) {
  const int m = std::abs(n);
  const Complex w = Complex{0.0, -1.0} * z;
  return Complex{0.0, -pi / 2.0} * ipow(-m) * hankel_scaled_array(2, m, w)[m];
}

Complex bessel_k0(Complex z) { return bessel_k_scaled(0, z) * std::exp(-z); }

}  // namespace momso
