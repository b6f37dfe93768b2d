#include "momso/quadrature.hpp"

#include <algorithm>
#include <queue>

namespace momso {

namespace {

constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  CVector value;
  Eigen::ArrayXd error;      // componentwise |K15 - G7|
  Eigen::ArrayXd magnitude;  // K15 estimate of int |f|
  double priority = 0.0;
  bool operator<(const Panel& o) const { return priority < o.priority; }
};

Panel gk15(const VectorIntegrand& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const CVector fc = f(c);
  CVector kron = wgk[7] * fc;
  CVector gauss = wg[3] * fc;
  Eigen::ArrayXd mag = wgk[7] * fc.array().abs();
  for (int i = 0; i < 7; ++i) {
    const CVector f1 = f(c - h * xgk[i]);
    const CVector f2 = f(c + h * xgk[i]);
    kron += wgk[i] * (f1 + f2);
    mag += wgk[i] * (f1.array().abs() + f2.array().abs());
    if (i % 2 == 1) gauss += wg[i / 2] * (f1 + f2);
  }
  kron *= h;
  gauss *= h;
  Panel p{a, b, kron, (kron - gauss).array().abs(), mag * h};
  return p;
}

}  // namespace

// Every component is held to its own relative tolerance; components that
// cancel to nearly nothing are measured against 1e-3 of int |f| instead.
CVector integrate_adaptive(const VectorIntegrand& f, int dim, const std::vector<double>& breakpoints,
                           const QuadratureSpec& spec) {
  if (breakpoints.size() < 2) return CVector::Zero(dim);
  std::vector<Panel> panels;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i + 1] > breakpoints[i])) continue;
    panels.push_back(gk15(f, breakpoints[i], breakpoints[i + 1]));
  }
  if (panels.empty()) return CVector::Zero(dim);

  CVector total = CVector::Zero(dim);
  Eigen::ArrayXd err = Eigen::ArrayXd::Zero(dim);
  Eigen::ArrayXd mag = Eigen::ArrayXd::Zero(dim);
  for (const auto& p : panels) {
    total += p.value;
    err += p.error;
    mag += p.magnitude;
  }
  auto thresholds = [&] {
    return (spec.rel_tol * total.array().abs().max(1e-3 * mag)).max(spec.abs_tol);
  };
  Eigen::ArrayXd thr = thresholds();
  std::priority_queue<Panel> heap;
  auto push = [&](Panel p) {
    p.priority = (p.error / thr).maxCoeff();
    heap.push(std::move(p));
  };
  for (auto& p : panels) push(std::move(p));
  panels.clear();

  int splits = 0;
  while ((err > thr).any()) {
    if (splits >= spec.max_subdivisions) {
      throw QuadratureError("adaptive quadrature did not converge", total, (err - thr).maxCoeff());
    }
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = gk15(f, worst.a, mid);
    Panel right = gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    err = err.max(0.0);
    mag += left.magnitude + right.magnitude - worst.magnitude;
    push(std::move(left));
    push(std::move(right));
    ++splits;
    if (splits % 64 == 0) {
      thr = thresholds();
      std::vector<Panel> all;
      while (!heap.empty()) {
        all.push_back(heap.top());
        heap.pop();
      }
      for (auto& p : all) push(std::move(p));
    }
  }
  // Re-sum in interval order so the result does not depend on split history drift.
  std::vector<Panel> all;
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  CVector exact = CVector::Zero(dim);
  for (const auto& p : all) exact += p.value;
  return exact;
}

CVector semi_infinite_quadrature(const VectorIntegrand& f, int dim, double decay_rate,
                                 const QuadratureSpec& spec, std::vector<double> breakpoints) {
  if (!(decay_rate > 0.0)) throw NumericalError("semi-infinite quadrature needs a positive decay rate");
  breakpoints.push_back(0.0);
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
  // e^{-40} is far below any tolerance; breakpoints past it would only make a
  // first panel whose Kronrod nodes all land where the integrand is gone.
  const double tail = 40.0 / decay_rate;
  std::erase_if(breakpoints, [tail](double b) { return b < 0.0 || b >= tail; });
  for (int i = 1; i <= 4; ++i) breakpoints.push_back(tail * i / 4.0);
  std::sort(breakpoints.begin(), breakpoints.end());
  return integrate_adaptive(f, dim, breakpoints, spec);
}

Complex semi_infinite_quadrature(const std::function<Complex(double)>& f, double decay_rate,
                                 const QuadratureSpec& spec, std::vector<double> breakpoints) {
  const VectorIntegrand g = [&f](double t) {
    CVector v(1);
    v(0) = f(t);
    return v;
  };
  return semi_infinite_quadrature(g, 1, decay_rate, spec, std::move(breakpoints))(0);
}

}  // namespace momso
