#ifndef MOMSO_ORACLES_HPP
#define MOMSO_ORACLES_HPP

// Slow, independent reference computations used by the test suite and by
// `momso greens-check`. None of these share code paths with the solver's
// closed forms.

#include <functional>
#include <utility>
#include <vector>

#include "momso/cable_model.hpp"
#include "momso/surface_operators.hpp"

namespace momso::oracle {

using PointKernel = std::function<Complex(Point, Point)>;

/// Double periodic-trapezoid projection of a smooth kernel between two
/// non-touching contours, m nodes per contour.
CMatrix harmonic_matrix_quadrature(const Contour& obs, const Contour& src, const PointKernel& kernel, int m);

/// Regular-wave projection (1/2pi) int e^{-jm theta} J_|n|(k rho_hat) e^{jn theta_hat} dtheta
/// on one conductor contour, by the trapezoid rule with m nodes.
CMatrix regular_wave_quadrature(const Contour& obs, const Contour& hole, Complex k, int m);

/// Homogeneous self term (j/4) J_n H_n^(2) from the log-subtracted singular integral.
Complex self_term_log_subtraction(int n, Complex k, double a, int m);

/// Gauss-Legendre nodes and weights on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

/// Fixed-grid Gauss-Legendre integral of f over [a, b] with `panels` equal panels.
Complex fixed_grid(const std::function<Complex(double)>& f, double a, double b, int panels, int order = 20);

/// Exponential integral E1(z), continued fraction; intended for |z| >= 1.
Complex expint_e1(Complex z);

/// Full spectral two-layer kernel: direct and reflected waves integrated
/// together on a fixed grid, with the slowly decaying direct-wave tail
/// closed through E1. Same sign convention as two_layer_green.
Complex brute_force_two_layer_green(Point r, Point rp, double omega, const GroundModel& ground, int refine = 1);

/// Reflected part alone on a fixed grid; `refine` multiplies the panel count.
Complex brute_force_reflected_green(Point r, Point rp, double omega, const GroundModel& ground, int refine = 1);

}  // namespace momso::oracle

#endif  // MOMSO_ORACLES_HPP
