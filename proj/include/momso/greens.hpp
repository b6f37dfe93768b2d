#ifndef MOMSO_GREENS_HPP
#define MOMSO_GREENS_HPP

#include <vector>

#include "momso/cable_model.hpp"
#include "momso/surface_operators.hpp"

namespace momso {

// Harmonic matrices use the projection
//   entry(m,n) = (1/2pi) int e^{-jm theta} (1/2pi) int K(r(theta), r'(theta')) e^{jn theta'} dtheta' dtheta
// with rows on the observation contour and columns on the source contour.

/// Kernel (j/4) H0^(2)(k|r - r'|). Contours must be disjoint (touching is
/// fine), nested, or identical.
CMatrix homogeneous_harmonic_matrix(const Contour& obs, const Contour& src, Complex k);

/// Same kernel differentiated along the observation radius, evaluated on
/// the observation circle. The source must lie inside the observation circle.
CMatrix homogeneous_harmonic_matrix_radial_derivative(const Contour& obs, const Contour& src, Complex k);

/// entry((p,m), n) = (1/2pi) int e^{-jm theta_p} J_|n|(k rho_hat) e^{jn theta_hat} dtheta_p,
/// rows stacked over the conductor contours in the given order.
CMatrix regular_wave_matrix(const std::vector<Contour>& obs, const Contour& hole, Complex k);

/// Ground kernel for two points below the surface:
///   (j/4) H0^(2)(k_g R) - (1/2pi) int_0^inf R_TM / gamma_g e^{(y+y') gamma_g} cos(beta dx) dbeta.
/// The sign matches the homogeneous kernel above, so both enter the solver
/// the same way.
Complex two_layer_green(Point r, Point rp, double omega, const GroundModel& ground,
                        const QuadratureSpec& spec = {});

/// Reflected (interface) part of two_layer_green alone.
Complex reflected_green(Point r, Point rp, double omega, const GroundModel& ground,
                        const QuadratureSpec& spec = {});

/// Harmonic projection of the reflected part between two contours.
CMatrix reflected_harmonic_matrix(const Contour& obs, const Contour& src, double omega, const GroundModel& ground,
                                  const QuadratureSpec& spec = {});

/// Spectral moments of the reflected kernel between two contour centres,
/// shared by every pair of contours on those centres with order sum <= max_order.
struct ReflectedMoments {
  int max_order = 0;
  double ell = 1.0;
  Complex kg;
  CVector values;
};

ReflectedMoments reflected_moments(Point obs_center, Point src_center, int max_order, double omega,
                                   const GroundModel& ground, const QuadratureSpec& spec = {});

CMatrix reflected_block(const ReflectedMoments& moments, const Contour& obs, const Contour& src);

/// Harmonic projection of the full ground kernel; the reflected part is
/// dropped for GroundKind::homogeneous.
CMatrix two_layer_harmonic_matrix(const Contour& obs, const Contour& src, double omega, const GroundModel& ground,
                                  const QuadratureSpec& spec = {});

/// Block matrix of a symmetric kernel over a list of contours. Only blocks
/// with i <= j are evaluated; the rest follow from block_ji(m,n) = block_ij(-n,-m),
/// which keeps the assembled matrix exactly reciprocal.
template <typename BlockFn>
CMatrix symmetric_block_matrix(const std::vector<Contour>& contours, int dim, BlockFn&& block) {
  CMatrix out(dim, dim);
  for (std::size_t i = 0; i < contours.size(); ++i) {
    for (std::size_t j = i; j < contours.size(); ++j) {
      const Contour& a = contours[i];
      const Contour& b = contours[j];
      const CMatrix blk = block(a, b);
      out.block(a.offset, b.offset, a.size(), b.size()) = blk;
      if (i == j) continue;
      for (int m = 0; m < b.size(); ++m) {
        for (int n = 0; n < a.size(); ++n) {
          out(b.offset + m, a.offset + n) = blk(a.size() - 1 - n, b.size() - 1 - m);
        }
      }
    }
  }
  return out;
}

}  // namespace momso

#endif  // MOMSO_GREENS_HPP
