#ifndef MOMSO_SURFACE_OPERATORS_HPP
#define MOMSO_SURFACE_OPERATORS_HPP

#include <vector>

#include "momso/cable_model.hpp"

namespace momso {

/// One circular boundary carrying Fourier coefficients n = -order..order.
struct Contour {
  enum class Kind { conductor_outer, conductor_inner, hole };
  Kind kind = Kind::conductor_outer;
  int owner = 0;  // conductor or hole index
  Point center;
  double radius = 0.0;
  int order = 0;
  int offset = 0;  // first flat index inside its basis

  int size() const { return 2 * order + 1; }
  int index(int n) const { return offset + n + order; }
};

/// Flat indexing of conductor-surface and hole-boundary coefficients.
/// A tube contributes its inner block followed by its outer block.
struct HarmonicBasis {
  std::vector<Contour> conductor_contours;
  std::vector<Contour> hole_contours;
  std::vector<std::vector<int>> contours_of_conductor;  // into conductor_contours
  int nc = 0;
  int nh = 0;

  explicit HarmonicBasis(const CableSystem& sys);
  HarmonicBasis() = default;
};

/// Solid rod: diagonal entries for n = -N..N.
CVector solid_conductor_admittance(const Conductor& cond, const Material& outside, double omega);

/// Tube: per harmonic a symmetric 2x2 relating (E_inner, E_outer) to
/// (J_inner, J_outer). Returned as 2x2 blocks, n = -N..N.
std::vector<Eigen::Matrix2cd> tubular_conductor_admittance(const Conductor& cond, const Material& surrounding,
                                                           double omega);

/// Medium that replaces a conductor: its hole's fill, or the ground.
Material surrounding_medium(const CableSystem& sys, int conductor);

/// Ys for the full basis, block-diagonal by conductor.
CMatrix surface_admittance(const CableSystem& sys, const HarmonicBasis& basis, double omega);

struct HoleAdmittance {
  CVector ys;  // diagonal of the empty-hole admittance
  CVector d1;  // 1 / J_|n|(k_hat a_hat)
  CVector d2;  // k_hat J'_|n| / J_|n| (k_hat a_hat)
};

HoleAdmittance hole_surface_admittance(const Hole& hole, const GroundModel& ground, double omega);

}  // namespace momso

#endif  // MOMSO_SURFACE_OPERATORS_HPP
