#ifndef MOMSO_SOLVER_HPP
#define MOMSO_SOLVER_HPP

#include <string>
#include <vector>

#include "momso/cable_model.hpp"
#include "momso/surface_operators.hpp"

namespace momso {

/// Everything assembled at one frequency. Hole quantities are stacked over
/// holes (block-diagonal where the hole blocks do not couple).
struct OperatorSet {
  double omega = 0.0;
  CMatrix ys;      // Nc x Nc
  CVector yhat;    // Nh, empty-hole admittance diagonal
  CVector d1;      // Nh
  CVector d2;      // Nh
  CMatrix g0;      // Nh x Nc, mu_hat * G0_hat per hole
  CMatrix gt0;     // Nh x Nc, radial-derivative kernel (no mu factor)
  CMatrix gc;      // Nc x Nc, mu_hat * Gc_hat within each hole (mu0 * G_g for direct burial)
  CMatrix h;       // Nc x Nh, H_hat per hole (without D1)
  CMatrix t;       // Nh x Nc
  CMatrix gg;      // Nh x Nh, ground kernel between hole boundaries
  CMatrix ma;      // Nh x Nc, A_hat = ma * J
  CMatrix u;       // Nc x P
  CMatrix psi;     // Nc x Nc
};

struct FrequencyResult {
  double f_hz = 0.0;
  CMatrix z;             // P x P, ohm/m
  RMatrix r;             // ohm/m
  RMatrix l;             // H/m
  double asymmetry = 0.0;  // ||Z - Z^T|| / ||Z|| before symmetrization
  double asymmetry_r = 0.0;  // same for R and L separately
  double asymmetry_l = 0.0;
  std::vector<std::string> diagnostics;
};

/// U: 1 at the n = 0 coefficient of each conductor surface (both surfaces of a tube).
CMatrix selection_matrix_u(const CableSystem& sys, const HarmonicBasis& basis);

/// T = 2 pi a_hat [G~0 - D2 G0] for one hole; columns over the full conductor basis.
CMatrix assemble_t(const CableSystem& sys, const HarmonicBasis& basis, int hole, double omega);

/// Builds every operator at angular frequency omega.
OperatorSet assemble_operators(const CableSystem& sys, const HarmonicBasis& basis, double omega);

/// M_A = -mu0 (1 + mu0 G_g Y_hat)^{-1} G_g T.
CMatrix solve_hole_potentials(const CMatrix& gg, const CVector& yhat, const CMatrix& t);

/// Z = (U^T (1 - j w Ys Psi)^{-1} Ys U)^{-1} from assembled operators.
FrequencyResult extract_rl(const OperatorSet& ops, double f_hz);

/// Full solve at one frequency. A Bessel pole or singular system triggers one
/// retry at f (1 + 1e-9) before the ResonanceError propagates.
FrequencyResult solve_frequency(const CableSystem& sys, double f_hz);

}  // namespace momso

#endif  // MOMSO_SOLVER_HPP
