#ifndef MOMSO_GREENS_CHECK_HPP
#define MOMSO_GREENS_CHECK_HPP

#include <string>
#include <vector>

#include "momso/cable_model.hpp"

namespace momso {

struct GreensCheckItem {
  std::string name;
  double error = 0.0;  // relative, Frobenius norm
  double tolerance = 0.0;
  bool skipped = false;
  bool pass() const { return skipped || error <= tolerance; }
};

/// Compares every harmonic matrix the solver would assemble for `sys` at
/// frequency f against the slow oracles. Pairs whose boundaries are closer
/// than the trapezoid oracle can resolve are reported as skipped.
std::vector<GreensCheckItem> run_greens_check(const CableSystem& sys, double f_hz, double tolerance = 1e-8);

}  // namespace momso

#endif  // MOMSO_GREENS_CHECK_HPP
