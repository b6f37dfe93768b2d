#ifndef MOMSO_SPECIAL_FUNCTIONS_HPP
#define MOMSO_SPECIAL_FUNCTIONS_HPP

// Integer-order cylindrical functions of complex argument.
//
// Unscaled J, Y and H^(2) are valid while |Im z| <= max_unscaled_imag; beyond
// that e^{|Im z|} leaves the double range and BesselOverflow is thrown. Code
// that needs large lossy arguments uses the log-derivative or the scaled
// Hankel functions, which have no such limit.

#include <stdexcept>
#include <vector>

#include "momso/types.hpp"

namespace momso {

class BesselOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BesselDomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument sits on (or numerically at) a zero of J_n.
class BesselPole : public ResonanceError {
 public:
  using ResonanceError::ResonanceError;
};

inline constexpr double max_unscaled_imag = 690.0;

Complex bessel_j(int n, Complex z);
Complex bessel_y(int n, Complex z);
Complex hankel1(int n, Complex z);
Complex hankel2(int n, Complex z);

/// J_0(z) ... J_nmax(z) in one pass.
std::vector<Complex> bessel_j_array(int nmax, Complex z);
/// Y_0(z) ... Y_nmax(z).
std::vector<Complex> bessel_y_array(int nmax, Complex z);
/// H^(2)_0(z) ... H^(2)_nmax(z).
std::vector<Complex> hankel2_array(int nmax, Complex z);

/// J'_n(z) / J_n(z).
Complex bessel_j_log_derivative(int n, Complex z);

/// z J'_n(z)/J_n(z) - |n| = -z J_{|n|+1}(z)/J_{|n|}(z).
///
/// Free of the |n| offset, so differences between two media keep their
/// precision when both arguments are small.
Complex bessel_j_zdlog_reduced(int n, Complex z);

/// H^(1)_n(z) e^{-iz}.
Complex hankel1_scaled(int n, Complex z);
/// H^(2)_n(z) e^{+iz}.
Complex hankel2_scaled(int n, Complex z);

/// Modified Bessel functions, scaled: I_n(z) e^{-z} and K_n(z) e^{z}, Re z >= 0.
Complex bessel_i_scaled(int n, Complex z);
Complex bessel_k_scaled(int n, Complex z);

Complex bessel_k0(Complex z);

}  // namespace momso

#endif  // MOMSO_SPECIAL_FUNCTIONS_HPP
