#ifndef MOMSO_TYPES_HPP
#define MOMSO_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace momso {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double mu0 = 4.0e-7 * pi;
inline constexpr double eps0 = 8.8541878128e-12;
inline constexpr Complex imj{0.0, 1.0};

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Raised when an operator becomes singular at the requested frequency
/// (Bessel zero of a lossless region, singular linear system).
class ResonanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Contours that overlap without being identical, conductors outside holes, ...
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical failures that are neither resonances nor geometry errors.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace momso

#endif  // MOMSO_TYPES_HPP
