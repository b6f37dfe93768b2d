#ifndef MOMSO_CABLE_MODEL_HPP
#define MOMSO_CABLE_MODEL_HPP

#include <optional>
#include <string>
#include <vector>

#include "momso/quadrature.hpp"
#include "momso/types.hpp"

namespace momso {

struct Material {
  double sigma = 0.0;
  double mu_r = 1.0;
  double eps_r = 1.0;

  double mu() const { return mu_r * mu0; }
  double eps() const { return eps_r * eps0; }
  /// sqrt(w mu (w eps - j sigma)), Re >= 0 and Im <= 0.
  Complex wavenumber(double omega) const;
  bool operator==(const Material&) const = default;
};

enum class ConductorKind { solid, tube };

struct Conductor {
  std::string id;
  ConductorKind kind = ConductorKind::solid;
  Point center;
  double radius = 0.0;        // outer radius (tube: b_out)
  double inner_radius = 0.0;  // tube only: b_in
  Material material;
  int n_p = 4;
  std::optional<int> hole;    // index into CableSystem::holes
  std::optional<double> jacket_radius;

  bool is_tube() const { return kind == ConductorKind::tube; }
  bool operator==(const Conductor&) const = default;
};

struct Hole {
  std::string id;
  Point center;
  double radius = 0.0;
  Material medium;  // lossless fill unless set otherwise
  int n_hat = 4;
  std::vector<int> members;
  bool operator==(const Hole&) const = default;
};

enum class GroundKind { two_layer, homogeneous };

struct GroundModel {
  double sigma_g = 0.01;
  double eps_r = 1.0;
  GroundKind kind = GroundKind::two_layer;

  Material material() const { return {sigma_g, 1.0, eps_r}; }
  bool operator==(const GroundModel&) const = default;
};

struct FrequencySweep {
  double f_min = 1.0;
  double f_max = 1e6;
  int points = 31;
  bool log_spacing = true;
  std::vector<double> explicit_values;  // overrides the grid when non-empty

  std::vector<double> frequencies() const;
  bool operator==(const FrequencySweep&) const = default;
};

struct SolverSettings {
  QuadratureSpec quadrature;
  bool operator==(const SolverSettings& o) const {
    return quadrature.rel_tol == o.quadrature.rel_tol && quadrature.abs_tol == o.quadrature.abs_tol &&
           quadrature.max_subdivisions == o.quadrature.max_subdivisions;
  }
};

struct CableSystem {
  std::vector<Conductor> conductors;
  std::vector<Hole> holes;
  GroundModel ground;
  FrequencySweep sweep;
  SolverSettings solver;

  int size() const { return static_cast<int>(conductors.size()); }
  bool direct_burial() const { return holes.empty(); }
  /// Index of a conductor by id or by 1-based position.
  int conductor_index(const std::string& key) const;
  bool operator==(const CableSystem&) const = default;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

CableSystem parse_config(const std::string& text);
CableSystem load_config(const std::string& path);
std::string serialize_config(const CableSystem& sys);

enum class Severity { warning, error };

struct ValidationIssue {
  Severity severity;
  std::string message;
  std::string entity;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const;
  std::string to_string() const;
};

ValidationReport validate_geometry(const CableSystem& sys);

}  // namespace momso

#endif  // MOMSO_CABLE_MODEL_HPP
