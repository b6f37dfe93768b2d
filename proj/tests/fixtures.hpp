#ifndef MOMSO_TESTS_FIXTURES_HPP
#define MOMSO_TESTS_FIXTURES_HPP

#include <string>

#include "momso/cable_model.hpp"

namespace momso::fixtures {

inline constexpr double core_radius = 0.0195;
inline constexpr double core_resistivity = 3.365e-8;
inline constexpr double screen_inner = 0.03775;
inline constexpr double screen_outer = 0.03797;
inline constexpr double screen_resistivity = 1.718e-8;
inline constexpr double jacket_radius = 0.0425;

inline std::string config_path(const std::string& name) { return std::string(MOMSO_CONFIG_DIR) + "/" + name; }

inline CableSystem load(const std::string& name) { return load_config(config_path(name)); }

inline Conductor core(const std::string& id, Point c) {
  Conductor k;
  k.id = id;
  k.center = c;
  k.radius = core_radius;
  k.material.sigma = 1.0 / core_resistivity;
  return k;
}

inline Conductor screen(const std::string& id, Point c) {
  Conductor s;
  s.id = id;
  s.kind = ConductorKind::tube;
  s.center = c;
  s.inner_radius = screen_inner;
  s.radius = screen_outer;
  s.material.sigma = 1.0 / screen_resistivity;
  s.jacket_radius = jacket_radius;
  return s;
}

/// Bare core at depth 1 m.
inline CableSystem single_core(double sigma_g = 0.01, GroundKind kind = GroundKind::two_layer) {
  CableSystem sys;
  sys.ground.sigma_g = sigma_g;
  sys.ground.kind = kind;
  sys.conductors.push_back(core("core", {0.0, -1.0}));
  return sys;
}

/// Each cable in its own hole of jacket radius, filled with the ground material.
inline CableSystem matched_holes(const CableSystem& direct) {
  CableSystem sys = direct;
  for (int p = 0; p < sys.size(); ++p) {
    Conductor& c = sys.conductors[p];
    if (!c.is_tube()) continue;
    Hole h;
    h.id = "h_" + c.id;
    h.center = c.center;
    h.radius = c.jacket_radius ? *c.jacket_radius : c.radius;
    h.medium = sys.ground.material();
    h.n_hat = c.n_p;
    const int hi = static_cast<int>(sys.holes.size());
    sys.holes.push_back(h);
    for (auto& m : sys.conductors) {
      if (distance(m.center, c.center) < 1e-12 && m.radius <= c.radius) {
        m.hole = hi;
        sys.holes[hi].members.push_back(static_cast<int>(&m - sys.conductors.data()));
      }
    }
  }
  return sys;
}

}  // namespace momso::fixtures

#endif  // MOMSO_TESTS_FIXTURES_HPP
