#include "momso/cable_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#define TOML_EXCEPTIONS 1
#include "toml.hpp"

namespace momso {

Complex Material::wavenumber(double omega) const {
  const Complex k2 = omega * mu() * Complex{omega * eps(), -sigma};
  Complex k = std::sqrt(k2);
  if (k.real() < 0.0) k = -k;
  return k;
}

std::vector<double> FrequencySweep::frequencies() const {
  if (!explicit_values.empty()) return explicit_values;
  std::vector<double> f(static_cast<std::size_t>(points));
  if (points == 1) {
    f[0] = f_min;
    return f;
  }
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    f[i] = log_spacing ? std::pow(10.0, std::log10(f_min) + t * (std::log10(f_max) - std::log10(f_min)))
                       : f_min + t * (f_max - f_min);
  }
  f.front() = f_min;
  f.back() = f_max;
  return f;
}

int CableSystem::conductor_index(const std::string& key) const {
  for (int i = 0; i < size(); ++i) {
    if (conductors[i].id == key) return i;
  }
  try {
    std::size_t used = 0;
    const int idx = std::stoi(key, &used);
    if (used == key.size() && idx >= 1 && idx <= size()) return idx - 1;
  } catch (const std::exception&) {
  }
  throw ConfigError("unknown conductor '" + key + "'");
}

namespace {

using KeySet = std::set<std::string>;

void reject_unknown(const toml::table& t, const KeySet& allowed, const std::string& where) {
  for (const auto& [k, v] : t) {
    if (!allowed.count(std::string(k.str()))) {
      throw ConfigError("unknown key '" + std::string(k.str()) + "' in " + where);
    }
  }
}

std::optional<double> opt_number(const toml::table& t, const std::string& key, const std::string& where) {
  const toml::node* n = t.get(key);
  if (!n) return std::nullopt;
  if (auto d = n->value<double>()) {
    if (!std::isfinite(*d)) throw ConfigError(where + "." + key + " must be finite");
    return *d;
  }
  throw ConfigError(where + "." + key + " must be a number");
}

double req_number(const toml::table& t, const std::string& key, const std::string& where) {
  auto v = opt_number(t, key, where);
  if (!v) throw ConfigError("missing mandatory field " + where + "." + key);
  return *v;
}

double positive(double v, const std::string& what) {
  if (!(v > 0.0)) throw ConfigError(what + " must be > 0");
  return v;
}

std::optional<int> opt_int(const toml::table& t, const std::string& key, const std::string& where) {
  const toml::node* n = t.get(key);
  if (!n) return std::nullopt;
  if (auto i = n->value<int64_t>()) {
    if (*i < 0) throw ConfigError(where + "." + key + " must be >= 0");
    return static_cast<int>(*i);
  }
  throw ConfigError(where + "." + key + " must be an integer");
}

std::optional<std::string> opt_string(const toml::table& t, const std::string& key, const std::string& where) {
  const toml::node* n = t.get(key);
  if (!n) return std::nullopt;
  if (auto s = n->value<std::string>()) return *s;
  throw ConfigError(where + "." + key + " must be a string");
}

// conductivity or resistivity (exactly one), mu_r, eps_r.
Material parse_material(const toml::table& t, const std::string& where, bool conductive_required) {
  Material m;
  const auto sigma = opt_number(t, "conductivity", where);
  const auto rho = opt_number(t, "resistivity", where);
  if (sigma && rho) throw ConfigError(where + ": give conductivity or resistivity, not both");
  if (rho) {
    m.sigma = 1.0 / positive(*rho, where + ".resistivity");
  } else if (sigma) {
    if (*sigma < 0.0) throw ConfigError(where + ".conductivity must be >= 0");
    m.sigma = *sigma;
  } else if (conductive_required) {
    throw ConfigError("missing mandatory field " + where + ".resistivity or .conductivity");
  }
  if (auto mu = opt_number(t, "mu_r", where)) m.mu_r = positive(*mu, where + ".mu_r");
  if (auto er = opt_number(t, "eps_r", where)) m.eps_r = positive(*er, where + ".eps_r");
  return m;
}

const toml::array* table_array(const toml::table& root, const std::string& key) {
  const toml::node* n = root.get(key);
  if (!n) return nullptr;
  const toml::array* arr = n->as_array();
  if (!arr || !arr->is_array_of_tables()) throw ConfigError("'" + key + "' must be an array of tables");
  return arr;
}

const toml::table* sub_table(const toml::table& root, const std::string& key) {
  const toml::node* n = root.get(key);
  if (!n) return nullptr;
  const toml::table* t = n->as_table();
  if (!t) throw ConfigError("'" + key + "' must be a table");
  return t;
}

}  // namespace

CableSystem parse_config(const std::string& text) {
  toml::table root;
  try {
    root = toml::parse(text);
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << "syntax error at line " << e.source().begin.line << ", column " << e.source().begin.column << ": "
       << e.description();
    throw ConfigError(os.str());
  }
  reject_unknown(root, {"ground", "hole", "conductor", "sweep", "solver"}, "document");

  CableSystem sys;

  const toml::table* g = sub_table(root, "ground");
  if (!g) throw ConfigError("missing mandatory section [ground]");
  reject_unknown(*g, {"sigma_g", "resistivity", "eps_r", "model"}, "ground");
  {
    const auto sg = opt_number(*g, "sigma_g", "ground");
    const auto rg = opt_number(*g, "resistivity", "ground");
    if (sg && rg) throw ConfigError("ground: give sigma_g or resistivity, not both");
    if (!sg && !rg) throw ConfigError("missing mandatory field ground.sigma_g");
    sys.ground.sigma_g = sg ? positive(*sg, "ground.sigma_g") : 1.0 / positive(*rg, "ground.resistivity");
    if (auto er = opt_number(*g, "eps_r", "ground")) sys.ground.eps_r = positive(*er, "ground.eps_r");
    if (auto model = opt_string(*g, "model", "ground")) {
      if (*model == "two_layer") {
        sys.ground.kind = GroundKind::two_layer;
      } else if (*model == "homogeneous") {
        sys.ground.kind = GroundKind::homogeneous;
      } else {
        throw ConfigError("ground.model must be two_layer or homogeneous");
      }
    }
  }

  if (const toml::array* holes = table_array(root, "hole")) {
    int idx = 0;
    for (const auto& node : *holes) {
      const toml::table& t = *node.as_table();
      const std::string where = "hole[" + std::to_string(idx) + "]";
      reject_unknown(t, {"id", "center_x", "center_y", "radius", "n_hat", "conductivity", "mu_r", "eps_r"},
                     where);
      Hole h;
      h.id = opt_string(t, "id", where).value_or("h" + std::to_string(idx + 1));
      h.center = {req_number(t, "center_x", where), req_number(t, "center_y", where)};
      h.radius = positive(req_number(t, "radius", where), where + ".radius");
      h.n_hat = opt_int(t, "n_hat", where).value_or(4);
      h.medium = parse_material(t, where, false);
      sys.holes.push_back(h);
      ++idx;
    }
  }

  const toml::array* conds = table_array(root, "conductor");
  if (!conds || conds->empty()) throw ConfigError("P >= 1 required: no [[conductor]] entries");
  int idx = 0;
  for (const auto& node : *conds) {
    const toml::table& t = *node.as_table();
    const std::string where = "conductor[" + std::to_string(idx) + "]";
    reject_unknown(t,
                   {"id", "type", "center_x", "center_y", "radius", "inner_radius", "outer_radius",
                    "resistivity", "conductivity", "mu_r", "eps_r", "n_p", "hole", "jacket_radius"},
                   where);
    Conductor c;
    c.id = opt_string(t, "id", where).value_or("c" + std::to_string(idx + 1));
    const std::string type = opt_string(t, "type", where).value_or("solid");
    c.center = {req_number(t, "center_x", where), req_number(t, "center_y", where)};
    if (type == "solid") {
      if (t.contains("inner_radius") || t.contains("outer_radius")) {
        throw ConfigError(where + ": solid conductors take 'radius'");
      }
      c.kind = ConductorKind::solid;
      c.radius = positive(req_number(t, "radius", where), where + ".radius");
    } else if (type == "tube") {
      if (t.contains("radius")) throw ConfigError(where + ": tubes take inner_radius and outer_radius");
      c.kind = ConductorKind::tube;
      c.inner_radius = positive(req_number(t, "inner_radius", where), where + ".inner_radius");
      c.radius = positive(req_number(t, "outer_radius", where), where + ".outer_radius");
      if (!(c.inner_radius < c.radius)) throw ConfigError(where + ": inner_radius must be < outer_radius");
    } else {
      throw ConfigError(where + ".type must be solid or tube");
    }
    c.material = parse_material(t, where, true);
    c.n_p = opt_int(t, "n_p", where).value_or(4);
    if (auto jr = opt_number(t, "jacket_radius", where)) c.jacket_radius = positive(*jr, where + ".jacket_radius");
    const std::string hole = opt_string(t, "hole", where).value_or("none");
    if (hole != "none") {
      auto it = std::find_if(sys.holes.begin(), sys.holes.end(), [&](const Hole& h) { return h.id == hole; });
      if (it == sys.holes.end()) throw ConfigError(where + ": unknown hole '" + hole + "'");
      c.hole = static_cast<int>(it - sys.holes.begin());
      it->members.push_back(idx);
    }
    sys.conductors.push_back(c);
    ++idx;
  }
  {
    std::set<std::string> ids;
    for (const auto& c : sys.conductors) {
      if (!ids.insert(c.id).second) throw ConfigError("duplicate conductor id '" + c.id + "'");
    }
    std::set<std::string> hids;
    for (const auto& h : sys.holes) {
      if (!hids.insert(h.id).second) throw ConfigError("duplicate hole id '" + h.id + "'");
    }
  }

  if (const toml::table* s = sub_table(root, "sweep")) {
    reject_unknown(*s, {"f_min", "f_max", "points", "spacing", "frequencies"}, "sweep");
    if (const toml::node* fl = s->get("frequencies")) {
      const toml::array* arr = fl->as_array();
      if (!arr) throw ConfigError("sweep.frequencies must be an array");
      for (const auto& v : *arr) {
        auto d = v.value<double>();
        if (!d) throw ConfigError("sweep.frequencies must hold numbers");
        sys.sweep.explicit_values.push_back(positive(*d, "sweep frequency"));
      }
      if (!std::is_sorted(sys.sweep.explicit_values.begin(), sys.sweep.explicit_values.end()) ||
          std::adjacent_find(sys.sweep.explicit_values.begin(), sys.sweep.explicit_values.end()) !=
              sys.sweep.explicit_values.end()) {
        throw ConfigError("sweep.frequencies must be strictly increasing");
      }
    }
    if (auto v = opt_number(*s, "f_min", "sweep")) sys.sweep.f_min = positive(*v, "sweep.f_min");
    if (auto v = opt_number(*s, "f_max", "sweep")) sys.sweep.f_max = positive(*v, "sweep.f_max");
    if (auto v = opt_int(*s, "points", "sweep")) sys.sweep.points = *v;
    if (auto sp = opt_string(*s, "spacing", "sweep")) {
      if (*sp == "log") {
        sys.sweep.log_spacing = true;
      } else if (*sp == "linear") {
        sys.sweep.log_spacing = false;
      } else {
        throw ConfigError("sweep.spacing must be log or linear");
      }
    }
    if (sys.sweep.points < 1) throw ConfigError("sweep.points must be >= 1");
    if (sys.sweep.f_max < sys.sweep.f_min) throw ConfigError("sweep.f_max must be >= sweep.f_min");
  }

  if (const toml::table* s = sub_table(root, "solver")) {
    reject_unknown(*s, {"rel_tol", "abs_tol", "max_subdivisions"}, "solver");
    if (auto v = opt_number(*s, "rel_tol", "solver")) sys.solver.quadrature.rel_tol = positive(*v, "solver.rel_tol");
    if (auto v = opt_number(*s, "abs_tol", "solver")) sys.solver.quadrature.abs_tol = positive(*v, "solver.abs_tol");
    if (auto v = opt_int(*s, "max_subdivisions", "solver")) sys.solver.quadrature.max_subdivisions = *v;
  }
  return sys;
}

CableSystem load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace {

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  std::string s = os.str();
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

void emit_material(std::ostringstream& os, const Material& m, bool always_sigma) {
  if (always_sigma || m.sigma != 0.0) os << "conductivity = " << num(m.sigma) << "\n";
  os << "mu_r = " << num(m.mu_r) << "\n";
  os << "eps_r = " << num(m.eps_r) << "\n";
}

}  // namespace

std::string serialize_config(const CableSystem& sys) {
  std::ostringstream os;
  os << "[ground]\n";
  os << "sigma_g = " << num(sys.ground.sigma_g) << "\n";
  os << "eps_r = " << num(sys.ground.eps_r) << "\n";
  os << "model = \"" << (sys.ground.kind == GroundKind::two_layer ? "two_layer" : "homogeneous") << "\"\n";
  for (const auto& h : sys.holes) {
    os << "\n[[hole]]\n";
    os << "id = \"" << h.id << "\"\n";
    os << "center_x = " << num(h.center.x) << "\n";
    os << "center_y = " << num(h.center.y) << "\n";
    os << "radius = " << num(h.radius) << "\n";
    os << "n_hat = " << h.n_hat << "\n";
    emit_material(os, h.medium, false);
  }
  for (const auto& c : sys.conductors) {
    os << "\n[[conductor]]\n";
    os << "id = \"" << c.id << "\"\n";
    os << "type = \"" << (c.is_tube() ? "tube" : "solid") << "\"\n";
    os << "center_x = " << num(c.center.x) << "\n";
    os << "center_y = " << num(c.center.y) << "\n";
    if (c.is_tube()) {
      os << "inner_radius = " << num(c.inner_radius) << "\n";
      os << "outer_radius = " << num(c.radius) << "\n";
    } else {
      os << "radius = " << num(c.radius) << "\n";
    }
    emit_material(os, c.material, true);
    os << "n_p = " << c.n_p << "\n";
    if (c.jacket_radius) os << "jacket_radius = " << num(*c.jacket_radius) << "\n";
    os << "hole = \"" << (c.hole ? sys.holes[*c.hole].id : std::string("none")) << "\"\n";
  }
  os << "\n[sweep]\n";
  os << "f_min = " << num(sys.sweep.f_min) << "\n";
  os << "f_max = " << num(sys.sweep.f_max) << "\n";
  os << "points = " << sys.sweep.points << "\n";
  os << "spacing = \"" << (sys.sweep.log_spacing ? "log" : "linear") << "\"\n";
  if (!sys.sweep.explicit_values.empty()) {
    os << "frequencies = [";
    for (std::size_t i = 0; i < sys.sweep.explicit_values.size(); ++i) {
      os << (i ? ", " : "") << num(sys.sweep.explicit_values[i]);
    }
    os << "]\n";
  }
  os << "\n[solver]\n";
  os << "rel_tol = " << num(sys.solver.quadrature.rel_tol) << "\n";
  os << "abs_tol = " << num(sys.solver.quadrature.abs_tol) << "\n";
  os << "max_subdivisions = " << sys.solver.quadrature.max_subdivisions << "\n";
  return os.str();
}

bool ValidationReport::ok() const {
  return std::none_of(issues.begin(), issues.end(), [](const auto& i) { return i.severity == Severity::error; });
}

std::string ValidationReport::to_string() const {
  if (issues.empty()) return "ok\n";
  std::ostringstream os;
  for (const auto& i : issues) {
    os << (i.severity == Severity::error ? "error" : "warning") << " [" << i.entity << "] " << i.message << "\n";
  }
  return os.str();
}

namespace {

// Touching circles are accepted; the slack absorbs decimal round-off in configs.
constexpr double slack = 1e-12;

bool material_ok(const Material& m) {
  return std::isfinite(m.sigma) && m.sigma >= 0.0 && std::isfinite(m.mu_r) && m.mu_r > 0.0 &&
         std::isfinite(m.eps_r) && m.eps_r > 0.0;
}

}  // namespace

ValidationReport validate_geometry(const CableSystem& sys) {
  ValidationReport rep;
  auto err = [&](const std::string& msg, const std::string& who) { rep.issues.push_back({Severity::error, msg, who}); };

  if (sys.conductors.empty()) err("P >= 1 required", "system");
  if (!(sys.ground.sigma_g > 0.0) || !std::isfinite(sys.ground.sigma_g)) err("sigma_g must be > 0", "ground");
  for (double f : sys.sweep.frequencies()) {
    if (!(f > 0.0) || !std::isfinite(f)) {
      err("frequencies must be finite and > 0", "sweep");
      break;
    }
  }

  int in_hole = 0;
  for (int i = 0; i < sys.size(); ++i) {
    const Conductor& c = sys.conductors[i];
    if (!(c.radius > 0.0)) err("radius must be > 0", c.id);
    if (c.is_tube() && !(c.inner_radius > 0.0 && c.inner_radius < c.radius)) {
      err("tube needs 0 < inner_radius < outer_radius", c.id);
    }
    if (c.n_p < 0) err("n_p must be >= 0", c.id);
    if (!material_ok(c.material)) err("invalid material", c.id);
    if (c.hole) {
      ++in_hole;
      const Hole& h = sys.holes[*c.hole];
      if (distance(c.center, h.center) + c.radius >= h.radius * (1.0 + slack)) {
        err("conductor is not inside hole '" + h.id + "'", c.id);
      }
    } else {
      if (c.center.y + c.radius >= 0.0) err("conductor crosses or lies above the ground surface", c.id);
      for (const auto& h : sys.holes) {
        if (distance(c.center, h.center) < c.radius + h.radius) {
          err("conductor overlaps hole '" + h.id + "' it does not belong to", c.id);
        }
      }
    }
  }
  if (in_hole != 0 && in_hole != sys.size()) {
    err("conductors must either all sit in holes or all be directly buried", "system");
  }

  for (int i = 0; i < sys.size(); ++i) {
    for (int j = i + 1; j < sys.size(); ++j) {
      const Conductor& a = sys.conductors[i];
      const Conductor& b = sys.conductors[j];
      const double d = distance(a.center, b.center);
      if (d >= (a.radius + b.radius) * (1.0 - slack)) continue;
      // Nesting inside a tube's bore is allowed.
      const bool b_in_a = a.is_tube() && d + b.radius <= a.inner_radius * (1.0 + slack);
      const bool a_in_b = b.is_tube() && d + a.radius <= b.inner_radius * (1.0 + slack);
      if (!b_in_a && !a_in_b) err("overlaps conductor '" + b.id + "'", a.id);
      else if (a.hole != b.hole) err("nested conductors must share a hole", a.id);
    }
  }

  for (std::size_t i = 0; i < sys.holes.size(); ++i) {
    const Hole& h = sys.holes[i];
    if (!(h.radius > 0.0)) err("radius must be > 0", h.id);
    if (h.n_hat < 0) err("n_hat must be >= 0", h.id);
    if (!material_ok(h.medium)) err("invalid material", h.id);
    if (!(h.center.y + h.radius < 0.0)) err("hole intersects the ground surface", h.id);
    for (std::size_t j = i + 1; j < sys.holes.size(); ++j) {
      const Hole& o = sys.holes[j];
      if (distance(h.center, o.center) < (h.radius + o.radius) * (1.0 - slack)) {
        err("overlaps hole '" + o.id + "'", h.id);
      }
    }
  }
  return rep;
}

}  // namespace momso
