// momso: per-unit-length R(w), L(w) of buried cable systems.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "momso/cable_model.hpp"
#include "momso/greens_check.hpp"
#include "momso/postprocess.hpp"

namespace {

using namespace momso;

constexpr int exit_config = 1;
constexpr int exit_numerical = 2;

Reduction parse_reduction(const CableSystem& sys, const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) throw ConfigError("--reduce expects grounded=<ids> or open=<ids>");
  const std::string kind = spec.substr(0, eq);
  Reduction r;
  if (kind == "grounded") {
    r.kind = Reduction::Kind::grounded;
  } else if (kind == "open") {
    r.kind = Reduction::Kind::open;
  } else {
    throw ConfigError("--reduce kind must be grounded or open, got '" + kind + "'");
  }
  std::istringstream ids(spec.substr(eq + 1));
  std::string id;
  while (std::getline(ids, id, ',')) {
    if (!id.empty()) r.indices.push_back(sys.conductor_index(id));
  }
  if (r.indices.empty()) throw ConfigError("--reduce lists no conductors");
  return r;
}

CableSystem load_valid(const std::string& path) {
  CableSystem sys = load_config(path);
  const ValidationReport rep = validate_geometry(sys);
  if (!rep.ok()) throw ConfigError("invalid geometry:\n" + rep.to_string());
  return sys;
}

int cmd_run(const std::string& path, const std::string& mode, const std::string& out, const std::string& reduce,
            bool sequence, int workers, double tol, const std::string& earth) {
  CableSystem sys = load_valid(path);
  if (tol > 0.0) sys.solver.quadrature.rel_tol = tol;
  SweepOptions opt;
  opt.mode = mode == "analytic" ? SweepMode::analytic : mode == "both" ? SweepMode::both : SweepMode::momso;
  opt.sequence = sequence;
  opt.workers = workers;
  opt.earth = earth == "saad" ? EarthFormula::saad : EarthFormula::pollaczek;
  if (!reduce.empty()) opt.reduction = parse_reduction(sys, reduce);

  const SweepReport report = run_sweep(sys, opt);
  const std::string csv = emit_csv(report);
  if (out.empty()) {
    std::cout << csv;
  } else {
    std::ofstream f(out);
    if (!f) throw ConfigError("cannot write '" + out + "'");
    f << csv;
  }
  for (const auto& r : report.records) {
    std::fprintf(stderr, "f = %-12.6g %8.3f s  %s\n", r.f_hz, r.wall_seconds, r.status.c_str());
    for (const auto& d : r.diagnostics) std::fprintf(stderr, "    %s\n", d.c_str());
  }
  return report.all_ok() ? 0 : exit_numerical;
}

int cmd_validate(const std::string& path) {
  const CableSystem sys = load_config(path);
  const ValidationReport rep = validate_geometry(sys);
  std::cout << (rep.issues.empty() ? "ok\n" : rep.to_string());
  return rep.ok() ? 0 : exit_config;
}

int cmd_greens_check(const std::string& path, double f) {
  const CableSystem sys = load_valid(path);
  if (!(f > 0.0)) f = sys.sweep.frequencies().front();
  bool ok = true;
  for (const auto& item : run_greens_check(sys, f)) {
    const char* tag = item.skipped ? "SKIP" : item.pass() ? "PASS" : "FAIL";
    if (item.skipped) {
      std::printf("%s %s (boundaries too close for the trapezoid oracle)\n", tag, item.name.c_str());
    } else {
      std::printf("%s %s  rel err %.3e (tol %.1e)\n", tag, item.name.c_str(), item.error, item.tolerance);
    }
    ok = ok && item.pass();
  }
  return ok ? 0 : exit_numerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MoM-SO per-unit-length impedance of buried cables"};
  app.require_subcommand(1);

  std::string config, mode = "momso", out, reduce, earth = "pollaczek";
  bool sequence = false;
  int workers = 1;
  double tol = 0.0, freq = 0.0;

  auto* run = app.add_subcommand("run", "Frequency sweep, CSV output");
  run->add_option("config", config, "Configuration file")->required();
  run->add_option("--mode", mode, "momso | analytic | both")->check(CLI::IsMember({"momso", "analytic", "both"}));
  run->add_option("--out", out, "CSV path (stdout when omitted)");
  run->add_option("--reduce", reduce, "grounded=<ids> or open=<ids>, comma separated ids or 1-based indices");
  run->add_flag("--sequence", sequence, "Zero- and positive-sequence columns (needs 3 phases)");
  run->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  run->add_option("--tol", tol, "Relative tolerance of the spectral quadrature")->check(CLI::PositiveNumber);
  run->add_option("--earth", earth, "Earth return for the analytic stack: pollaczek | saad")
      ->check(CLI::IsMember({"pollaczek", "saad"}));

  auto* validate = app.add_subcommand("validate", "Check geometry and print the report");
  validate->add_option("config", config, "Configuration file")->required();

  auto* check = app.add_subcommand("greens-check", "Compare harmonic matrices against slow oracles");
  check->add_option("config", config, "Configuration file")->required();
  check->add_option("--freq", freq, "Frequency in Hz (default: first sweep point)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_config;
  }

  try {
    if (*run) return cmd_run(config, mode, out, reduce, sequence, workers, tol, earth);
    if (*validate) return cmd_validate(config);
    if (*check) return cmd_greens_check(config, freq);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_numerical;
  }
  return 0;
}
