#ifndef MOMSO_POSTPROCESS_HPP
#define MOMSO_POSTPROCESS_HPP

#include <optional>
#include <string>
#include <vector>

#include "momso/analytic.hpp"
#include "momso/cable_model.hpp"

namespace momso {

struct ReducedImpedance {
  CMatrix z;
  std::vector<int> retained;  // original conductor indices, in order
};

/// Kron reduction with zero potential on `grounded`.
ReducedImpedance reduce_grounded(const CMatrix& z, const std::vector<int>& grounded);

/// Zero current on `open`: the retained submatrix.
ReducedImpedance reduce_open(const CMatrix& z, const std::vector<int>& open);

struct SequenceResult {
  Complex z0;
  Complex z1;
};

/// Fortescue transform A^{-1} Z A of a 3x3 phase matrix, a = e^{j 2 pi / 3}.
SequenceResult sequence_impedances(const CMatrix& z);
CMatrix sequence_matrix(const CMatrix& z);
CMatrix fortescue_matrix();

enum class SweepMode { momso, analytic, both };

struct Reduction {
  enum class Kind { grounded, open };
  Kind kind = Kind::grounded;
  std::vector<int> indices;
};

struct SweepOptions {
  SweepMode mode = SweepMode::momso;
  std::optional<Reduction> reduction;
  bool sequence = false;
  int workers = 1;
  EarthFormula earth = EarthFormula::pollaczek;
};

struct RL {
  RMatrix r;
  RMatrix l;
  bool operator==(const RL& o) const { return r == o.r && l == o.l; }
};

RL split_rl(const CMatrix& z, double omega);

struct SequenceRL {
  double r0 = 0.0, l0 = 0.0, r1 = 0.0, l1 = 0.0;
  bool operator==(const SequenceRL&) const = default;
};

/// One quantity set, from either the MoM-SO solver or the cable-constant formulas.
struct Evaluation {
  RL full;
  std::optional<RL> reduced;
  std::optional<SequenceRL> sequence;
  bool operator==(const Evaluation&) const = default;
};

struct FrequencyRecord {
  double f_hz = 0.0;
  std::string status = "ok";
  std::optional<Evaluation> primary;    // MoM-SO, or the analytic stack in analytic mode
  std::optional<Evaluation> reference;  // analytic stack in `both` mode
  std::vector<std::string> diagnostics;
  double wall_seconds = 0.0;

  bool ok() const { return status == "ok"; }
};

struct SweepReport {
  SweepMode mode = SweepMode::momso;
  int size = 0;           // P
  int reduced_size = 0;   // 0 when no reduction
  bool sequence = false;
  std::vector<FrequencyRecord> records;

  bool all_ok() const;
};

/// Every frequency is independent; `workers` threads pick them from a shared
/// counter. Failures are recorded per frequency and the sweep continues.
SweepReport run_sweep(const CableSystem& sys, const SweepOptions& options);

struct DeviationTable {
  std::vector<double> f_hz;
  std::vector<RMatrix> dr;  // |R_a - R_b| / |R_b| per entry
  std::vector<RMatrix> dl;
  double max_r = 0.0, median_r = 0.0, max_l = 0.0, median_l = 0.0;
};

double relative_deviation(double a, double b);

/// Compares full matrices of two runs on the same frequency grid.
DeviationTable compare_report(const SweepReport& a, const SweepReport& b);

/// Header row plus one row per frequency, values in %.17e.
std::string emit_csv(const SweepReport& report);

/// Inverse of emit_csv. Wall time and diagnostics are not carried by the CSV.
SweepReport parse_csv(const std::string& text);

/// True when two reports agree on everything the CSV carries.
bool same_tabulation(const SweepReport& a, const SweepReport& b);

}  // namespace momso

#endif  // MOMSO_POSTPROCESS_HPP
