#include "momso/postprocess.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

#include "momso/solver.hpp"

namespace momso {

namespace {

std::vector<int> complement(int p, const std::vector<int>& idx) {
  std::set<int> s(idx.begin(), idx.end());
  if (static_cast<int>(s.size()) != static_cast<int>(idx.size())) throw std::invalid_argument("repeated conductor index");
  for (int i : s) {
    if (i < 0 || i >= p) throw std::invalid_argument("conductor index out of range");
  }
  std::vector<int> keep;
  for (int i = 0; i < p; ++i) {
    if (!s.count(i)) keep.push_back(i);
  }
  return keep;
}

CMatrix take(const CMatrix& z, const std::vector<int>& rows, const std::vector<int>& cols) {
  CMatrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = z(rows[i], cols[j]);
  }
  return out;
}

}  // namespace

ReducedImpedance reduce_grounded(const CMatrix& z, const std::vector<int>& grounded) {
  const int p = static_cast<int>(z.rows());
  const auto keep = complement(p, grounded);
  if (grounded.empty() || keep.empty()) throw std::invalid_argument("grounded set must be a nonempty proper subset");
  const CMatrix zkk = take(z, keep, keep);
  const CMatrix zkg = take(z, keep, grounded);
  const CMatrix zgk = take(z, grounded, keep);
  const CMatrix zgg = take(z, grounded, grounded);
  Eigen::PartialPivLU<CMatrix> lu(zgg);
  if (!(lu.rcond() > 1e-15)) throw NumericalError("grounded block is singular");
  return {zkk - zkg * lu.solve(zgk), keep};
}

ReducedImpedance reduce_open(const CMatrix& z, const std::vector<int>& open) {
  const auto keep = complement(static_cast<int>(z.rows()), open);
  if (keep.empty()) throw std::invalid_argument("open set must be a proper subset");
  return {take(z, keep, keep), keep};
}

CMatrix fortescue_matrix() {
  const Complex a = std::polar(1.0, 2.0 * pi / 3.0);
  CMatrix A(3, 3);
  A << 1.0, 1.0, 1.0, 1.0, a * a, a, 1.0, a, a * a;
  return A;
}

CMatrix sequence_matrix(const CMatrix& z) {
  if (z.rows() != 3 || z.cols() != 3) throw std::invalid_argument("sequence impedances need a 3x3 matrix");
  const CMatrix A = fortescue_matrix();
  return A.inverse() * z * A;
}

SequenceResult sequence_impedances(const CMatrix& z) {
  const CMatrix s = sequence_matrix(z);
  return {s(0, 0), s(1, 1)};
}

RL split_rl(const CMatrix& z, double omega) { return {z.real(), z.imag() / omega}; }

bool SweepReport::all_ok() const {
  return std::all_of(records.begin(), records.end(), [](const FrequencyRecord& r) { return r.ok(); });
}

namespace {

Evaluation evaluate(const CMatrix& z, double omega, const SweepOptions& opt) {
  Evaluation e;
  e.full = split_rl(z, omega);
  CMatrix phase = z;
  if (opt.reduction) {
    const ReducedImpedance red = opt.reduction->kind == Reduction::Kind::grounded
                                     ? reduce_grounded(z, opt.reduction->indices)
                                     : reduce_open(z, opt.reduction->indices);
    e.reduced = split_rl(red.z, omega);
    phase = red.z;
  }
  if (opt.sequence) {
    const SequenceResult s = sequence_impedances(phase);
    e.sequence = SequenceRL{s.z0.real(), s.z0.imag() / omega, s.z1.real(), s.z1.imag() / omega};
  }
  return e;
}

void note_failure(FrequencyRecord& rec, const std::string& what) {
  rec.status = rec.ok() ? what : rec.status + "; " + what;
}

}  // namespace

SweepReport run_sweep(const CableSystem& sys, const SweepOptions& options) {
  SweepReport report;
  report.mode = options.mode;
  report.size = sys.size();
  report.sequence = options.sequence;
  if (options.reduction) {
    try {
      const auto keep = complement(sys.size(), options.reduction->indices);
      if (keep.empty() || options.reduction->indices.empty()) throw std::invalid_argument("reduction set must be a nonempty proper subset");
      report.reduced_size = static_cast<int>(keep.size());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  const int phases = report.reduced_size ? report.reduced_size : report.size;
  if (options.sequence && phases != 3) {
    throw ConfigError("sequence impedances need exactly 3 conductors after reduction, got " + std::to_string(phases));
  }

  const std::vector<double> freqs = sys.sweep.frequencies();
  report.records.resize(freqs.size());
  const bool want_momso = options.mode != SweepMode::analytic;
  const bool want_analytic = options.mode != SweepMode::momso;

  auto work = [&](std::size_t i) {
    FrequencyRecord& rec = report.records[i];
    rec.f_hz = freqs[i];
    const double omega = 2.0 * pi * rec.f_hz;
    const auto t0 = std::chrono::steady_clock::now();
    if (want_momso) {
      try {
        const FrequencyResult r = solve_frequency(sys, rec.f_hz);
        rec.primary = evaluate(r.z, omega, options);
        rec.diagnostics = r.diagnostics;
      } catch (const std::exception& e) {
        note_failure(rec, std::string("momso: ") + e.what());
      }
    }
    if (want_analytic) {
      try {
        Evaluation e = evaluate(cable_constants_impedance(sys, omega, options.earth), omega, options);
        (options.mode == SweepMode::analytic ? rec.primary : rec.reference) = std::move(e);
      } catch (const std::exception& e) {
        note_failure(rec, std::string("analytic: ") + e.what());
      }
    }
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  const int workers = std::max(1, std::min<int>(options.workers, static_cast<int>(freqs.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < freqs.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < freqs.size(); i = next++) work(i);
      });
    }
    for (auto& t : pool) t.join();
  }
  return report;
}

double relative_deviation(double a, double b) {
  if (a == b) return 0.0;
  if (b == 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(a - b) / std::abs(b);
}

namespace {

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  if (v.size() % 2) return v[mid];
  const double hi = v[mid];
  return 0.5 * (hi + *std::max_element(v.begin(), v.begin() + mid));
}

RMatrix deviation(const RMatrix& a, const RMatrix& b) {
  RMatrix d(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) d(i, j) = relative_deviation(a(i, j), b(i, j));
  }
  return d;
}

}  // namespace

DeviationTable compare_report(const SweepReport& a, const SweepReport& b) {
  if (a.records.size() != b.records.size()) throw std::invalid_argument("frequency grids differ in length");
  DeviationTable t;
  std::vector<double> all_r, all_l;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const auto& ra = a.records[i];
    const auto& rb = b.records[i];
    if (ra.f_hz != rb.f_hz) throw std::invalid_argument("frequency grids differ");
    if (!ra.primary || !rb.primary) continue;
    t.f_hz.push_back(ra.f_hz);
    t.dr.push_back(deviation(ra.primary->full.r, rb.primary->full.r));
    t.dl.push_back(deviation(ra.primary->full.l, rb.primary->full.l));
    all_r.insert(all_r.end(), t.dr.back().data(), t.dr.back().data() + t.dr.back().size());
    all_l.insert(all_l.end(), t.dl.back().data(), t.dl.back().data() + t.dl.back().size());
  }
  if (!all_r.empty()) {
    t.max_r = *std::max_element(all_r.begin(), all_r.end());
    t.max_l = *std::max_element(all_l.begin(), all_l.end());
    t.median_r = median(all_r);
    t.median_l = median(all_l);
  }
  return t;
}

// ---- CSV ----

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17e", v);
  return buf;
}

void matrix_header(std::vector<std::string>& h, const std::string& prefix, const char* q, int n) {
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) h.push_back(prefix + q + "_" + std::to_string(i) + "_" + std::to_string(j));
  }
}

// Column layout shared by emit and parse.
struct Layout {
  std::vector<std::string> names;
  int n = 0, nr = 0;
  bool seq = false;
  bool ref = false;
};

void evaluation_header(std::vector<std::string>& h, const std::string& p, int n, int nr, bool seq) {
  matrix_header(h, p, "R", n);
  matrix_header(h, p, "L", n);
  if (nr) {
    matrix_header(h, p, "Rred", nr);
    matrix_header(h, p, "Lred", nr);
  }
  if (seq) {
    for (const char* s : {"R0", "L0", "R1", "L1"}) h.push_back(p + s);
  }
}

int evaluation_width(int n, int nr, bool seq) { return 2 * n * n + 2 * nr * nr + (seq ? 4 : 0); }

Layout layout(SweepMode mode, int n, int nr, bool seq) {
  Layout l{{"f_hz"}, n, nr, seq, mode == SweepMode::both};
  evaluation_header(l.names, "", n, nr, seq);
  if (l.ref) {
    evaluation_header(l.names, "cc_", n, nr, seq);
    matrix_header(l.names, "dev_", "R", n);
    matrix_header(l.names, "dev_", "L", n);
  }
  l.names.push_back("status");
  return l;
}

void put_matrix(std::vector<std::string>& row, const RMatrix* m, int n) {
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) row.push_back(num(m ? (*m)(i, j) : NAN));
  }
}

void put_evaluation(std::vector<std::string>& row, const std::optional<Evaluation>& e, const Layout& l) {
  put_matrix(row, e ? &e->full.r : nullptr, l.n);
  put_matrix(row, e ? &e->full.l : nullptr, l.n);
  if (l.nr) {
    put_matrix(row, e && e->reduced ? &e->reduced->r : nullptr, l.nr);
    put_matrix(row, e && e->reduced ? &e->reduced->l : nullptr, l.nr);
  }
  if (l.seq) {
    const SequenceRL* s = e && e->sequence ? &*e->sequence : nullptr;
    for (double v : {s ? s->r0 : NAN, s ? s->l0 : NAN, s ? s->r1 : NAN, s ? s->l1 : NAN}) row.push_back(num(v));
  }
}

std::string sanitize(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return s;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_num(const std::string& s) {
  if (s == "nan") return NAN;
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad number '" + s + "'");
  return v;
}

RMatrix get_matrix(const std::vector<double>& v, std::size_t& at, int n) {
  RMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = v[at++];
  }
  return m;
}

std::optional<Evaluation> get_evaluation(const std::vector<double>& v, std::size_t& at, const Layout& l) {
  const std::size_t start = at;
  at += evaluation_width(l.n, l.nr, l.seq);
  if (std::isnan(v[start])) return std::nullopt;
  std::size_t k = start;
  Evaluation e;
  e.full.r = get_matrix(v, k, l.n);
  e.full.l = get_matrix(v, k, l.n);
  if (l.nr) {
    RL red{get_matrix(v, k, l.nr), get_matrix(v, k, l.nr)};
    if (!std::isnan(red.r(0, 0))) e.reduced = red;
  }
  if (l.seq && !std::isnan(v[k])) e.sequence = SequenceRL{v[k], v[k + 1], v[k + 2], v[k + 3]};
  return e;
}

int square_side(int count) {
  const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(count))));
  if (n * n != count) throw std::invalid_argument("matrix columns do not form a square");
  return n;
}

}  // namespace

std::string emit_csv(const SweepReport& report) {
  const Layout l = layout(report.mode, report.size, report.reduced_size, report.sequence);
  std::ostringstream os;
  for (std::size_t i = 0; i < l.names.size(); ++i) os << (i ? "," : "") << l.names[i];
  os << "\n";
  for (const auto& rec : report.records) {
    std::vector<std::string> row{num(rec.f_hz)};
    put_evaluation(row, rec.primary, l);
    if (l.ref) {
      put_evaluation(row, rec.reference, l);
      const bool both = rec.primary && rec.reference;
      RMatrix dr, dl;
      if (both) {
        dr = deviation(rec.primary->full.r, rec.reference->full.r);
        dl = deviation(rec.primary->full.l, rec.reference->full.l);
      }
      put_matrix(row, both ? &dr : nullptr, l.n);
      put_matrix(row, both ? &dl : nullptr, l.n);
    }
    row.push_back(sanitize(rec.status));
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "\n";
  }
  return os.str();
}

SweepReport parse_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("empty CSV");
  const auto header = split(line, ',');
  if (header.size() < 4 || header.front() != "f_hz" || header.back() != "status") {
    throw std::invalid_argument("unrecognised CSV header");
  }
  auto count = [&](const std::string& prefix) {
    return static_cast<int>(std::count_if(header.begin(), header.end(),
                                          [&](const std::string& h) { return h.rfind(prefix, 0) == 0; }));
  };
  SweepReport rep;
  rep.mode = count("cc_") ? SweepMode::both : SweepMode::momso;
  rep.size = square_side(count("R_"));
  rep.reduced_size = count("Rred_") ? square_side(count("Rred_")) : 0;
  rep.sequence = count("R0") > 0;
  const Layout l = layout(rep.mode, rep.size, rep.reduced_size, rep.sequence);
  if (l.names != header) throw std::invalid_argument("CSV header does not match any known layout");

  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != header.size()) throw std::invalid_argument("CSV row has wrong number of fields");
    std::vector<double> v;
    for (std::size_t i = 0; i + 1 < cells.size(); ++i) v.push_back(parse_num(cells[i]));
    FrequencyRecord rec;
    rec.f_hz = v[0];
    rec.status = cells.back();
    std::size_t at = 1;
    rec.primary = get_evaluation(v, at, l);
    if (l.ref) rec.reference = get_evaluation(v, at, l);
    rep.records.push_back(std::move(rec));
  }
  return rep;
}

bool same_tabulation(const SweepReport& a, const SweepReport& b) {
  // Analytic-only and MoM-SO-only runs share one layout.
  const auto tab = [](SweepMode m) { return m == SweepMode::both; };
  if (tab(a.mode) != tab(b.mode) || a.size != b.size || a.reduced_size != b.reduced_size ||
      a.sequence != b.sequence || a.records.size() != b.records.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const auto& x = a.records[i];
    const auto& y = b.records[i];
    if (x.f_hz != y.f_hz || sanitize(x.status) != sanitize(y.status) || x.primary != y.primary ||
        x.reference != y.reference) {
      return false;
    }
  }
  return true;
}

}  // namespace momso
