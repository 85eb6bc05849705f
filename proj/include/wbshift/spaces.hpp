#ifndef WBSHIFT_SPACES_HPP
#define WBSHIFT_SPACES_HPP

#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "wbshift/numerics.hpp"
#include "wbshift/positions.hpp"
#include "wbshift/report.hpp"
#include "wbshift/sequence.hpp"
#include "wbshift/weights.hpp"

namespace wbshift {

/// Generator for a nonnegative matrix a(j, k), j in Z, k >= 1.
///
/// constant_in_k: a(j,k) = nu_j.  power_in_k: a(j,k) = nu_j^k.  custom: f(j,k).
struct KotheMatrix {
  enum class Mode { constant_in_k, power_in_k, custom };

  Mode mode = Mode::constant_in_k;
  Sequence nu = Sequence::constant(1.0);
  std::function<LogScalar(Index, int)> custom;
  std::string label = "ones";

  static KotheMatrix ones() { return {}; }
  static KotheMatrix constant_in_k(Sequence nu, std::string label = "nu") {
    return {Mode::constant_in_k, std::move(nu), {}, std::move(label)};
  }
  static KotheMatrix power_in_k(Sequence nu, std::string label = "nu^k") {
    return {Mode::power_in_k, std::move(nu), {}, std::move(label)};
  }
  static KotheMatrix rapidly_decreasing() {
    return power_in_k({AbsPlusOneForm{}, AbsPlusOneForm{}, 0}, "(|j|+1)^k");
  }
  static KotheMatrix from_function(std::function<LogScalar(Index, int)> f, std::string label) {
    return {Mode::custom, Sequence::constant(1.0), std::move(f), std::move(label)};
  }

  LogScalar from_nu(LogScalar v, int k) const {
    if (mode == Mode::constant_in_k) return v.abs();
    return v.is_zero() ? v : v.abs_pow(k);
  }

  template <Position P>
  LogScalar entry(const P& j, int k) const {
    if (k < 1) throw std::invalid_argument("seminorm index must be >= 1");
    if (mode == Mode::custom) return custom(to_index(j, "custom matrix row"), k);
    return from_nu(nu.run_at<P>(j).value, k);
  }

  LogScalar entry(Index j, int k) const { return entry<Index>(j, k); }

  /// True when the rows are constant in j on each run of nu.
  bool run_structured() const { return mode != Mode::custom; }

  /// Nonzero matrix entries are all 1 on the constant-one sequence.
  bool is_unit() const {
    if (mode != Mode::constant_in_k) return false;
    auto unit = [](const SideForm& f) {
      const auto* c = std::get_if<ConstantForm>(&f);
      return c && c->value == LogScalar::one();
    };
    return unit(nu.negative) && unit(nu.nonnegative);
  }
};

/// Row lookups for a matrix, reusing runs of nu between consecutive queries.
template <Position P>
class MatrixCursor {
 public:
  explicit MatrixCursor(const KotheMatrix& a) : a_(&a), nu_(a.nu) {}

  /// Interval of rows around j identical to row j (a single row for custom matrices).
  RunInfo<P> row_run(const P& j) {
    if (a_->mode == KotheMatrix::Mode::custom) return {LogScalar::one(), j, j};
    return nu_.at(j);
  }

  LogScalar entry(const P& j, int k) {
    if (a_->mode == KotheMatrix::Mode::custom) return a_->entry<P>(j, k);
    return a_->from_nu(nu_.at(j).value, k);
  }

 private:
  const KotheMatrix* a_;
  RunCursor<P> nu_;
};

/// lambda_p(A, J); p = 0 is the sup-norm case.
struct SpaceSpec {
  double p = 2.0;
  KotheMatrix matrix;
  IndexSet J = IndexSet::Z;
  int metric_depth = 40;
  std::string label = "space";

  static void validate_p(double p) {
    if (!(p == 0.0 || p >= 1.0)) throw std::invalid_argument("p must be 0 or >= 1");
  }

  static SpaceSpec kothe(double p, KotheMatrix a, IndexSet J, std::string label = "kothe") {
    validate_p(p);
    return {p, std::move(a), J, 40, std::move(label)};
  }
  static SpaceSpec lp(double p, IndexSet J) {
    return kothe(p, KotheMatrix::ones(), J, (p == 0.0 ? "c0(" : "l^" + format_p(p) + "(") + to_string(J) + ")");
  }
  static SpaceSpec weighted_lp(double p, Sequence nu, IndexSet J) {
    return kothe(p, KotheMatrix::constant_in_k(std::move(nu)), J,
                 (p == 0.0 ? "c0(nu," : "l^" + format_p(p) + "(nu,") + to_string(J) + ")");
  }
  static SpaceSpec rapidly_decreasing(IndexSet J) {
    return kothe(1.0, KotheMatrix::rapidly_decreasing(), J, std::string("s(") + to_string(J) + ")");
  }

  static std::string format_p(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", p);
    return buf;
  }

  bool in_J(Index j) const { return J == IndexSet::Z || j >= 1; }

  /// ||e_j||_k.
  template <Position P>
  LogScalar basis_seminorm(const P& j, int k) const {
    if (J == IndexSet::N && j < P(1)) return LogScalar::zero();
    return matrix.entry<P>(j, k);
  }
  LogScalar basis_seminorm(Index j, int k) const { return basis_seminorm<Index>(j, k); }

  bool banach() const { return matrix.mode == KotheMatrix::Mode::constant_in_k; }
};

inline LogScalar seminorm(const SpaceSpec& space, const SparseVector& x, int k) {
  std::vector<LogScalar> terms;
  terms.reserve(x.size());
  for (const auto& [j, v] : x) {
    if (!space.in_J(j)) throw std::invalid_argument("vector has an entry outside the index set");
    terms.push_back(space.matrix.entry(j, k) * v);
  }
  return lognorm(terms, space.p);
}

struct MetricValue {
  double value = 0.0;
  double tail_bound = 0.0;
};

/// d(x, 0) truncated at K_max, given the seminorms as a function of k.
template <class SeminormOf>
MetricValue metric_from_seminorms(int depth, SeminormOf&& seminorm_of) {
  MetricValue out{0.0, std::ldexp(1.0, -depth)};
  for (int k = 1; k <= depth; ++k) {
    const LogScalar s = seminorm_of(k);
    const double term = s.is_zero() ? 0.0 : (s.logmag() >= 0.0 ? 1.0 : std::exp(s.logmag()));
    out.value += std::ldexp(term, -k);
  }
  return out;
}

inline MetricValue metric(const SpaceSpec& space, const SparseVector& x, const SparseVector& y) {
  const SparseVector diff = x - y;
  return metric_from_seminorms(space.metric_depth, [&](int k) { return seminorm(space, diff, k); });
}

/// d(c e_j, 0).
inline MetricValue basis_distance(const SpaceSpec& space, Index j, LogScalar c) {
  return metric_from_seminorms(space.metric_depth, [&](int k) { return space.basis_seminorm(j, k) * c; });
}

struct ProbeWindow {
  Index lo = -10000;
  Index hi = 10000;
};

inline CertificateReport continuity_check(const SpaceSpec& space, const WeightSpec& w, ProbeWindow window, int K,
                                          double cap = 1e8) {
  CertificateReport r;
  r.check = "continuity";
  r.statement = "for each k<=K some m<=K bounds a(j,k)|w_j|/a(j+1,m) on the window with the support condition";
  r.param("space", space.label);
  r.param("window_lo", window.lo);
  r.param("window_hi", window.hi);
  r.param("K", Index(K));
  r.param("cap", cap);
  r.table.columns = {"k", "witnessed", "m", "sup"};
  if (space.J == IndexSet::N) window.lo = std::max<Index>(window.lo, 1);
  if (window.hi < window.lo || K < 1) throw std::invalid_argument("continuity_check: empty probe");

  const std::size_t rows = static_cast<std::size_t>(window.hi - window.lo + 2);
  // entries[row][k-1] for rows lo .. hi+1
  std::vector<std::vector<LogScalar>> entries(rows, std::vector<LogScalar>(static_cast<std::size_t>(K)));
  MatrixCursor<Index> cursor(space.matrix);
  for (std::size_t r0 = 0; r0 < rows; ++r0)
    for (int k = 1; k <= K; ++k) entries[r0][static_cast<std::size_t>(k - 1)] = cursor.entry(window.lo + Index(r0), k);
  std::vector<LogScalar> weights(rows - 1);
  WeightCursor<Index> wc(w);
  for (std::size_t r0 = 0; r0 + 1 < rows; ++r0) weights[r0] = wc.at(window.lo + Index(r0)).value.abs();

  const double log_cap = std::log(cap);
  bool all = true;
  for (int k = 1; k <= K; ++k) {
    std::optional<int> found;
    LogScalar found_sup;
    for (int m = k; m <= K && !found; ++m) {
      bool support_ok = true;
      LogScalar sup;
      for (std::size_t r0 = 0; r0 + 1 < rows && support_ok; ++r0) {
        const LogScalar num = entries[r0][std::size_t(k - 1)] * weights[r0];
        const LogScalar den = entries[r0 + 1][std::size_t(m - 1)];
        if (den.is_zero()) {
          if (!entries[r0][std::size_t(k - 1)].is_zero()) support_ok = false;
          continue;
        }
        sup = std::max(sup, num / den);
      }
      if (support_ok && (sup.is_zero() || sup.logmag() < log_cap)) {
        found = m;
        found_sup = sup;
      }
    }
    r.table.add({Index(k), found.has_value(), Index(found.value_or(0)), found_sup});
    all = all && found.has_value();
    if (!found && !r.failed_k) r.failed_k = k;
  }
  r.verdict = all ? Verdict::certified : Verdict::failed;
  if (!all) r.failed_condition = "not-witnessed-at-depth-K";
  r.set("witnessed_all", all);
  return r;
}

inline CertificateReport condition_C_check(const SpaceSpec& space, const std::vector<SparseVector>& samples, int K) {
  CertificateReport r;
  r.check = "condition_C";
  r.statement = "|x_m| ||e_m||_n <= ||x||_n (1 + 1e-12) for all samples, m in support, n <= K";
  r.param("space", space.label);
  r.param("samples", Index(samples.size()));
  r.param("K", Index(K));
  const double slack = std::log1p(1e-12);
  Index checked = 0;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    for (int n = 1; n <= K; ++n) {
      const LogScalar norm = seminorm(space, samples[s], n);
      for (const auto& [m, v] : samples[s]) {
        ++checked;
        const LogScalar lhs = v.abs() * space.basis_seminorm(m, n);
        if (!lhs.is_zero() && (norm.is_zero() || lhs.logmag() > norm.logmag() + slack)) {
          r.fail("coordinate bound", n);
          r.notes.push_back("sample " + std::to_string(s) + ", m = " + std::to_string(m));
          r.set("checked", checked);
          return r;
        }
      }
    }
  }
  r.verdict = Verdict::certified;
  r.set("checked", checked);
  return r;
}

/// Sampled Koethe-matrix axioms: monotone in k and some positive entry per row.
inline CertificateReport matrix_invariant_check(const KotheMatrix& a, IndexSet J, ProbeWindow window, int K,
                                                std::size_t samples, std::uint64_t seed) {
  CertificateReport r;
  r.check = "matrix_invariants";
  r.param("matrix", a.label);
  r.param("K", Index(K));
  r.param("seed", Index(seed));
  if (J == IndexSet::N) window.lo = std::max<Index>(window.lo, 1);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Index> pick(window.lo, window.hi);
  for (std::size_t s = 0; s < samples; ++s) {
    const Index j = pick(rng);
    bool positive = false;
    LogScalar prev = a.entry(j, 1);
    if (prev.sign() < 0) {
      r.fail("nonnegativity");
      return r;
    }
    positive = !prev.is_zero();
    for (int k = 2; k <= K; ++k) {
      const LogScalar cur = a.entry(j, k);
      if (cur < prev) {
        r.fail("monotone in k", k);
        r.notes.push_back("row " + std::to_string(j));
        return r;
      }
      positive = positive || !cur.is_zero();
      prev = cur;
    }
    if (!positive) {
      r.fail("positive entry per row");
      r.notes.push_back("row " + std::to_string(j));
      return r;
    }
  }
  r.verdict = Verdict::certified;
  return r;
}

}  // namespace wbshift

#endif  // WBSHIFT_SPACES_HPP
