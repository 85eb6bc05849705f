#ifndef WBSHIFT_MLY_CERT_HPP
#define WBSHIFT_MLY_CERT_HPP

// Mean Li-Yorke certificates: Cesaro distance averages and seminorm-average witnesses.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wbshift/dc_cert.hpp"
#include "wbshift/numerics.hpp"
#include "wbshift/positions.hpp"
#include "wbshift/report.hpp"
#include "wbshift/shift.hpp"

namespace wbshift {

struct CesaroSeries {
  Index anchor = 0;
  std::vector<double> terms;     // terms[n-1] = d(B^n e_anchor, 0)
  std::vector<double> averages;  // averages[n-1] = (1/n) sum_{k<=n} terms[k-1]

  Index horizon() const { return Index(terms.size()); }

  /// (min, argmin) of the prefix averages over n in [from, horizon].
  std::pair<double, Index> running_min(Index from = 1) const {
    if (from < 1 || from > horizon()) throw std::invalid_argument("running_min: start outside the series");
    double best = averages[std::size_t(from - 1)];
    Index arg = from;
    for (Index n = from + 1; n <= horizon(); ++n)
      if (averages[std::size_t(n - 1)] < best) best = averages[std::size_t(n - 1)], arg = n;
    return {best, arg};
  }
};

inline CesaroSeries cesaro_distance_series(const ShiftOperator& B, Index j, Index N) {
  if (N < 1) throw std::invalid_argument("cesaro_distance_series: N must be >= 1");
  CesaroSeries s;
  s.anchor = j;
  s.terms.resize(std::size_t(N));
  s.averages.resize(std::size_t(N));
  ProductTable table(B.weights, j, N);
  MatrixCursor<Index> rows(B.space.matrix);
  const bool fell_off = B.unilateral();
  double sum = 0.0;
  for (Index n = 1; n <= N; ++n) {
    double d = 0.0;
    const LogScalar prod = table[n];
    if (!prod.is_zero() && !(fell_off && j - n < 1)) {
      d = metric_from_seminorms(B.space.metric_depth, [&](int m) { return prod * rows.entry(j - n, m); }).value;
    }
    s.terms[std::size_t(n - 1)] = d;
    sum += d;
    s.averages[std::size_t(n - 1)] = sum / double(n);
  }
  return s;
}

/// Rows n = 1..10 and then n = 1, 2, 5 times powers of ten, plus the horizon.
inline std::vector<Index> sampled_rows(Index N) {
  std::vector<Index> out;
  for (Index n = 1; n <= std::min<Index>(N, 10); ++n) out.push_back(n);
  for (Index scale = 10; scale <= N; scale *= 10)
    for (Index f : {2, 5, 10})
      if (scale * f <= N) out.push_back(scale * f);
  if (out.back() != N) out.push_back(N);
  return out;
}

inline CertificateReport check_cesaro_condition_A(const ShiftOperator& B, Index j, Index N, double tol = 1e-3,
                                                  Index from = 1) {
  CertificateReport r;
  r.check = "cesaro";
  r.statement = "min over n in [from, N] of (1/n) sum_{k<=n} d(B^k e_j, 0) < tol";
  r.param("anchor", j);
  r.param("horizon", N);
  r.param("tol", tol);
  r.param("from", from);
  const CesaroSeries s = cesaro_distance_series(B, j, N);
  const auto [lo, arg] = s.running_min(from);
  double max_partial = 0.0;  // max_n n * avg(n)
  for (Index n = 1; n <= N; ++n) max_partial = std::max(max_partial, s.averages[std::size_t(n - 1)] * double(n));
  r.set("running_min", lo);
  r.set("argmin", arg);
  r.set("final_average", s.averages.back());
  r.set("max_partial_sum", max_partial);
  r.set("average_le_2_over_N", max_partial <= 2.0);
  r.table.columns = {"n", "term", "prefix_average"};
  for (Index n : sampled_rows(N))
    r.table.add({n, s.terms[std::size_t(n - 1)], s.averages[std::size_t(n - 1)]});
  if (lo < tol) {
    r.verdict = Verdict::certified;
  } else {
    r.fail("condition A");
    r.notes.push_back("running minimum " + std::to_string(lo) + " stays above tol");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Condition (B): averaged seminorm ratios.

struct WitnessScheduleMLY {
  int m = 1;
  std::vector<WitnessEntry> entries;
  double target_scale = 1.0;  // pass iff average >= target_scale * k
  bool check_A = true;
  Index A_anchor = 0;
  Index A_horizon = 100000;
  double A_tol = 1e-3;
};

/// sum_{n=1}^{H} ||B^n e_anchor||_m, one closed-form geometric sum per segment.
template <Position P>
LogScalar orbit_sum_single(const ShiftOperator& B, const P& anchor, const P& horizon, int m) {
  LogScalar total;
  walk_orbit_segments<P>(B, anchor, horizon, [&](const OrbitSegment<P>& seg) {
    if (seg.annihilated) return false;
    const double first = seg.term_log(P(0), m);
    if (first != kNegInf) total += LogScalar::from_log(1, log_geometric_sum(first, seg.slope(), to_double(seg.length)));
    return true;
  });
  return total;
}

/// sum_{n=1}^{H} ||B^n x||_m for a general finitely supported x.
inline LogScalar orbit_sum(const ShiftOperator& B, const SparseVector& x, Index H, int m) {
  if (x.size() == 1) {
    const auto& [i, v] = *x.begin();
    return orbit_sum_single<Index>(B, i, H, m) * v.abs();
  }
  LogScalar total;
  for (const LogScalar& v : orbit_seminorm_series(B, x, m, H)) total += v;
  return total;
}

inline CertificateReport check_mly_condition_B(const ShiftOperator& B, const WitnessScheduleMLY& sched) {
  validate_schedule(B, sched.m, sched.entries);
  if (!(sched.target_scale > 0)) throw std::invalid_argument("mly: target_scale must be positive");
  CertificateReport r;
  r.check = "mly";
  r.statement = "(1/(N_k ||sum b e||_p(k))) sum_{i<=N_k} ||sum b P(j,i) e_{j-i}||_m >= target_scale k for every supplied k";
  r.param("m", Index(sched.m));
  r.param("target_scale", sched.target_scale);
  r.param("space", B.space.label);
  r.table.columns = {"k", "N_k", "average", "target", "pass"};

  Verdict a_verdict = Verdict::certified;
  if (sched.check_A) {
    const CertificateReport a = check_cesaro_condition_A(B, sched.A_anchor, sched.A_horizon, sched.A_tol);
    a_verdict = a.verdict;
    r.set("condition_A", std::string(to_string(a.verdict)));
    r.set("condition_A_running_min", a.get<double>("running_min"));
  }

  bool all = true;
  for (const auto& e : sched.entries) {
    const int pk = p_of_k(sched.m, e.k);
    const SparseVector x = witness_vector(e.terms);
    const LogScalar den = seminorm(B.space, x, pk);
    const double target = sched.target_scale * double(e.k);
    if (den.is_zero()) {
      r.table.add({e.k, e.horizon, LogScalar::zero(), target, false});
      if (all) r.fail("zero denominator", e.k);
      all = false;
      continue;
    }
    const LogScalar avg = orbit_sum(B, x, e.horizon, sched.m) / (den * LogScalar::from_real(double(e.horizon)));
    const bool pass = log_greater_equal(avg.is_zero() ? kNegInf : avg.logmag(), std::log(target));
    r.table.add({e.k, e.horizon, avg, target, pass});
    if (!pass && all) r.fail("condition B", e.k);
    all = all && pass;
  }
  if (all) {
    r.verdict = a_verdict == Verdict::certified ? Verdict::certified : Verdict::failed;
    if (a_verdict != Verdict::certified) r.failed_condition = "condition A";
  }
  return r;
}

/// Koethe forms: max over terms (p = 0) or (sum of p-th powers)^(1/p), from matrix entries.
inline CertificateReport check_kothe_mly(const ShiftOperator& B, const WitnessScheduleMLY& sched, double variant = -1) {
  validate_schedule(B, sched.m, sched.entries);
  const double p = variant < 0 ? B.space.p : variant;
  SpaceSpec::validate_p(p);
  CertificateReport r;
  r.check = "kothe_mly";
  r.statement = p == 0.0 ? "(1/(N_k max|a_{j,p(k)} b|)) sum_i max_j |a_{j-i,m} b P(j,i)| >= target_scale k"
                         : "(1/(N_k (sum|a_{j,p(k)} b|^p)^(1/p))) sum_i (sum_j |a_{j-i,m} b P(j,i)|^p)^(1/p) >= target_scale k";
  r.param("m", Index(sched.m));
  r.param("variant_p", p);
  r.param("target_scale", sched.target_scale);
  r.table.columns = {"k", "N_k", "average", "target", "pass"};

  Verdict a_verdict = Verdict::certified;
  if (sched.check_A) {
    a_verdict = check_cesaro_condition_A(B, sched.A_anchor, sched.A_horizon, sched.A_tol).verdict;
    r.set("condition_A", std::string(to_string(a_verdict)));
  }

  bool all = true;
  for (const auto& e : sched.entries) {
    const int pk = p_of_k(sched.m, e.k);
    std::vector<LogScalar> den_parts;
    std::vector<ProductTable> tables;
    std::vector<MatrixCursor<Index>> rows;
    for (const auto& t : e.terms) {
      den_parts.push_back(B.space.basis_seminorm(t.index, pk) * t.coef);
      tables.emplace_back(B.weights, t.index, e.horizon);
      rows.emplace_back(B.space.matrix);
    }
    const LogScalar den = lognorm(den_parts, p);
    const double target = sched.target_scale * double(e.k);
    if (den.is_zero()) {
      r.table.add({e.k, e.horizon, LogScalar::zero(), target, false});
      if (all) r.fail("zero denominator", e.k);
      all = false;
      continue;
    }
    LogScalar sum;
    std::vector<LogScalar> parts(e.terms.size());
    for (Index i = 1; i <= e.horizon; ++i) {
      for (std::size_t t = 0; t < e.terms.size(); ++t) {
        const Index j = e.terms[t].index - i;
        const LogScalar prod = tables[t][i];
        parts[t] = prod.is_zero() || (B.unilateral() && j < 1) ? LogScalar::zero()
                                                               : rows[t].entry(j, sched.m) * e.terms[t].coef * prod;
      }
      sum += lognorm(parts, p);
    }
    const LogScalar avg = sum / (den * LogScalar::from_real(double(e.horizon)));
    const bool pass = log_greater_equal(avg.is_zero() ? kNegInf : avg.logmag(), std::log(target));
    r.table.add({e.k, e.horizon, avg, target, pass});
    if (!pass && all) r.fail("condition B", e.k);
    all = all && pass;
  }
  if (all) {
    r.verdict = a_verdict == Verdict::certified ? Verdict::certified : Verdict::failed;
    if (a_verdict != Verdict::certified) r.failed_condition = "condition A";
  }
  return r;
}

// ---------------------------------------------------------------------------
// Absolute Cesaro boundedness.

struct AcbProbe {
  std::string label;
  std::vector<std::pair<BigIndex, LogScalar>> terms;
  std::vector<BigIndex> horizons;
};

/// Canonical probe e_j at horizon N.
inline AcbProbe basis_probe(BigIndex j, BigIndex N) {
  return {"e_" + to_string(j), {{j, LogScalar::one()}}, {N}};
}

/// (1/N) sum_{n<=N} ||B^n y|| / ||y||.
inline LogScalar cesaro_norm_ratio(const ShiftOperator& B, const AcbProbe& y, const BigIndex& N) {
  if (N < 1) throw std::invalid_argument("acb: horizons must be positive");
  if (y.terms.empty()) throw std::invalid_argument("acb: empty probe");
  if (y.terms.size() == 1) {
    const auto& [j, c] = y.terms.front();
    if (c.is_zero()) throw std::invalid_argument("acb: zero probe");
    if (B.unilateral() && j < 1)
      throw std::invalid_argument("acb: probe index outside the index set");
    const LogScalar norm = B.space.basis_seminorm<BigIndex>(j, 1);
    const LogScalar sum = orbit_sum_single<BigIndex>(B, j, N, 1);
    return sum / (norm * LogScalar::from_log(1, log_abs_plus_one<BigIndex>(BigIndex(N - 1))));
  }
  SparseVector x;
  for (const auto& [j, c] : y.terms) x.add_to(narrow_or_throw(j, "multi-term probe index"), c);
  const Index H = narrow_or_throw(N, "multi-term probe horizon");
  const LogScalar norm = seminorm(B.space, x, 1);
  if (norm.is_zero()) throw std::invalid_argument("acb: zero probe");
  return orbit_sum(B, x, H, 1) / (norm * LogScalar::from_real(double(H)));
}

/// certified = a falsifier (y, N) with average > C||y|| exists for every C in the grid.
inline CertificateReport check_acb(const ShiftOperator& B, const std::vector<AcbProbe>& probes,
                                   const std::vector<double>& C_grid) {
  if (!B.space.banach()) throw std::invalid_argument("acb: requires a Banach-described space (nu constant in k)");
  if (probes.empty() || C_grid.empty()) throw std::invalid_argument("acb: empty probe set or C grid");
  CertificateReport r;
  r.check = "acb";
  r.statement = "for every C in the grid some probe y and horizon N give (1/N) sum_{n<=N} ||B^n y|| > C ||y||";
  r.param("probes", Index(probes.size()));
  r.param("space", B.space.label);
  struct Eval {
    std::string label;
    BigIndex N;
    LogScalar ratio;
  };
  std::vector<Eval> evals;
  for (const auto& y : probes)
    for (const auto& N : y.horizons) evals.push_back({y.label, N, cesaro_norm_ratio(B, y, N)});
  LogScalar best;
  for (const auto& e : evals) best = std::max(best, e.ratio);
  r.set("max_average_ratio", best);
  r.table.columns = {"C", "falsified", "probe", "N", "average_ratio"};
  bool all = true;
  for (double C : C_grid) {
    if (!(C > 0)) throw std::invalid_argument("acb: C must be positive");
    const Eval* hit = nullptr;
    for (const auto& e : evals)
      if (log_greater(e.ratio.is_zero() ? kNegInf : e.ratio.logmag(), std::log(C))) {
        hit = &e;
        break;
      }
    if (hit) {
      r.table.add({C, true, hit->label, to_string(hit->N), hit->ratio});
    } else {
      r.table.add({C, false, std::string("-"), std::string("-"), best});
      if (all) r.fail("no falsifier found at horizon");
      all = false;
    }
  }
  if (all) {
    r.verdict = Verdict::certified;
    r.set("conclusion", std::string("not absolutely Cesaro bounded (witnessed)"));
  } else {
    r.set("conclusion", std::string("no falsifier found at horizon"));
  }
  return r;
}

struct F3Options {
  Index horizon = 100000;
  double tol = 1e-3;
  std::vector<AcbProbe> probes;
  std::vector<double> C_grid{1, 10, 100};
};

/// liminf (1/N) sum |w_{-n}...w_{-1}| ||e_{-n}|| / ||e_0|| = 0 together with a witnessed
/// failure of absolute Cesaro boundedness.
inline CertificateReport check_f3(const ShiftOperator& B, const F3Options& opt) {
  if (B.unilateral()) throw std::invalid_argument("f3: requires a bilateral shift");
  if (!B.space.banach()) throw std::invalid_argument("f3: requires a Banach-described space");
  if (opt.horizon < 1) throw std::invalid_argument("f3: horizon must be positive");
  CertificateReport r;
  r.check = "f3";
  r.statement = "min_N (1/N) sum_{n<=N} |w_{-n}...w_{-1}| ||e_{-n}||/||e_0|| < tol and acb falsified for every C";
  r.param("horizon", opt.horizon);
  r.param("tol", opt.tol);
  r.param("space", B.space.label);
  ProductTable table(B.weights, 0, opt.horizon);
  MatrixCursor<Index> rows(B.space.matrix);
  const LogScalar e0 = B.space.basis_seminorm(Index(0), 1);
  LogScalar sum;
  double lo = std::numeric_limits<double>::infinity();
  Index arg = 0;
  bool le_2_over_N = true;
  for (Index n = 1; n <= opt.horizon; ++n) {
    sum += table[n].abs() * rows.entry(-n, 1) / e0;
    const LogScalar avg = sum / LogScalar::from_real(double(n));
    const double a = avg.to_real();
    if (a < lo) lo = a, arg = n;
    if (log_greater(sum.is_zero() ? kNegInf : sum.logmag(), std::log(2.0))) le_2_over_N = false;
  }
  const bool liminf_ok = lo < opt.tol;
  r.set("product_running_min", lo);
  r.set("argmin", arg);
  r.set("average_le_2_over_N", le_2_over_N);
  r.set("liminf_condition", liminf_ok);
  const CertificateReport acb = check_acb(B, opt.probes, opt.C_grid);
  r.set("acb", std::string(to_string(acb.verdict)));
  r.set("acb_falsified", acb.certified());
  r.table = acb.table;
  if (liminf_ok && acb.certified()) {
    r.verdict = Verdict::certified;
  } else if (!liminf_ok) {
    r.fail("liminf condition");
  } else {
    r.fail("absolute Cesaro boundedness not falsified");
  }
  return r;
}

/// Condition (A) at one anchor holds iff it holds at all anchors; probes the finite version.
inline CertificateReport anchor_equivalence_probe(const ShiftOperator& B, const std::vector<Index>& anchors, Index N,
                                                  double tol = 1e-3, Index from = 1) {
  if (anchors.empty()) throw std::invalid_argument("anchor_equivalence: no anchors");
  CertificateReport r;
  r.check = "anchor_equivalence";
  r.statement = "the Cesaro running minima at all anchors are either all below tol or all at or above it";
  r.param("horizon", N);
  r.param("tol", tol);
  r.param("from", from);
  r.table.columns = {"anchor", "running_min", "argmin", "below_tol"};
  Index below = 0;
  for (Index j : anchors) {
    const auto [lo, arg] = cesaro_distance_series(B, j, N).running_min(from);
    r.table.add({j, lo, arg, lo < tol});
    below += lo < tol ? 1 : 0;
  }
  r.set("anchors_below_tol", below);
  r.set("all_below_tol", below == Index(anchors.size()));
  if (below == 0 || below == Index(anchors.size())) {
    r.verdict = Verdict::certified;
  } else {
    r.verdict = Verdict::inconclusive;
    r.failed_condition = "discordant anchors (finite-horizon artifact)";
  }
  return r;
}

}  // namespace wbshift

#endif  // WBSHIFT_MLY_CERT_HPP
