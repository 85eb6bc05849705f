#ifndef WBSHIFT_DC_CERT_HPP
#define WBSHIFT_DC_CERT_HPP

// Distributional-chaos certificates for weighted backward shifts at finite horizons.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "wbshift/density.hpp"
#include "wbshift/numerics.hpp"
#include "wbshift/report.hpp"
#include "wbshift/shift.hpp"

namespace wbshift {

struct WitnessTerm {
  Index index;
  LogScalar coef = LogScalar::one();
};

struct WitnessEntry {
  Index k;
  Index horizon;  // N_k
  std::vector<WitnessTerm> terms;
};

struct ConditionAOptions {
  Index horizon = 0;  // 0: 2 max|anchor| + 1000
  double decay_tol = 1e-6;
  int K = 6;
};

struct WitnessScheduleDC {
  int m = 1;
  std::vector<WitnessEntry> entries;
  IndexPredicate D = IndexPredicate::all();
  std::vector<Index> anchors;  // probe subset of I; empty: every witness index
  ConditionAOptions A;
  bool check_A = true;
};

inline int p_of_k(int m, Index k) { return k <= m ? m : static_cast<int>(k); }

inline SparseVector witness_vector(const std::vector<WitnessTerm>& terms) {
  SparseVector v;
  for (const auto& t : terms) v.add_to(t.index, t.coef);
  return v;
}

/// Throws std::invalid_argument when the schedule is malformed.
inline void validate_schedule(const ShiftOperator& B, int m, const std::vector<WitnessEntry>& entries) {
  if (m < 1) throw std::invalid_argument("schedule: m must be >= 1");
  if (entries.empty()) throw std::invalid_argument("schedule: no entries");
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const auto& en = entries[e];
    if (en.k < 1) throw std::invalid_argument("schedule: k must be >= 1");
    if (en.horizon < 1) throw std::invalid_argument("schedule: horizons must be positive");
    if (e > 0 && en.horizon <= entries[e - 1].horizon)
      throw std::invalid_argument("schedule: horizons N_k must be strictly increasing");
    if (e > 0 && en.k <= entries[e - 1].k) throw std::invalid_argument("schedule: k must be strictly increasing");
    if (en.terms.empty()) throw std::invalid_argument("schedule: entry without terms");
    std::set<Index> seen;
    for (const auto& t : en.terms) {
      if (t.coef.is_zero()) throw std::invalid_argument("schedule: zero coefficient");
      if (!B.space.in_J(t.index)) throw std::invalid_argument("schedule: index outside the index set");
      if (!seen.insert(t.index).second) throw std::invalid_argument("schedule: repeated index in one entry");
    }
  }
}

inline std::vector<Index> schedule_anchors(const WitnessScheduleDC& s) {
  if (!s.anchors.empty()) return s.anchors;
  std::set<Index> all;
  for (const auto& e : s.entries)
    for (const auto& t : e.terms) all.insert(t.index);
  return {all.begin(), all.end()};
}

inline Index default_horizon_A(const std::vector<Index>& anchors, Index requested) {
  if (requested > 0) return requested;
  Index big = 0;
  for (Index i : anchors) big = std::max(big, i < 0 ? -i : i);
  return 2 * big + 1000;
}

// ---------------------------------------------------------------------------
// Condition (A): P(i,n) e_{i-n} -> 0 along D.

/// Last n in D cap [1, H] with ||P(i,n) e_{i-n}||_k >= tol, or 0 if none.
inline Index last_violation(const ShiftOperator& B, const IndexPredicate& D, Index i, Index H, int k, double tol) {
  const double log_tol = std::log(tol);
  Index last = 0;
  if (D.full) {
    walk_orbit_segments<Index>(B, i, H, [&](const OrbitSegment<Index>& seg) {
      auto at = last_true_monotone<Index>(seg.length, [&](Index t) {
        return log_greater_equal(seg.term_log(t, k), log_tol);
      });
      if (at) last = seg.first_n + *at;
      return true;
    });
    return last;
  }
  ProductTable table(B.weights, i, H);
  MatrixCursor<Index> rows(B.space.matrix);
  for (Index n = 1; n <= H; ++n) {
    if (!D.member(n) || table[n].is_zero()) continue;
    const LogScalar a = rows.entry(i - n, k);
    if (a.is_zero()) continue;
    if (log_greater_equal(table[n].logmag() + a.logmag(), log_tol)) last = n;
  }
  return last;
}

/// Violations must stop by H/2 for the decay to count as settled.
inline CertificateReport check_dc_condition_A(const ShiftOperator& B, const IndexPredicate& D,
                                              const std::vector<Index>& anchors, ConditionAOptions opt) {
  CertificateReport r;
  r.check = "dc_condition_A";
  r.statement = "||P(i,n) e_{i-n}||_k < tol for all n in D beyond a settled onset, every probed i and k <= K";
  const Index H = default_horizon_A(anchors, opt.horizon);
  r.param("D", D.label);
  r.param("horizon", H);
  r.param("decay_tol", opt.decay_tol);
  r.param("K", Index(opt.K));
  r.table.columns = {"i", "k", "last_violation", "settled"};
  if (anchors.empty()) throw std::invalid_argument("condition A: no anchors");
  const Index inD = D.count(H);
  r.set("D_count_at_horizon", inD);
  r.set("D_prefix_ratio", double(inD) / double(H));
  if (inD == 0) {
    r.verdict = Verdict::inconclusive;
    r.notes.push_back("D has no elements up to the horizon");
    return r;
  }
  bool ok = true;
  for (Index i : anchors) {
    for (int k = 1; k <= opt.K; ++k) {
      const Index last = last_violation(B, D, i, H, k, opt.decay_tol);
      const bool settled = last <= H / 2;
      r.table.add({i, Index(k), last, settled});
      if (!settled && ok) {
        ok = false;
        r.fail("condition A", k);
        r.notes.push_back("anchor " + std::to_string(i) + " still above tolerance at n = " + std::to_string(last));
      }
    }
  }
  if (ok) r.verdict = Verdict::certified;
  return r;
}

struct RefutationOptions {
  Index anchor = 0;
  double C = 0.5;
  int seminorm = 1;
  Index horizon = 1000000;
  Rational delta{1, 6};
  Index onset_scan = 10000;
};

/// Bad set {n : ||P(i,n) e_{i-n}||_s >= C}; a prefix ratio above delta throughout
/// [N0, H] leaves no density-one D avoiding it.
inline CertificateReport check_dc_condition_A_refutation(const ShiftOperator& B, RefutationOptions opt) {
  CertificateReport r;
  r.check = "dc_condition_A_refutation";
  r.statement = "bad set {n : ||P(i,n)e_{i-n}||_s >= C} has prefix ratio > delta on [N0, H]";
  r.param("anchor", opt.anchor);
  r.param("C", opt.C);
  r.param("seminorm", Index(opt.seminorm));
  r.param("horizon", opt.horizon);
  r.param("delta", opt.delta.str());
  const double log_c = std::log(opt.C);
  std::vector<bool> bad(static_cast<std::size_t>(opt.horizon), false);
  walk_orbit_segments<Index>(B, opt.anchor, opt.horizon, [&](const OrbitSegment<Index>& seg) {
    for (Index t = 0; t < seg.length; ++t)
      bad[std::size_t(seg.first_n + t - 1)] = log_greater_equal(seg.term_log(t, opt.seminorm), log_c);
    return true;
  });
  const IndexPredicate badset = IndexPredicate::from_indicator(std::move(bad), "bad set");
  const auto onset = threshold_onset(badset, opt.delta, std::min(opt.onset_scan, opt.horizon));
  r.set("bad_count", badset.count(opt.horizon));
  if (!onset) {
    r.verdict = Verdict::inconclusive;
    r.notes.push_back("prefix ratio not above delta at the end of the onset scan");
    return r;
  }
  r.set("N0", *onset);
  const DensityEnvelope env = scan_prefix_ratios(badset, *onset, opt.horizon);
  r.set("min_prefix_ratio", env.running_min);
  r.set("argmin", env.argmin);
  if (ratio_exceeds_throughout(badset, opt.delta, *onset, opt.horizon)) {
    r.verdict = Verdict::refuted;
  } else {
    r.verdict = Verdict::inconclusive;
    r.notes.push_back("prefix ratio dips to delta or below after the onset");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Condition (B): counting inequality for a witness schedule.

/// Single term: number of n in [1, N] with log||P(i,n) e_{i-n}||_m > log_bound.
inline Index count_single_term(const ShiftOperator& B, Index i, Index N, int m, double log_bound) {
  Index c = 0;
  walk_orbit_segments<Index>(B, i, N, [&](const OrbitSegment<Index>& seg) {
    if (seg.annihilated) return false;
    c += count_monotone<Index>(seg.length, [&](Index t) { return log_greater(seg.term_log(t, m), log_bound); });
    return true;
  });
  return c;
}

/// Pass flags for n = 1..N of the seminorm-route ratio test.
inline std::vector<bool> ratio_flags_seminorm(const ShiftOperator& B, const std::vector<WitnessTerm>& terms, Index N,
                                              int m, double log_bound) {
  std::vector<ProductTable> tables;
  for (const auto& t : terms) tables.emplace_back(B.weights, t.index, N);
  std::vector<bool> flags(static_cast<std::size_t>(N));
  for (Index n = 1; n <= N; ++n) {
    SparseVector y;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const LogScalar prod = tables[t][n];
      if (!prod.is_zero()) y.add_to(terms[t].index - n, terms[t].coef * prod);
    }
    flags[std::size_t(n - 1)] = log_greater(seminorm(B.space, y, m).logmag(), log_bound);
  }
  return flags;
}

inline bool count_exceeds(Index count, Index N, Index k) {
  return static_cast<__int128>(count) * k > static_cast<__int128>(k - 1) * N;
}

inline CertificateReport check_dc_condition_B(const ShiftOperator& B, const WitnessScheduleDC& sched) {
  validate_schedule(B, sched.m, sched.entries);
  CertificateReport r;
  r.check = "dc";
  r.statement = "card{n <= N_k : ||sum b P e||_m / ||sum b e||_p(k) > k} > (1 - 1/k) N_k for every supplied k";
  r.param("m", Index(sched.m));
  r.param("entries", Index(sched.entries.size()));
  r.param("space", B.space.label);
  r.table.columns = {"k", "N_k", "count", "threshold", "pass"};

  Verdict a_verdict = Verdict::certified;
  if (sched.check_A && !B.unilateral()) {
    const CertificateReport a = check_dc_condition_A(B, sched.D, schedule_anchors(sched), sched.A);
    a_verdict = a.verdict;
    r.set("condition_A", std::string(to_string(a.verdict)));
    r.set("condition_A_horizon", a.get<Index>("horizon"));
  } else {
    r.set("condition_A", std::string(B.unilateral() ? "trivial (unilateral)" : "not checked"));
  }

  bool all = true;
  for (const auto& e : sched.entries) {
    const int pk = p_of_k(sched.m, e.k);
    const LogScalar denom = seminorm(B.space, witness_vector(e.terms), pk);
    if (denom.is_zero()) {
      r.table.add({e.k, e.horizon, Index(0), 0.0, false});
      if (all) r.fail("zero denominator", e.k);
      all = false;
      continue;
    }
    const double log_bound = denom.logmag() + std::log(double(e.k));
    Index count = 0;
    if (e.terms.size() == 1) {
      const auto& t = e.terms.front();
      // ratio is homogeneous in b; compare without it
      const double bound = B.space.basis_seminorm(t.index, pk).logmag() + std::log(double(e.k));
      count = count_single_term(B, t.index, e.horizon, sched.m, bound);
    } else {
      for (bool f : ratio_flags_seminorm(B, e.terms, e.horizon, sched.m, log_bound)) count += f ? 1 : 0;
    }
    const bool pass = count_exceeds(count, e.horizon, e.k);
    r.table.add({e.k, e.horizon, count, (1.0 - 1.0 / double(e.k)) * double(e.horizon), pass});
    if (!pass && all) r.fail("condition B", e.k);
    all = all && pass;
  }
  if (all) {
    if (a_verdict == Verdict::certified) {
      r.verdict = Verdict::certified;
    } else {
      r.verdict = a_verdict == Verdict::inconclusive ? Verdict::inconclusive : Verdict::failed;
      r.failed_condition = "condition A";
    }
  }
  return r;
}

/// Koethe-corollary form: direct matrix entries, max form (p = 0) or p-power sums (p >= 1).
/// variant < 0 uses the space's own p.
inline CertificateReport check_kothe_dc(const ShiftOperator& B, const WitnessScheduleDC& sched, double variant = -1) {
  validate_schedule(B, sched.m, sched.entries);
  const double p = variant < 0 ? B.space.p : variant;
  SpaceSpec::validate_p(p);
  CertificateReport r;
  r.check = "kothe_dc";
  r.statement = p == 0.0 ? "max_j |a_{i-n,m} b P| / max_j |a_{i,p(k)} b| > k on more than (1-1/k) N_k steps"
                         : "sum_j |a_{i-n,m} b P|^p / sum_j |a_{i,p(k)} b|^p > k^p on more than (1-1/k) N_k steps";
  r.param("m", Index(sched.m));
  r.param("variant_p", p);
  r.table.columns = {"k", "N_k", "count", "threshold", "pass"};

  Verdict a_verdict = Verdict::certified;
  if (sched.check_A && !B.unilateral()) {
    a_verdict = check_dc_condition_A(B, sched.D, schedule_anchors(sched), sched.A).verdict;
    r.set("condition_A", std::string(to_string(a_verdict)));
  }

  auto combine = [p](const std::vector<double>& logs) {
    if (p == 0.0) {
      double best = kNegInf;
      for (double l : logs) best = std::max(best, l);
      return best;
    }
    LogScalar s;
    for (double l : logs)
      if (l != kNegInf) s += LogScalar::from_log(1, p * l);
    return s.logmag();
  };

  bool all = true;
  for (const auto& e : sched.entries) {
    const int pk = p_of_k(sched.m, e.k);
    std::vector<double> den_logs;
    std::vector<ProductTable> tables;
    std::vector<MatrixCursor<Index>> rows;
    for (const auto& t : e.terms) {
      const LogScalar a = B.space.basis_seminorm(t.index, pk);
      den_logs.push_back(a.is_zero() ? kNegInf : a.logmag() + (e.terms.size() == 1 ? 0.0 : t.coef.logmag()));
      tables.emplace_back(B.weights, t.index, e.horizon);
      rows.emplace_back(B.space.matrix);
    }
    const double den = combine(den_logs);
    if (den == kNegInf) {
      r.table.add({e.k, e.horizon, Index(0), 0.0, false});
      if (all) r.fail("zero denominator", e.k);
      all = false;
      continue;
    }
    const double bound = den + (p == 0.0 ? 1.0 : p) * std::log(double(e.k));
    Index count = 0;
    std::vector<double> num_logs(e.terms.size());
    for (Index n = 1; n <= e.horizon; ++n) {
      for (std::size_t t = 0; t < e.terms.size(); ++t) {
        const Index j = e.terms[t].index - n;
        const LogScalar prod = tables[t][n];
        const LogScalar a = (B.unilateral() && j < 1) ? LogScalar::zero() : rows[t].entry(j, sched.m);
        num_logs[t] = prod.is_zero() || a.is_zero()
                          ? kNegInf
                          : prod.logmag() + a.logmag() + (e.terms.size() == 1 ? 0.0 : e.terms[t].coef.logmag());
      }
      if (log_greater(combine(num_logs), bound)) ++count;
    }
    const bool pass = count_exceeds(count, e.horizon, e.k);
    r.table.add({e.k, e.horizon, count, (1.0 - 1.0 / double(e.k)) * double(e.horizon), pass});
    if (!pass && all) r.fail("condition B", e.k);
    all = all && pass;
  }
  if (all) {
    r.verdict = a_verdict == Verdict::certified ? Verdict::certified
                : a_verdict == Verdict::inconclusive ? Verdict::inconclusive
                                                     : Verdict::failed;
    if (a_verdict != Verdict::certified) r.failed_condition = "condition A";
  }
  return r;
}

// ---------------------------------------------------------------------------
// Witness search.

struct IndicatorRun {
  Index first;
  Index length;
  bool pass;
};

/// Maximal runs of the single-term ratio test over n = 1..N.
inline std::vector<IndicatorRun> indicator_runs(const ShiftOperator& B, Index i, Index N, int m, double log_bound) {
  std::vector<IndicatorRun> runs;
  auto push = [&](Index first, Index len, bool pass) {
    if (len <= 0) return;
    if (!runs.empty() && runs.back().pass == pass) {
      runs.back().length += len;
    } else {
      runs.push_back({first, len, pass});
    }
  };
  walk_orbit_segments<Index>(B, i, N, [&](const OrbitSegment<Index>& seg) {
    auto pred = [&](Index t) { return log_greater(seg.term_log(t, m), log_bound); };
    const Index c = count_monotone<Index>(seg.length, pred);
    const bool head = seg.length > 0 && pred(0);
    if (head) {
      push(seg.first_n, c, true);
      push(seg.first_n + c, seg.length - c, false);
    } else {
      push(seg.first_n, seg.length - c, false);
      push(seg.first_n + seg.length - c, c, true);
    }
    return true;
  });
  return runs;
}

/// Smallest N in [lo, hi] with count(N) k > (k-1) N, given indicator runs.
inline std::optional<Index> first_valid_horizon(const std::vector<IndicatorRun>& runs, Index k, Index lo, Index hi) {
  Index before = 0;  // passes strictly before the current run
  for (const auto& run : runs) {
    const Index s = run.first, e = run.first + run.length - 1;
    if (e >= lo && s <= hi) {
      const Index from = std::max(s, lo), to = std::min(e, hi);
      if (run.pass) {
        // count(N) = before + N - s + 1; need k(before + N - s + 1) > (k - 1) N  <=>  N > k (s - 1 - before)
        const Index need = k * (s - 1 - before) + 1;
        const Index N = std::max(from, need);
        if (N <= to) return N;
      } else if (count_exceeds(before, from, k)) {
        return from;  // ratio only drops inside a failing run
      }
    }
    if (run.pass) before += run.length;
    if (s > hi) break;
  }
  return std::nullopt;
}

struct SearchOptions {
  int m = 1;
  Index k_lo = 1;
  Index k_hi = 6;
  std::vector<Index> anchors;
  Index N_max = 1000;
  int max_terms = 1;
};

struct SearchResult {
  std::optional<WitnessScheduleDC> schedule;
  CertificateReport report;
};

inline SearchResult search_witness_dc(const ShiftOperator& B, const SearchOptions& opt) {
  SearchResult out;
  CertificateReport& r = out.report;
  r.check = "dc_search";
  r.statement = "r <= max_terms witnesses with increasing N_k meeting the counting inequality for every k";
  r.param("m", Index(opt.m));
  r.param("k_lo", opt.k_lo);
  r.param("k_hi", opt.k_hi);
  r.param("anchors", Index(opt.anchors.size()));
  r.param("N_max", opt.N_max);
  r.param("max_terms", Index(opt.max_terms));
  r.table.columns = {"k", "N_k", "terms", "first_index"};
  if (opt.anchors.empty() || opt.k_lo < 1 || opt.k_hi < opt.k_lo || opt.N_max < 1)
    throw std::invalid_argument("dc_search: empty search window");
  if (opt.max_terms < 1 || opt.max_terms > 4) throw std::invalid_argument("dc_search: max_terms must be in 1..4");

  WitnessScheduleDC sched;
  sched.m = opt.m;
  Index prev = 0;
  for (Index k = opt.k_lo; k <= opt.k_hi; ++k) {
    const int pk = p_of_k(opt.m, k);
    std::optional<std::pair<Index, std::vector<WitnessTerm>>> best;
    for (Index i : opt.anchors) {
      if (!B.space.in_J(i)) continue;
      const LogScalar a = B.space.basis_seminorm(i, pk);
      if (a.is_zero()) continue;
      const auto runs = indicator_runs(B, i, opt.N_max, opt.m, a.logmag() + std::log(double(k)));
      const auto N = first_valid_horizon(runs, k, prev + 1, opt.N_max);
      if (N && (!best || *N < best->first)) best = {{*N, {{i, LogScalar::one()}}}};
    }
    if (!best && opt.max_terms > 1) {
      // Greedy: grow the set by the anchor that most improves the best margin at some N.
      std::vector<WitnessTerm> chosen;
      for (int r0 = 0; r0 < opt.max_terms && !best; ++r0) {
        Index best_margin = std::numeric_limits<Index>::min();
        std::optional<Index> pick;
        std::vector<bool> pick_flags;
        for (Index i : opt.anchors) {
          if (!B.space.in_J(i)) continue;
          if (std::any_of(chosen.begin(), chosen.end(), [&](const WitnessTerm& t) { return t.index == i; })) continue;
          auto trial = chosen;
          trial.push_back({i, LogScalar::one()});
          const LogScalar den = seminorm(B.space, witness_vector(trial), pk);
          if (den.is_zero()) continue;
          auto flags = ratio_flags_seminorm(B, trial, opt.N_max, opt.m, den.logmag() + std::log(double(k)));
          Index c = 0, margin = std::numeric_limits<Index>::min();
          for (Index n = 1; n <= opt.N_max; ++n) {
            c += flags[std::size_t(n - 1)] ? 1 : 0;
            if (n > prev) margin = std::max(margin, c * k - (k - 1) * n);
          }
          if (margin > best_margin) best_margin = margin, pick = i, pick_flags = std::move(flags);
        }
        if (!pick) break;
        chosen.push_back({*pick, LogScalar::one()});
        Index c = 0;
        for (Index n = 1; n <= opt.N_max; ++n) {
          c += pick_flags[std::size_t(n - 1)] ? 1 : 0;
          if (n > prev && count_exceeds(c, n, k)) {
            best = {{n, chosen}};
            break;
          }
        }
      }
    }
    if (!best) {
      r.verdict = Verdict::failed;
      r.failed_condition = "no witness in window";
      r.failed_k = k;
      return out;
    }
    prev = best->first;
    sched.entries.push_back({k, best->first, best->second});
    r.table.add({k, best->first, Index(best->second.size()), best->second.front().index});
  }
  const CertificateReport verify = check_dc_condition_B(B, sched);
  r.set("verification", std::string(to_string(verify.verdict)));
  r.verdict = verify.verdict;
  if (verify.verdict != Verdict::certified) {
    r.failed_condition = verify.failed_condition;
    r.failed_k = verify.failed_k;
  }
  out.schedule = std::move(sched);
  return out;
}

// ---------------------------------------------------------------------------
// l^p(Z) / c0(Z) corollary.

struct LpC0Options {
  std::vector<Index> S{0};
  std::vector<LogScalar> coefs;  // l^p form weights b_i (default all 1)
  double eps = 1e-2;
  Index k_lo = 1;
  Index k_hi = 6;
  Index N_max = 1000;
};

inline CertificateReport check_lp_c0_dc(const ShiftOperator& B, const LpC0Options& opt) {
  if (!B.space.matrix.is_unit()) throw std::invalid_argument("lp_c0_dc: requires l^p(J) or c0(J) with nu = 1");
  if (opt.S.empty() || opt.N_max < 1) throw std::invalid_argument("lp_c0_dc: empty probe");
  if (!opt.coefs.empty() && opt.coefs.size() != opt.S.size()) throw std::invalid_argument("lp_c0_dc: coefs/S size mismatch");
  const double p = B.space.p;
  CertificateReport r;
  r.check = "lp_c0_dc";
  r.statement = p == 0.0 ? "inf_k sup_N card{n <= N : |P(i,n)| > k for some i in S}/N > eps"
                         : "for each k some N <= N_max with card{n <= N : sum b|P|^p / sum b > k} >= eps N";
  r.param("eps", opt.eps);
  r.param("N_max", opt.N_max);
  r.param("S", Index(opt.S.size()));
  r.table.columns = {"k", "best_N", "count", "best_ratio", "pass"};
  std::vector<ProductTable> tables;
  for (Index i : opt.S) tables.emplace_back(B.weights, i, opt.N_max);
  LogScalar bsum;
  for (std::size_t s = 0; s < opt.S.size(); ++s) bsum += opt.coefs.empty() ? LogScalar::one() : opt.coefs[s];

  double inf_ratio = std::numeric_limits<double>::infinity();
  bool all = true;
  for (Index k = opt.k_lo; k <= opt.k_hi; ++k) {
    const double lk = std::log(double(k));
    Index c = 0, best_c = 0, best_n = 1;
    for (Index n = 1; n <= opt.N_max; ++n) {
      bool hit = false;
      if (p == 0.0) {
        for (const auto& t : tables) hit = hit || log_greater(t[n].is_zero() ? kNegInf : t[n].logmag(), lk);
      } else {
        LogScalar s;
        for (std::size_t q = 0; q < tables.size(); ++q)
          if (!tables[q][n].is_zero())
            s += (opt.coefs.empty() ? LogScalar::one() : opt.coefs[q].abs()) * tables[q][n].abs_pow(p);
        hit = log_greater(s.is_zero() ? kNegInf : (s / bsum).logmag(), lk);
      }
      c += hit ? 1 : 0;
      if (static_cast<__int128>(c) * best_n > static_cast<__int128>(best_c) * n) best_c = c, best_n = n;
    }
    const double ratio = double(best_c) / double(best_n);
    // c0: strict ">" on the inf; l^p: ">= eps N" per k
    const bool pass = p == 0.0 ? ratio > opt.eps : ratio >= opt.eps;
    r.table.add({k, best_n, best_c, ratio, pass});
    inf_ratio = std::min(inf_ratio, ratio);
    if (!pass && all) r.fail(p == 0.0 ? "A2" : "B2", k);
    all = all && pass;
  }
  r.set("inf_best_ratio", inf_ratio);
  if (all) r.verdict = Verdict::certified;
  r.notes.push_back("the decay condition along a density-one set is checked separately (dc_condition_A)");
  return r;
}

// ---------------------------------------------------------------------------
// Sufficient condition on l^p(nu, N) via S_{i,j}(alpha) = {q in [i, j-1] : nu_q >= alpha}.

struct MopOptions {
  std::function<double(Index)> alpha;
  std::function<Index(Index)> j0;
  std::function<Index(Index)> j1;
  Index k_lo = 1;
  Index k_hi = 5;
  Index n_max = 64;
};

/// card S_{i,j}(alpha), by walking runs of nu.
inline Index card_S(const Sequence& nu, Index i, Index j, double alpha) {
  const LogScalar a = LogScalar::from_real(alpha);
  RunCursor<Index> cur(nu);
  Index c = 0;
  Index q = i;
  while (q <= j - 1) {
    const RunInfo<Index> run = cur.at(q);
    const Index end = run.hi ? std::min(*run.hi, j - 1) : j - 1;
    if (run.value.abs() >= a) c += end - q + 1;
    q = end + 1;
  }
  return c;
}

inline CertificateReport check_mop_sufficient(const ShiftOperator& B, const MopOptions& opt) {
  if (B.space.J != IndexSet::N || B.space.matrix.mode != KotheMatrix::Mode::constant_in_k)
    throw std::invalid_argument("mop: requires l^p(nu, N) or c0(nu, N)");
  {
    const auto* c = std::get_if<ConstantForm>(&B.weights.seq.nonnegative);
    if (!c || c->value != LogScalar::one()) throw std::invalid_argument("mop: requires the unweighted backward shift");
  }
  const Sequence& nu = B.space.matrix.nu;
  CertificateReport r;
  r.check = "mop";
  r.statement = "nu_{j1}/alpha < 1/(2k) and card S_{j0,j1}(alpha)/(j1-j0) > 1-1/k at some n_k; emitted schedule verifies";
  r.param("k_lo", opt.k_lo);
  r.param("k_hi", opt.k_hi);
  r.param("n_max", opt.n_max);
  r.table.columns = {"k", "n_k", "j0", "j1", "card_S", "N_k"};
  WitnessScheduleDC sched;
  sched.m = 1;
  Index n_prev = 0, N_prev = 0;
  for (Index k = opt.k_lo; k <= opt.k_hi; ++k) {
    std::optional<Index> found;
    for (Index n = n_prev + 1; n <= opt.n_max && !found; ++n) {
      const Index a0 = opt.j0(n), a1 = opt.j1(n);
      if (a1 - a0 < n) {
        r.notes.push_back("j1(n) - j0(n) < n at n = " + std::to_string(n));
        continue;
      }
      if (a1 - a0 <= N_prev) continue;
      const double alpha = opt.alpha(n);
      const LogScalar top = nu.at(a1).abs();
      // nu_{j1} / alpha < 1/(2k)  <=>  log nu + log 2k < log alpha
      if (!log_greater(std::log(alpha), top.logmag() + std::log(2.0 * double(k)))) continue;
      const Index card = card_S(nu, a0, a1, alpha);
      if (!count_exceeds(card, a1 - a0, k)) continue;
      found = n;
      r.table.add({k, n, a0, a1, card, a1 - a0});
      sched.entries.push_back({k, a1 - a0, {{a1, LogScalar::one()}}});
      n_prev = n;
      N_prev = a1 - a0;
    }
    if (!found) {
      r.verdict = Verdict::inconclusive;
      r.failed_condition = "window exhausted";
      r.failed_k = k;
      return r;
    }
  }
  const CertificateReport verify = check_dc_condition_B(B, sched);
  r.set("emitted_schedule", std::string(to_string(verify.verdict)));
  r.verdict = verify.verdict;
  if (!verify.certified()) {
    r.failed_condition = "emitted schedule: " + verify.failed_condition;
    r.failed_k = verify.failed_k;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Hypercyclicity criterion along n_j.

struct HypercyclicityOptions {
  std::vector<Index> n_seq;
  Index ell_lo = -5;
  Index ell_hi = 5;
  double decay_tol = 1e-6;
  int K = 4;
};

/// Both families below tol from a threshold index on; settled iff the threshold is in
/// the first half of the supplied sequence.
inline CertificateReport check_hypercyclicity_witness(const ShiftOperator& B, const HypercyclicityOptions& opt) {
  CertificateReport r;
  r.check = "hypercyclicity";
  r.statement = "||P(l,n_j)e_{l-n_j}||_k and ||e_{l+n_j}||_k/|w_l...w_{l+n_j-1}| below tol for all j >= threshold";
  r.param("n_count", Index(opt.n_seq.size()));
  r.param("ell_lo", opt.ell_lo);
  r.param("ell_hi", opt.ell_hi);
  r.param("decay_tol", opt.decay_tol);
  r.param("K", Index(opt.K));
  r.table.columns = {"ell", "k", "threshold_backward", "threshold_forward", "threshold"};
  if (opt.n_seq.empty()) throw std::invalid_argument("hypercyclicity: empty n sequence");
  for (std::size_t j = 1; j < opt.n_seq.size(); ++j)
    if (opt.n_seq[j] <= opt.n_seq[j - 1]) throw std::invalid_argument("hypercyclicity: n sequence must increase");
  const double lt = std::log(opt.decay_tol);
  const Index len = Index(opt.n_seq.size());
  Index worst = 0;
  bool settled = true;
  for (Index ell = opt.ell_lo; ell <= opt.ell_hi; ++ell) {
    if (!B.space.in_J(ell)) continue;
    std::vector<LogScalar> back(opt.n_seq.size()), fwd(opt.n_seq.size());
    for (std::size_t j = 0; j < opt.n_seq.size(); ++j) {
      const Index n = opt.n_seq[j];
      back[j] = product(B.weights, ell, n);
      fwd[j] = forward_product(B.weights, ell, n);
    }
    for (int k = 1; k <= opt.K; ++k) {
      Index tb = 1, tf = 1;  // 1-based index of the first element after the last violation
      for (std::size_t j = 0; j < opt.n_seq.size(); ++j) {
        const Index n = opt.n_seq[j];
        const LogScalar ab = B.space.basis_seminorm(ell - n, k);
        const double b = back[j].is_zero() || ab.is_zero() ? kNegInf : back[j].logmag() + ab.logmag();
        if (log_greater_equal(b, lt)) tb = Index(j) + 2;
        const LogScalar af = B.space.basis_seminorm(ell + n, k);
        const double f = af.is_zero() ? kNegInf : af.logmag() - fwd[j].logmag();
        if (log_greater_equal(f, lt)) tf = Index(j) + 2;
      }
      const Index t = std::max(tb, tf);
      r.table.add({ell, Index(k), tb, tf, t});
      worst = std::max(worst, t);
      if (t > len / 2) settled = false;
    }
  }
  r.set("decay_onset", worst);
  r.set("onset_n", worst <= len ? opt.n_seq[std::size_t(worst - 1)] : Index(-1));
  if (settled) {
    r.verdict = Verdict::certified;
  } else {
    r.verdict = Verdict::inconclusive;
    r.failed_condition = "decay not settled within the supplied sequence";
  }
  return r;
}

/// ||e_{l+n}||_k / |w_l...w_{l+n-1}| >= 1 for all n <= N, k <= K refutes the criterion.
inline CertificateReport check_hypercyclicity_refutation(const ShiftOperator& B, Index N, int K, Index ell = 0) {
  CertificateReport r;
  r.check = "hypercyclicity_refutation";
  r.statement = "||e_{l+n}||_k / |w_l...w_{l+n-1}| >= 1 for all 1 <= n <= N and k <= K";
  r.param("horizon", N);
  r.param("K", Index(K));
  r.param("ell", ell);
  if (N < 1 || K < 1) throw std::invalid_argument("hypercyclicity refutation: N and K must be positive");
  if (B.unilateral() && ell < 1) throw std::invalid_argument("hypercyclicity refutation: ell must be >= 1 on N");
  LogScalar fwd = LogScalar::one();
  WeightCursor<Index> wc(B.weights);
  double min_log = std::numeric_limits<double>::infinity();
  Index arg_n = 0;
  int arg_k = 0;
  MatrixCursor<Index> rows(B.space.matrix);
  for (Index n = 1; n <= N; ++n) {
    fwd = fwd * wc.at(ell + n - 1).value.abs();
    for (int k = 1; k <= K; ++k) {
      const LogScalar a = B.space.J == IndexSet::N && ell + n < 1 ? LogScalar::zero() : rows.entry(ell + n, k);
      const double v = a.is_zero() ? kNegInf : a.logmag() - fwd.logmag();
      if (v < min_log) min_log = v, arg_n = n, arg_k = k;
    }
  }
  if (min_log == std::numeric_limits<double>::infinity()) {
    r.verdict = Verdict::inconclusive;
    r.notes.push_back("forward family is empty on this window");
    return r;
  }
  r.set("min_value", LogScalar::from_log(1, min_log));
  r.set("argmin_n", arg_n);
  r.set("argmin_k", Index(arg_k));
  if (log_greater_equal(min_log, 0.0)) {
    r.verdict = Verdict::refuted;
  } else {
    r.verdict = Verdict::inconclusive;
    r.notes.push_back("forward family dips below 1; the criterion is not refuted by this bound");
  }
  return r;
}

}  // namespace wbshift

#endif  // WBSHIFT_DC_CERT_HPP
