#ifndef WBSHIFT_RUNNER_HPP
#define WBSHIFT_RUNNER_HPP

// Check dispatch for experiment documents, report serialization and exit status.

#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wbshift/config.hpp"
#include "wbshift/dc_cert.hpp"
#include "wbshift/density.hpp"
#include "wbshift/mly_cert.hpp"
#include "wbshift/report.hpp"
#include "wbshift/shift.hpp"
#include "wbshift/spaces.hpp"

namespace wbshift {

struct PreparedCheck {
  CheckSpec spec;
  std::function<CertificateReport(const ShiftOperator&)> run;
};

// ---------------------------------------------------------------------------
// Parameter decoders.

inline std::vector<WitnessTerm> parse_terms(const Node& n) {
  std::vector<WitnessTerm> out;
  for (const Node& t : n.elements()) {
    t.only({"index", "coef"});
    WitnessTerm w{t["index"].as_index(), LogScalar::one()};
    if (auto c = t.opt("coef")) w.coef = c->as_scalar();
    if (w.coef.is_zero()) t["coef"].fail("coefficients must be nonzero");
    out.push_back(w);
  }
  if (out.empty()) n.fail("a witness entry needs at least one term");
  return out;
}

inline std::vector<WitnessEntry> parse_entries(const Node& n) {
  std::vector<WitnessEntry> out;
  for (const Node& e : n.elements()) {
    e.only({"k", "N", "terms"});
    out.push_back({e["k"].as_positive(), e["N"].as_positive(), parse_terms(e["terms"])});
    if (out.size() > 1 && out.back().horizon <= out[out.size() - 2].horizon) e["N"].fail("N must increase with k");
    if (out.size() > 1 && out.back().k <= out[out.size() - 2].k) e["k"].fail("k must increase");
  }
  if (out.empty()) n.fail("schedule has no entries");
  return out;
}

/// [i, j, ...] or {"lo": a, "hi": b}.
inline std::vector<Index> parse_index_list(const Node& n) {
  std::vector<Index> out;
  if (n.is_object()) {
    n.only({"lo", "hi"});
    const Index lo = n["lo"].as_index(), hi = n["hi"].as_index();
    if (hi < lo) n.fail("empty range");
    if (hi - lo > 10000000) n.fail("range too large");
    for (Index i = lo; i <= hi; ++i) out.push_back(i);
    return out;
  }
  for (const Node& e : n.elements()) out.push_back(e.as_index());
  if (out.empty()) n.fail("empty index list");
  return out;
}

/// Explicit list, or {"poly": [c0, c1, ...], "from": 1, "count": K} with n_k = poly(k).
inline std::vector<Index> parse_n_sequence(const Node& n) {
  if (n.is_array()) return parse_index_list(n);
  n.only({"poly", "from", "count"});
  const Polynomial p = parse_polynomial(n["poly"]);
  const Index from = n.index_or("from", 1), count = n["count"].as_positive();
  std::vector<Index> out;
  try {
    for (Index k = from; k < from + count; ++k) out.push_back(p.eval(k));
  } catch (const std::exception& e) {
    n["poly"].fail(e.what());
  }
  return out;
}

inline IndexPredicate parse_predicate(const Node& n, const ShiftOperator& B) {
  if (n.is_string()) {
    const std::string s = n.as_string();
    if (s == "all") return IndexPredicate::all();
    if (s == "evens") return IndexPredicate::evens();
    if (s == "empty") return IndexPredicate::none();
    n.fail("unknown set '" + s + "' (all, evens, empty, or {mirrored_blocks})");
  }
  n.only({"mirrored_blocks"});
  const Node m = n["mirrored_blocks"];
  m.only({"select", "of"});
  const std::string select = m.string_or("select", "odd");
  const std::string of = m.string_or("of", "weights");
  std::function<bool(Index)> pick;
  if (select == "odd") pick = [](Index b) { return b % 2 == 1; };
  else if (select == "even") pick = [](Index b) { return b % 2 == 0; };
  else if (select == "all") pick = [](Index) { return true; };
  else m["select"].fail("select must be odd, even or all");
  const Sequence* layout = nullptr;
  if (of == "weights") layout = &B.weights.seq;
  else if (of == "nu") layout = &B.space.matrix.nu;
  else m["of"].fail("of must be weights or nu");
  try {
    return IndexPredicate::mirrored_blocks(*layout, pick, "mirrored " + select + " blocks of " + of);
  } catch (const std::invalid_argument& e) {
    m.fail(e.what());
  }
}

inline ConditionAOptions parse_A_options(const std::optional<Node>& n) {
  ConditionAOptions a;
  if (!n) return a;
  n->only({"horizon", "decay_tol", "K"});
  a.horizon = n->index_or("horizon", 0);
  if (a.horizon < 0) (*n)["horizon"].fail("horizon must be positive (or 0 for the default)");
  a.decay_tol = n->double_or("decay_tol", 1e-6);
  if (!(a.decay_tol > 0)) (*n)["decay_tol"].fail("decay_tol must be positive");
  a.K = n->int_or("K", 6);
  if (a.K < 1) (*n)["K"].fail("K must be >= 1");
  return a;
}

inline std::vector<AcbProbe> parse_probes(const Node& n) {
  std::vector<AcbProbe> out;
  for (const Node& p : n.elements()) {
    p.only({"label", "terms", "horizons"});
    AcbProbe probe;
    for (const Node& t : p["terms"].elements()) {
      t.only({"index", "coef"});
      LogScalar c = LogScalar::one();
      if (auto cn = t.opt("coef")) c = cn->as_scalar();
      if (c.is_zero()) t["coef"].fail("coefficients must be nonzero");
      probe.terms.push_back({t["index"].as_big(), c});
    }
    if (probe.terms.empty()) p["terms"].fail("probe has no terms");
    for (const Node& h : p["horizons"].elements()) {
      probe.horizons.push_back(h.as_big());
      if (probe.horizons.back() < 1) h.fail("horizons must be positive");
      if (probe.terms.size() > 1 && !narrow(probe.horizons.back())) h.fail("multi-term probes need 64-bit horizons");
    }
    if (probe.horizons.empty()) p["horizons"].fail("probe has no horizons");
    probe.label = p.string_or("label", probe.terms.size() == 1 ? "e_" + probe.terms[0].first.str() : "probe");
    out.push_back(std::move(probe));
  }
  if (out.empty()) n.fail("no probes");
  return out;
}

inline std::vector<double> parse_C_grid(const Node& n) {
  std::vector<double> out;
  for (const Node& c : n.elements()) {
    out.push_back(c.as_double());
    if (!(out.back() > 0)) c.fail("C must be positive");
  }
  if (out.empty()) n.fail("empty C grid");
  return out;
}

/// j(n) = poly(n), or the first/last index of nonnegative block n of nu plus poly(n).
inline std::function<Index(Index)> parse_index_fn(const Node& n, const ShiftOperator& B) {
  n.only({"poly", "block_start", "block_end"});
  const int kinds = int(n.has("poly")) + int(n.has("block_start")) + int(n.has("block_end"));
  if (kinds != 1) n.fail("give exactly one of poly, block_start, block_end");
  if (n.has("poly")) {
    const Polynomial p = parse_polynomial(n["poly"]);
    return [p](Index k) { return p.eval(k); };
  }
  const bool start = n.has("block_start");
  const Polynomial off = parse_polynomial(n[start ? "block_start" : "block_end"]);
  if (!std::holds_alternative<BlocksForm>(B.space.matrix.nu.nonnegative))
    n.fail("block-relative index functions need a block-structured nu");
  const Sequence nu = B.space.matrix.nu;
  return [nu, off, start](Index k) {
    const IndexInterval r = nu.block_range(Side::nonnegative, k);
    return (start ? r.lo : r.hi) + off.eval(k);
  };
}

inline std::vector<SparseVector> random_samples(const SpaceSpec& s, std::size_t count, std::uint64_t seed, Index lo,
                                                Index hi, int support) {
  std::mt19937_64 rng(seed);
  if (s.J == IndexSet::N) lo = std::max<Index>(lo, 1);
  std::uniform_int_distribution<Index> pos(lo, hi);
  std::uniform_int_distribution<int> size(1, support);
  std::uniform_real_distribution<double> mag(-20.0, 20.0);
  std::bernoulli_distribution neg(0.5);
  std::vector<SparseVector> out;
  for (std::size_t i = 0; i < count; ++i) {
    SparseVector v;
    const int n = size(rng);
    for (int t = 0; t < n; ++t) {
      const Index j = pos(rng);
      const double l = mag(rng);
      v.set(j, LogScalar::from_log(neg(rng) ? -1 : 1, l));
    }
    out.push_back(std::move(v));
  }
  return out;
}

/// Validates the parameters of one check and binds them; nothing is computed yet.
inline PreparedCheck prepare_check(const CheckSpec& spec, const Node& p, const ShiftOperator& B) {
  using R = CertificateReport;
  PreparedCheck out{spec, {}};
  p.object();
  const std::string& kind = spec.kind;
  auto positive_double = [&](const char* key, double fallback) {
    const double v = p.double_or(key, fallback);
    if (!(v > 0)) p[key].fail(std::string(key) + " must be positive");
    return v;
  };
  auto require_bilateral = [&] {
    if (B.unilateral()) p.fail("check '" + kind + "' needs a bilateral shift (J = Z)");
  };

  if (kind == "dc" || kind == "kothe_dc") {
    p.only({"m", "entries", "D", "anchors", "check_A", "A", "variant"});
    WitnessScheduleDC s;
    s.m = p.int_or("m", 1);
    if (s.m < 1) p["m"].fail("m must be >= 1");
    s.entries = parse_entries(p["entries"]);
    if (auto d = p.opt("D")) s.D = parse_predicate(*d, B);
    if (auto a = p.opt("anchors")) s.anchors = parse_index_list(*a);
    s.check_A = p.bool_or("check_A", true);
    s.A = parse_A_options(p.opt("A"));
    try {
      validate_schedule(B, s.m, s.entries);
    } catch (const std::invalid_argument& e) {
      p["entries"].fail(e.what());
    }
    if (kind == "dc") {
      if (p.has("variant")) p["variant"].fail("'variant' applies to kothe_dc only");
      out.run = [s](const ShiftOperator& op) { return check_dc_condition_B(op, s); };
    } else {
      const double v = p.has("variant") ? parse_p(p["variant"]) : -1.0;
      out.run = [s, v](const ShiftOperator& op) { return check_kothe_dc(op, s, v); };
    }
  } else if (kind == "dc_A") {
    p.only({"D", "anchors", "horizon", "decay_tol", "K"});
    json a = json::object();
    const IndexPredicate D = p.has("D") ? parse_predicate(p["D"], B) : IndexPredicate::all();
    const std::vector<Index> anchors = parse_index_list(p["anchors"]);
    ConditionAOptions opt;
    opt.horizon = p.index_or("horizon", 0);
    if (opt.horizon < 0) p["horizon"].fail("horizon must be positive");
    opt.decay_tol = positive_double("decay_tol", 1e-6);
    opt.K = p.int_or("K", 6);
    if (opt.K < 1) p["K"].fail("K must be >= 1");
    out.run = [D, anchors, opt](const ShiftOperator& op) { return check_dc_condition_A(op, D, anchors, opt); };
  } else if (kind == "dc_A_refute") {
    p.only({"anchor", "C", "seminorm", "horizon", "delta", "onset_scan"});
    RefutationOptions o;
    o.anchor = p.index_or("anchor", 0);
    o.C = positive_double("C", 0.5);
    o.seminorm = p.int_or("seminorm", 1);
    if (o.seminorm < 1) p["seminorm"].fail("seminorm must be >= 1");
    o.horizon = p.positive_or("horizon", 1000000);
    if (auto d = p.opt("delta")) o.delta = d->as_rational();
    if (o.delta.num < 0) p["delta"].fail("delta must be nonnegative");
    o.onset_scan = p.positive_or("onset_scan", 10000);
    out.run = [o](const ShiftOperator& op) { return check_dc_condition_A_refutation(op, o); };
  } else if (kind == "dc_search") {
    p.only({"m", "k_lo", "k_hi", "anchors", "N_max", "max_terms"});
    SearchOptions o;
    o.m = p.int_or("m", 1);
    if (o.m < 1) p["m"].fail("m must be >= 1");
    o.k_lo = p.positive_or("k_lo", 1);
    o.k_hi = p.positive_or("k_hi", 6);
    if (o.k_hi < o.k_lo) p["k_hi"].fail("k_hi < k_lo");
    o.anchors = parse_index_list(p["anchors"]);
    o.N_max = p.positive_or("N_max", 1000);
    o.max_terms = p.int_or("max_terms", 1);
    if (o.max_terms < 1 || o.max_terms > 4) p["max_terms"].fail("max_terms must be in 1..4");
    out.run = [o](const ShiftOperator& op) { return search_witness_dc(op, o).report; };
  } else if (kind == "lp_c0_dc") {
    p.only({"S", "coefs", "eps", "k_lo", "k_hi", "N_max"});
    if (!B.space.matrix.is_unit()) p.fail("lp_c0_dc needs l^p(J) or c0(J) with nu = 1");
    LpC0Options o;
    if (auto s = p.opt("S")) o.S = parse_index_list(*s);
    if (auto c = p.opt("coefs")) {
      for (const Node& e : c->elements()) {
        o.coefs.push_back(e.as_scalar());
        if (!(o.coefs.back().sign() > 0)) e.fail("coefficients must be positive");
      }
      if (o.coefs.size() != o.S.size()) c->fail("coefs must match S in length");
    }
    o.eps = positive_double("eps", 1e-2);
    o.k_lo = p.positive_or("k_lo", 1);
    o.k_hi = p.positive_or("k_hi", 6);
    if (o.k_hi < o.k_lo) p["k_hi"].fail("k_hi < k_lo");
    o.N_max = p.positive_or("N_max", 1000);
    out.run = [o](const ShiftOperator& op) { return check_lp_c0_dc(op, o); };
  } else if (kind == "mop") {
    p.only({"alpha", "j0", "j1", "k_lo", "k_hi", "n_max"});
    if (B.space.J != IndexSet::N || B.space.matrix.mode != KotheMatrix::Mode::constant_in_k)
      p.fail("mop needs l^p(nu, N) or c0(nu, N)");
    MopOptions o;
    const Polynomial alpha = parse_polynomial(p["alpha"]);
    o.alpha = [alpha](Index n) { return to_double(alpha.eval_big(n)); };
    o.j0 = parse_index_fn(p["j0"], B);
    o.j1 = parse_index_fn(p["j1"], B);
    o.k_lo = p.positive_or("k_lo", 1);
    o.k_hi = p.positive_or("k_hi", 5);
    o.n_max = p.positive_or("n_max", 64);
    out.run = [o](const ShiftOperator& op) { return check_mop_sufficient(op, o); };
  } else if (kind == "hypercyclicity") {
    const std::string mode = p.string_or("mode", "witness");
    if (mode == "witness") {
      p.only({"mode", "n", "ell_lo", "ell_hi", "decay_tol", "K"});
      HypercyclicityOptions o;
      o.n_seq = parse_n_sequence(p["n"]);
      for (std::size_t j = 1; j < o.n_seq.size(); ++j)
        if (o.n_seq[j] <= o.n_seq[j - 1]) p["n"].fail("n sequence must increase");
      if (o.n_seq.front() < 1) p["n"].fail("n sequence must be positive");
      o.ell_lo = p.index_or("ell_lo", -5);
      o.ell_hi = p.index_or("ell_hi", 5);
      if (o.ell_hi < o.ell_lo) p["ell_hi"].fail("ell_hi < ell_lo");
      o.decay_tol = positive_double("decay_tol", 1e-6);
      o.K = p.int_or("K", 4);
      if (o.K < 1) p["K"].fail("K must be >= 1");
      out.run = [o](const ShiftOperator& op) { return check_hypercyclicity_witness(op, o); };
    } else if (mode == "refutation") {
      p.only({"mode", "horizon", "K", "ell"});
      const Index N = p.positive_or("horizon", 10000);
      const int K = p.int_or("K", 4);
      if (K < 1) p["K"].fail("K must be >= 1");
      const Index ell = p.index_or("ell", 0);
      out.run = [N, K, ell](const ShiftOperator& op) { return check_hypercyclicity_refutation(op, N, K, ell); };
    } else {
      p["mode"].fail("mode must be witness or refutation");
    }
  } else if (kind == "mly" || kind == "kothe_mly") {
    p.only({"m", "entries", "target_scale", "check_A", "A", "variant"});
    WitnessScheduleMLY s;
    s.m = p.int_or("m", 1);
    if (s.m < 1) p["m"].fail("m must be >= 1");
    s.entries = parse_entries(p["entries"]);
    s.target_scale = positive_double("target_scale", 1.0);
    s.check_A = p.bool_or("check_A", true);
    if (auto a = p.opt("A")) {
      a->only({"anchor", "horizon", "tol"});
      s.A_anchor = a->index_or("anchor", 0);
      s.A_horizon = a->positive_or("horizon", 100000);
      s.A_tol = a->double_or("tol", 1e-3);
    }
    try {
      validate_schedule(B, s.m, s.entries);
    } catch (const std::invalid_argument& e) {
      p["entries"].fail(e.what());
    }
    if (kind == "mly") {
      if (p.has("variant")) p["variant"].fail("'variant' applies to kothe_mly only");
      out.run = [s](const ShiftOperator& op) { return check_mly_condition_B(op, s); };
    } else {
      const double v = p.has("variant") ? parse_p(p["variant"]) : -1.0;
      out.run = [s, v](const ShiftOperator& op) { return check_kothe_mly(op, s, v); };
    }
  } else if (kind == "acb") {
    p.only({"probes", "C"});
    if (!B.space.banach()) p.fail("acb needs a Banach-described space (nu constant in k)");
    const auto probes = parse_probes(p["probes"]);
    const auto C = p.has("C") ? parse_C_grid(p["C"]) : std::vector<double>{1, 10, 100};
    out.run = [probes, C](const ShiftOperator& op) { return check_acb(op, probes, C); };
  } else if (kind == "f3") {
    p.only({"horizon", "tol", "probes", "C"});
    require_bilateral();
    if (!B.space.banach()) p.fail("f3 needs a Banach-described space (nu constant in k)");
    F3Options o;
    o.horizon = p.positive_or("horizon", 100000);
    o.tol = positive_double("tol", 1e-3);
    o.probes = parse_probes(p["probes"]);
    if (p.has("C")) o.C_grid = parse_C_grid(p["C"]);
    out.run = [o](const ShiftOperator& op) { return check_f3(op, o); };
  } else if (kind == "density") {
    p.only({"set", "delta", "horizon", "onset_scan", "horizons"});
    const IndexPredicate A = parse_predicate(p["set"], B);
    const Rational delta = p.has("delta") ? p["delta"].as_rational() : Rational{1, 6};
    const Index H = p.positive_or("horizon", 1000000);
    const Index scan = p.positive_or("onset_scan", H);
    if (scan > H) p["onset_scan"].fail("onset_scan exceeds horizon");
    std::vector<Index> horizons;
    if (auto h = p.opt("horizons")) {
      horizons = parse_index_list(*h);
      for (std::size_t i = 0; i < horizons.size(); ++i)
        if (horizons[i] < 1 || (i > 0 && horizons[i] <= horizons[i - 1])) h->fail("horizons must be positive and increasing");
    }
    out.run = [A, delta, H, scan, horizons](const ShiftOperator&) {
      R r;
      r.check = "density";
      r.statement = "card(A cap [1,N])/N > delta for every N in [N0, H]; N0 from an exhaustive scan";
      r.param("set", A.label);
      r.param("delta", delta.str());
      r.param("horizon", H);
      r.param("onset_scan", scan);
      const auto onset = threshold_onset(A, delta, scan);
      if (!onset) {
        r.fail("prefix ratio at or below delta at the end of the scan");
        return r;
      }
      r.set("N0", *onset);
      const DensityEnvelope env = scan_prefix_ratios(A, *onset, H);
      r.set("min_ratio", env.running_min);
      r.set("argmin", env.argmin);
      r.set("max_ratio", env.running_max);
      r.set("argmax", env.argmax);
      r.table.columns = {"N", "count", "prefix_ratio"};
      for (Index N : horizons) r.table.add({N, A.count(N), prefix_ratio(A, N)});
      if (ratio_exceeds_throughout(A, delta, *onset, H))
        r.verdict = Verdict::certified;
      else
        r.fail("prefix ratio at or below delta after N0");
      return r;
    };
  } else if (kind == "orbit") {
    p.only({"vector", "m", "horizon"});
    SparseVector x;
    for (const auto& t : parse_terms(p["vector"])) x.add_to(t.index, t.coef);
    for (const auto& [j, v] : x)
      if (!B.space.in_J(j)) p["vector"].fail("vector index outside the index set");
    const int m = p.int_or("m", 1);
    if (m < 1) p["m"].fail("m must be >= 1");
    const Index N = p.positive_or("horizon", 100);
    out.run = [x, m, N](const ShiftOperator& op) {
      R r;
      r.check = "orbit";
      r.statement = "||B^n x||_m for n = 1..N (informational)";
      r.param("m", Index(m));
      r.param("horizon", N);
      r.param("support", Index(x.size()));
      const auto series = orbit_seminorm_series(op, x, m, N);
      r.table.columns = {"n", "seminorm"};
      LogScalar lo = series.front(), hi = series.front();
      for (Index n = 1; n <= N; ++n) {
        const LogScalar v = series[std::size_t(n - 1)];
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        r.table.add({n, v});
      }
      r.set("x_seminorm", seminorm(op.space, x, m));
      r.set("min", lo);
      r.set("max", hi);
      r.verdict = Verdict::certified;
      return r;
    };
  } else if (kind == "condition_C") {
    p.only({"samples", "seed", "K", "lo", "hi", "support"});
    const Index samples = p.positive_or("samples", 200);
    const Index seed = p.index_or("seed", 1);
    const int K = p.int_or("K", 6);
    if (K < 1) p["K"].fail("K must be >= 1");
    const Index lo = p.index_or("lo", -1000), hi = p.index_or("hi", 1000);
    if (hi < lo) p["hi"].fail("hi < lo");
    const int support = p.int_or("support", 5);
    if (support < 1) p["support"].fail("support must be >= 1");
    out.run = [=](const ShiftOperator& op) {
      return condition_C_check(op.space, random_samples(op.space, std::size_t(samples), std::uint64_t(seed), lo, hi, support), K);
    };
  } else if (kind == "continuity") {
    p.only({"lo", "hi", "K", "cap"});
    ProbeWindow w{p.index_or("lo", -10000), p.index_or("hi", 10000)};
    if (w.hi < w.lo) p["hi"].fail("hi < lo");
    const int K = p.int_or("K", 6);
    if (K < 1) p["K"].fail("K must be >= 1");
    const double cap = positive_double("cap", 1e8);
    out.run = [w, K, cap](const ShiftOperator& op) { return continuity_check(op.space, op.weights, w, K, cap); };
  } else if (kind == "cesaro") {
    p.only({"anchor", "horizon", "tol", "from"});
    const Index j = p.index_or("anchor", 0);
    const Index N = p.positive_or("horizon", 100000);
    const double tol = positive_double("tol", 1e-3);
    const Index from = p.positive_or("from", 1);
    if (from > N) p["from"].fail("from exceeds horizon");
    out.run = [=](const ShiftOperator& op) { return check_cesaro_condition_A(op, j, N, tol, from); };
  } else if (kind == "anchor_equivalence") {
    p.only({"anchors", "horizon", "tol", "from"});
    const auto anchors = parse_index_list(p["anchors"]);
    const Index N = p.positive_or("horizon", 100000);
    const double tol = positive_double("tol", 1e-3);
    const Index from = p.positive_or("from", 1);
    if (from > N) p["from"].fail("from exceeds horizon");
    out.run = [=](const ShiftOperator& op) { return anchor_equivalence_probe(op, anchors, N, tol, from); };
  } else {
    p.fail("unknown check kind '" + kind + "'");
  }
  return out;
}

/// Replaces "horizon"/"N_max" in every check with N.
inline void override_horizon(ExperimentConfig& cfg, Index N) {
  if (N < 1) throw ConfigError("--horizon must be a positive integer");
  for (auto& c : cfg.checks) {
    for (const char* key : {"horizon", "N_max"})
      if (c.params.contains(key)) c.params[key] = N;
    if (c.params.contains("A") && c.params["A"].is_object() && c.params["A"].contains("horizon"))
      c.params["A"]["horizon"] = N;
  }
  cfg.doc.reset();  // positions no longer describe the edited parameters
}

// ---------------------------------------------------------------------------
// Serialization.

inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return to_decimal(LogScalar::from_real(v), 12);
}

inline std::string field_text(const Field& f) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        else if constexpr (std::is_same_v<T, Index>) return std::to_string(v);
        else if constexpr (std::is_same_v<T, double>) return format_double(v);
        else if constexpr (std::is_same_v<T, std::string>) return v;
        else return to_decimal(v, 12);
      },
      f);
}

inline ordered_json number_json(LogScalar x) {
  ordered_json o;
  o["decimal"] = to_decimal(x, 12);
  o["sign"] = x.sign();
  o["logmag"] = x.is_zero() ? ordered_json(nullptr) : ordered_json(x.logmag());
  return o;
}

inline ordered_json field_json(const Field& f) {
  return std::visit(
      [](const auto& v) -> ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, bool>) return v;
        else if constexpr (std::is_same_v<T, Index>) return v;
        else if constexpr (std::is_same_v<T, std::string>) return v;
        else if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return {{"decimal", format_double(v)}, {"sign", v > 0 ? 1 : -1}, {"logmag", nullptr}};
          return number_json(LogScalar::from_real(v));
        } else {
          return number_json(v);
        }
      },
      f);
}

inline ordered_json report_json(const CertificateReport& r, const std::string& label) {
  ordered_json o;
  o["label"] = label;
  o["check"] = r.check;
  o["verdict"] = to_string(r.verdict);
  o["statement"] = r.statement;
  if (!r.failed_condition.empty()) o["failed_condition"] = r.failed_condition;
  if (r.failed_k) o["failed_k"] = *r.failed_k;
  o["parameters"] = ordered_json::object();
  for (const auto& [k, v] : r.parameters) o["parameters"][k] = field_json(v);
  o["summary"] = ordered_json::object();
  for (const auto& [k, v] : r.summary) o["summary"][k] = field_json(v);
  o["table"] = {{"columns", r.table.columns}, {"rows", ordered_json::array()}};
  for (const auto& row : r.table.rows) {
    ordered_json jr = ordered_json::array();
    for (const auto& f : row) jr.push_back(field_json(f));
    o["table"]["rows"].push_back(std::move(jr));
  }
  o["notes"] = r.notes;
  return o;
}

inline std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

struct CheckOutcome {
  CheckSpec spec;
  std::optional<CertificateReport> report;
  std::string error;  // nonempty when the check threw
  bool matched = false;
};

inline void write_text(std::ostream& os, const std::vector<CheckOutcome>& outcomes, const std::string& name) {
  os << "experiment: " << name << "\n";
  for (const auto& o : outcomes) {
    os << "\n== " << o.spec.label << " (" << o.spec.kind << ")";
    if (!o.report) {
      os << " [error]\n  " << o.error << "\n";
      continue;
    }
    const auto& r = *o.report;
    os << " [" << to_string(r.verdict) << "]";
    if (o.spec.expect) os << (o.matched ? " matches expected" : " EXPECTED " + std::string(to_string(*o.spec.expect)));
    os << "\n  statement: " << r.statement << "\n";
    if (!r.failed_condition.empty())
      os << "  failed: " << r.failed_condition << (r.failed_k ? " at k = " + std::to_string(*r.failed_k) : "") << "\n";
    for (const auto& [k, v] : r.parameters) os << "  param " << k << " = " << field_text(v) << "\n";
    for (const auto& [k, v] : r.summary) os << "  " << k << " = " << field_text(v) << "\n";
    if (!r.table.columns.empty() && !r.table.empty()) {
      std::vector<std::size_t> width(r.table.columns.size());
      std::vector<std::vector<std::string>> cells;
      for (std::size_t c = 0; c < width.size(); ++c) width[c] = r.table.columns[c].size();
      for (const auto& row : r.table.rows) {
        cells.emplace_back();
        for (std::size_t c = 0; c < row.size(); ++c) {
          cells.back().push_back(field_text(row[c]));
          width[c] = std::max(width[c], cells.back().back().size());
        }
      }
      auto line = [&](const std::vector<std::string>& v) {
        os << "   ";
        for (std::size_t c = 0; c < v.size(); ++c) os << " " << std::string(width[c] - v[c].size(), ' ') << v[c];
        os << "\n";
      };
      line(r.table.columns);
      for (const auto& row : cells) line(row);
    }
    for (const auto& n : r.notes) os << "  note: " << n << "\n";
  }
}

inline void write_csv(std::ostream& os, const std::vector<CheckOutcome>& outcomes) {
  bool first = true;
  for (const auto& o : outcomes) {
    if (!first) os << "\n";
    first = false;
    os << "# " << o.spec.label << "," << o.spec.kind << ","
       << (o.report ? to_string(o.report->verdict) : "error") << "\n";
    if (!o.report) continue;
    const auto& t = o.report->table;
    for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << csv_cell(t.columns[c]);
    os << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_cell(field_text(row[c]));
      os << "\n";
    }
  }
}

inline void write_json(std::ostream& os, const std::vector<CheckOutcome>& outcomes, const std::string& name, int status) {
  ordered_json o;
  o["schema_version"] = kSchemaVersion;
  o["experiment"] = name;
  o["status"] = status;
  o["reports"] = ordered_json::array();
  for (const auto& c : outcomes) {
    if (c.report) {
      ordered_json r = report_json(*c.report, c.spec.label);
      if (c.spec.expect) {
        r["expected"] = to_string(*c.spec.expect);
        r["matched"] = c.matched;
      }
      o["reports"].push_back(std::move(r));
    } else {
      o["reports"].push_back({{"label", c.spec.label}, {"check", c.spec.kind}, {"error", c.error}});
    }
  }
  os << o.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// Running.

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitError = 3;

/// A check is satisfied when it matches its expected verdict, or is certified when none is given.
inline int exit_status(const std::vector<CheckOutcome>& outcomes) {
  bool failed = false, inconclusive = false;
  for (const auto& o : outcomes) {
    if (!o.report) return kExitError;
    if (o.matched) continue;
    if (o.report->verdict == Verdict::inconclusive && !o.spec.expect)
      inconclusive = true;
    else
      failed = true;
  }
  return failed ? kExitFailed : inconclusive ? kExitInconclusive : kExitOk;
}

/// Decodes every check before running any of them; throws ConfigError on schema errors.
inline std::vector<PreparedCheck> prepare_all(const ExperimentConfig& cfg, const ShiftOperator& B) {
  std::vector<PreparedCheck> out;
  for (std::size_t i = 0; i < cfg.checks.size(); ++i) {
    const Node params = cfg.doc ? check_params(cfg, i) : Node(cfg.checks[i].params, "/checks/" + std::to_string(i) + "/params", nullptr);
    out.push_back(prepare_check(cfg.checks[i], params, B));
  }
  return out;
}

inline ShiftOperator make_operator(const ExperimentConfig& cfg) { return ShiftOperator(cfg.space, cfg.weights); }

/// Runs checks in document order.
inline std::vector<CheckOutcome> run_checks(const ExperimentConfig& cfg, bool use_expectations = true) {
  const ShiftOperator B = make_operator(cfg);
  const auto prepared = prepare_all(cfg, B);
  std::vector<CheckOutcome> out;
  for (const auto& p : prepared) {
    CheckOutcome o{p.spec, std::nullopt, "", false};
    if (!use_expectations) o.spec.expect.reset();
    try {
      o.report = p.run(B);
      o.matched = o.spec.expect ? o.report->verdict == *o.spec.expect : o.report->verdict == Verdict::certified;
    } catch (const std::exception& e) {
      o.error = e.what();
    }
    out.push_back(std::move(o));
  }
  return out;
}

inline void write_outcomes(std::ostream& os, const std::vector<CheckOutcome>& outcomes, const ExperimentConfig& cfg,
                           const std::string& format) {
  if (format == "report") {
    write_text(os, outcomes, cfg.name);
    os << "\nstatus: " << exit_status(outcomes) << "\n";
  } else if (format == "csv") {
    write_csv(os, outcomes);
  } else if (format == "json") {
    write_json(os, outcomes, cfg.name, exit_status(outcomes));
  } else {
    throw ConfigError("unknown output format '" + format + "'");
  }
}

}  // namespace wbshift

#endif  // WBSHIFT_RUNNER_HPP
