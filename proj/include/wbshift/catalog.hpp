#ifndef WBSHIFT_CATALOG_HPP
#define WBSHIFT_CATALOG_HPP

// Canned operators with their expected verdicts and witness hints.

#include <stdexcept>
#include <string>
#include <vector>

#include "wbshift/config.hpp"
#include "wbshift/runner.hpp"
#include "wbshift/sequence.hpp"

namespace wbshift {

struct CatalogEntry {
  std::string name;
  std::string summary;
  ExperimentConfig config;
  std::vector<std::string> notes;
};

inline const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{"ex1_s_Z_hc_not_dc",  "ex2_kothe_dc_not_hc", "ex3_s_Z_hc_not_mly",
                                              "ex4_lp_mly_not_hc",  "rolewicz_lp_N",       "unweighted_lp_N",
                                              "halfweights_bilateral"};
  return names;
}

namespace catalog_detail {

inline json big(const BigIndex& v) {
  if (auto n = narrow(v)) return *n;
  return v.str();
}

inline CheckSpec check(std::string kind, Verdict expect, json params, std::string label = "") {
  CheckSpec c;
  c.label = label.empty() ? kind : std::move(label);
  c.kind = std::move(kind);
  c.expect = expect;
  c.params = std::move(params);
  return c;
}

/// Ramp-plateau layout on the positive side, 1 elsewhere; block n ends at cumulative_length(n).
inline Sequence ramp_plateau_nu() { return {ConstantForm{LogScalar::one()}, BlocksForm{RampPlateau{10}}, 1}; }

inline BigIndex ramp_plateau_end(Index n) { return cumulative_length<BigIndex>(RampPlateau{10}, n); }

/// Single-term schedule at i = N_k = end of block n_k = k.
inline json block_end_entries(Index k_hi) {
  json entries = json::array();
  for (Index k = 1; k <= k_hi; ++k) {
    const Index N = narrow_or_throw(ramp_plateau_end(k), "schedule horizon");
    entries.push_back({{"k", k}, {"N", N}, {"terms", json::array({{{"index", N}}})}});
  }
  return entries;
}

inline json basis_probes(const std::vector<BigIndex>& indices, const std::vector<BigIndex>& horizons) {
  json probes = json::array();
  for (const auto& j : indices) {
    json hs = json::array();
    for (const auto& h : horizons) hs.push_back(big(h));
    probes.push_back({{"label", "e_" + j.str()}, {"terms", json::array({{{"index", big(j)}}})}, {"horizons", hs}});
  }
  return probes;
}

/// e_{N_k} at horizon N_k for the ramp-plateau layout.
inline json block_end_probes(const std::vector<Index>& ks) {
  json probes = json::array();
  for (Index k : ks) {
    const BigIndex N = ramp_plateau_end(k);
    probes.push_back({{"label", "e_N" + std::to_string(k)},
                      {"terms", json::array({{{"index", big(N)}}})},
                      {"horizons", json::array({big(N)})}});
  }
  return probes;
}

inline ExperimentConfig base(std::string name, SpaceSpec space, WeightSpec weights) {
  ExperimentConfig c;
  c.name = std::move(name);
  c.space = std::move(space);
  c.weights = std::move(weights);
  c.source = "catalog:" + c.name;
  return c;
}

}  // namespace catalog_detail

inline CatalogEntry build_example(const std::string& name) {
  using namespace catalog_detail;
  const auto C = Verdict::certified;
  const auto F = Verdict::failed;
  const auto R = Verdict::refuted;
  CatalogEntry e;
  e.name = name;

  if (name == "ex1_s_Z_hc_not_dc") {
    e.summary = "s(Z), alternating 2^(+-1) blocks on the left, 2 on the right: hypercyclic, not distributionally chaotic";
    Sequence w{BlocksForm{AlternatingPowers{2.0}}, ConstantForm{LogScalar::from_real(2.0)}, 0};
    e.config = base(name, SpaceSpec::rapidly_decreasing(IndexSet::Z), WeightSpec{IndexSet::Z, w});
    e.config.checks = {
        check("hypercyclicity", C,
              {{"mode", "witness"}, {"n", {{"poly", {0, -1, 4}}, {"from", 1}, {"count", 200}}},
               {"ell_lo", -5}, {"ell_hi", 5}, {"decay_tol", 1e-6}, {"K", 4}},
              "hypercyclicity witness n_k = 4k^2 - k"),
        check("dc_A_refute", R,
              {{"anchor", 0}, {"C", 0.5}, {"seminorm", 1}, {"horizon", 1000000}, {"delta", "1/6"}, {"onset_scan", 10000}},
              "decay along a density-one set refuted"),
        check("density", C,
              {{"set", {{"mirrored_blocks", {{"select", "odd"}, {"of", "weights"}}}}}, {"delta", "1/6"},
               {"horizon", 1000000}, {"onset_scan", 10000}, {"horizons", {12, 100, 1000, 10000, 100000, 1000000}}},
              "lower density of the odd mirrored blocks"),
        check("continuity", C, {{"lo", -10000}, {"hi", 10000}, {"K", 6}}),
    };
    e.notes = {"products are >= 1/2 in the first seminorm on the odd mirrored blocks, a set of lower density > 1/6"};
  } else if (name == "ex2_kothe_dc_not_hc") {
    e.summary = "lambda_1(A, Z) with ramp-plateau rows nu^k, weights 1/2 left and 1 right: distributionally chaotic, "
                "not hypercyclic";
    e.config = base(name, SpaceSpec::kothe(1.0, KotheMatrix::power_in_k(ramp_plateau_nu()), IndexSet::Z, "lambda_1(nu^k,Z)"),
                    WeightSpec::sided(0.5, 1.0));
    const json entries = block_end_entries(6);
    e.config.checks = {
        check("dc", C, {{"m", 1}, {"entries", entries}, {"D", "all"}, {"A", {{"decay_tol", 1e-6}, {"K", 6}}}},
              "counting condition at the block ends"),
        check("kothe_dc", C, {{"m", 1}, {"entries", entries}, {"variant", 1}, {"check_A", false}}, "matrix form, p = 1"),
        check("kothe_dc", C, {{"m", 1}, {"entries", entries}, {"variant", 0}, {"check_A", false}}, "matrix form, max"),
        check("hypercyclicity", R, {{"mode", "refutation"}, {"horizon", 10000}, {"K", 4}, {"ell", 0}},
              "forward family bounded below"),
        check("continuity", C, {{"lo", -10000}, {"hi", 10000}, {"K", 6}}),
    };
    e.notes = {"a(j,k) = 1 at every block end j, so the ratio at step n is nu_{N_k - n}"};
  } else if (name == "ex3_s_Z_hc_not_mly") {
    e.summary = "s(Z), left blocks (n twos, n halves, n^2 ones), 2 on the right: hypercyclic, not mean Li-Yorke chaotic";
    Sequence w{BlocksForm{TwosHalvesOnes{2.0, 0.5}}, ConstantForm{LogScalar::from_real(2.0)}, 0};
    e.config = base(name, SpaceSpec::rapidly_decreasing(IndexSet::Z), WeightSpec{IndexSet::Z, w});
    e.config.checks = {
        check("hypercyclicity", C,
              {{"mode", "witness"},
               {"n", {{"poly", {0, "1/6", "3/2", "1/3"}}, {"from", 1}, {"count", 240}}},
               {"ell_lo", -5}, {"ell_hi", 5}, {"decay_tol", 1e-6}, {"K", 2}},
              "hypercyclicity witness n_k = (2k^3 + 9k^2 + k)/6"),
        check("cesaro", F, {{"anchor", 0}, {"horizon", 100000}, {"tol", 1e-3}, {"from", 3}},
              "Cesaro distance averages bounded below"),
        check("anchor_equivalence", C, {{"anchors", {{"lo", -2}, {"hi", 2}}}, {"horizon", 100000}, {"tol", 1e-3}, {"from", 3}},
              "anchors agree (all bounded below)"),
        check("continuity", C, {{"lo", -10000}, {"hi", 10000}, {"K", 6}}),
    };
  } else if (name == "ex4_lp_mly_not_hc") {
    e.summary = "l^2(nu, Z) with ramp-plateau nu, weights 1/2 left and 1 right: mean Li-Yorke chaotic, not hypercyclic";
    e.config = base(name, SpaceSpec::weighted_lp(2.0, ramp_plateau_nu(), IndexSet::Z), WeightSpec::sided(0.5, 1.0));
    const json entries = block_end_entries(6);
    const json probes = block_end_probes({1, 2, 3, 4, 5, 6, 10, 20, 100});
    const json A = {{"anchor", 0}, {"horizon", 100000}, {"tol", 1e-3}};
    e.config.checks = {
        check("mly", C, {{"m", 1}, {"entries", entries}, {"A", A}}, "averaged ratio at the block ends"),
        check("kothe_mly", C, {{"m", 1}, {"entries", entries}, {"variant", 2}, {"check_A", false}}, "matrix form, p = 2"),
        check("kothe_mly", C, {{"m", 1}, {"entries", entries}, {"variant", 0}, {"check_A", false}}, "matrix form, max"),
        check("acb", C, {{"probes", probes}, {"C", {1, 10, 100}}}, "absolute Cesaro boundedness falsified"),
        check("f3", C, {{"horizon", 100000}, {"tol", 1e-3}, {"probes", probes}, {"C", {1, 10, 100}}},
              "product averages vanish and ACB fails"),
        check("hypercyclicity", R, {{"mode", "refutation"}, {"horizon", 10000}, {"K", 4}, {"ell", 0}},
              "basis vectors bounded below"),
        check("cesaro", C, {{"anchor", 0}, {"horizon", 100000}, {"tol", 1e-3}}, "Cesaro distance averages vanish"),
        check("anchor_equivalence", C, {{"anchors", {{"lo", -2}, {"hi", 2}}}, {"horizon", 100000}, {"tol", 1e-3}},
              "anchors agree (all vanish)"),
        check("continuity", C, {{"lo", -10000}, {"hi", 10000}, {"K", 6}}),
    };
  } else if (name == "rolewicz_lp_N") {
    e.summary = "2B on l^2(N): distributionally and mean Li-Yorke chaotic";
    e.config = base(name, SpaceSpec::lp(2.0, IndexSet::N), WeightSpec::constant(2.0, IndexSet::N));
    json mly_entries = json::array();
    for (Index k = 1; k <= 6; ++k)
      mly_entries.push_back({{"k", k}, {"N", k + 2}, {"terms", json::array({{{"index", k + 3}}})}});
    e.config.checks = {
        check("dc_search", C, {{"m", 1}, {"k_lo", 1}, {"k_hi", 6}, {"anchors", {{"lo", 1}, {"hi", 200}}}, {"N_max", 200}},
              "single-term witness search"),
        check("dc", C,
              {{"m", 1}, {"entries", json::array({{{"k", 4}, {"N", 100}, {"terms", json::array({{{"index", 110}}})}}})}},
              "k = 4, N = 100, i = 110"),
        check("mly", C, {{"m", 1}, {"entries", mly_entries}, {"A", {{"anchor", 1}, {"horizon", 1000}}}},
              "geometric averages"),
        check("continuity", C, {{"lo", 1}, {"hi", 10000}, {"K", 6}}),
    };
  } else if (name == "unweighted_lp_N") {
    e.summary = "B on l^2(N): isometric on basis vectors, no chaos";
    e.config = base(name, SpaceSpec::lp(2.0, IndexSet::N), WeightSpec::constant(1.0, IndexSet::N));
    e.config.checks = {
        check("dc_search", F, {{"m", 1}, {"k_lo", 1}, {"k_hi", 6}, {"anchors", {{"lo", 1}, {"hi", 200}}}, {"N_max", 200}},
              "single-term witness search"),
        check("acb", F, {{"probes", basis_probes({1, 5, 50, 200}, {1, 10, 100, 1000})}, {"C", {1}}}, "C = 1 suffices"),
        check("hypercyclicity", R, {{"mode", "refutation"}, {"horizon", 10000}, {"K", 4}, {"ell", 1}},
              "forward family bounded below"),
        check("continuity", C, {{"lo", 1}, {"hi", 10000}, {"K", 6}}),
    };
  } else if (name == "halfweights_bilateral") {
    e.summary = "B_w with w = 1/2 on l^2(Z): orbits of c00 vectors decay geometrically";
    e.config = base(name, SpaceSpec::lp(2.0, IndexSet::Z), WeightSpec::constant(0.5, IndexSet::Z));
    const json probes = basis_probes({0, 5}, {10, 1000, 100000});
    e.config.checks = {
        check("acb", F, {{"probes", probes}, {"C", {1}}}, "no falsifier"),
        check("lp_c0_dc", F, {{"S", {0}}, {"eps", 1e-2}, {"k_lo", 1}, {"k_hi", 6}, {"N_max", 1000}}, "products never exceed 1"),
        check("f3", F, {{"horizon", 100000}, {"tol", 1e-3}, {"probes", probes}, {"C", {1, 10, 100}}},
              "liminf condition holds, ACB not falsified"),
        check("dc_A", C, {{"D", "all"}, {"anchors", {0, 5}}, {"decay_tol", 1e-6}, {"K", 6}}, "decay along N"),
        check("continuity", C, {{"lo", -10000}, {"hi", 10000}, {"K", 6}}),
    };
  } else {
    std::string known;
    for (const auto& n : catalog_names()) known += (known.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown catalog entry '" + name + "' (known: " + known + ")");
  }
  return e;
}

struct SuiteResult {
  std::string name;
  std::vector<CheckOutcome> outcomes;
  bool all_matched = true;
};

inline SuiteResult run_expected_suite(const CatalogEntry& entry) {
  SuiteResult s{entry.name, run_checks(entry.config, true), true};
  for (const auto& o : s.outcomes) s.all_matched = s.all_matched && o.report && o.matched;
  return s;
}

/// The entry as a standalone config document.
inline std::string export_config(const CatalogEntry& entry) { return config_json(entry.config).dump(2) + "\n"; }

}  // namespace wbshift

#endif  // WBSHIFT_CATALOG_HPP
