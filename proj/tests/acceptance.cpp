// Acceptance run: one PASS/FAIL line per criterion, with timings.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "gen.hpp"
#include "wbshift/catalog.hpp"
#include "wbshift/dc_cert.hpp"
#include "wbshift/mly_cert.hpp"

using namespace wbshift;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

Sequence ramp_nu() { return {ConstantForm{LogScalar::one()}, BlocksForm{RampPlateau{10}}, 1}; }

ShiftOperator ex1() {
  const Sequence w{BlocksForm{AlternatingPowers{2.0}}, ConstantForm{LogScalar::from_real(2.0)}, 0};
  return {SpaceSpec::rapidly_decreasing(IndexSet::Z), WeightSpec{IndexSet::Z, w}};
}

ShiftOperator ex2() {
  return {SpaceSpec::kothe(1.0, KotheMatrix::power_in_k(ramp_nu()), IndexSet::Z), WeightSpec::sided(0.5, 1.0)};
}

ShiftOperator ex3() {
  const Sequence w{BlocksForm{TwosHalvesOnes{2.0, 0.5}}, ConstantForm{LogScalar::from_real(2.0)}, 0};
  return {SpaceSpec::rapidly_decreasing(IndexSet::Z), WeightSpec{IndexSet::Z, w}};
}

ShiftOperator ex4() { return {SpaceSpec::weighted_lp(2.0, ramp_nu(), IndexSet::Z), WeightSpec::sided(0.5, 1.0)}; }

BigIndex block_end(Index k) { return cumulative_length<BigIndex>(RampPlateau{10}, k); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Outcome odd_block_density() {
  const auto A = IndexPredicate::mirrored_blocks(ex1().weights.seq, [](Index n) { return n % 2 == 1; }, "odd blocks");
  const auto N0 = threshold_onset(A, {1, 6}, 10000);
  if (!N0) return {false, "prefix ratio never exceeds 1/6 on [1, 10000]"};
  const bool above = ratio_exceeds_throughout(A, {1, 6}, *N0, 1000000);
  const auto env = scan_prefix_ratios(A, *N0, 1000000);
  return {above && *N0 <= 50, "N0 = " + std::to_string(*N0) + ", min ratio " + fmt("%.6f", env.running_min) + " at N = " +
                                  std::to_string(env.argmin)};
}

Outcome ex1_not_dc() {
  const auto r = check_dc_condition_A_refutation(ex1(), {0, 0.5, 1, 1000000, {1, 6}, 10000});
  std::string d = std::string(to_string(r.verdict));
  if (r.has("N0")) d += ", N0 = " + std::to_string(r.get<Index>("N0")) + ", min ratio " + fmt("%.6f", r.get<double>("min_prefix_ratio"));
  return {r.verdict == Verdict::refuted, d};
}

Outcome ex1_hypercyclic() {
  HypercyclicityOptions opt;
  for (Index k = 1; k <= 200; ++k) opt.n_seq.push_back(2 * k * (2 * k - 1) + k);
  opt.K = 4;
  const auto r = check_hypercyclicity_witness(ex1(), opt);
  const Index K0 = r.get<Index>("decay_onset");
  Index worst_k1 = 0;
  for (std::size_t row = 0; row < r.table.size(); ++row)
    if (r.table.at<Index>(row, "k") == 1) worst_k1 = std::max(worst_k1, r.table.at<Index>(row, "threshold"));
  return {K0 <= 30 && r.certified(), "K0 = " + std::to_string(K0) + " over k <= 4 (K0 = " + std::to_string(worst_k1) +
                                         " for seminorm 1), limit 30"};
}

Outcome ex2_dc() {
  const ShiftOperator B = ex2();
  bool ok = true;
  std::string d;
  for (Index k = 2; k <= 6; ++k) {
    const Index N = narrow_or_throw(block_end(k), "N_k");
    WitnessScheduleDC s;
    s.entries.push_back({k, N, {{N, LogScalar::one()}}});
    s.check_A = false;
    const auto r = check_dc_condition_B(B, s);
    const Index count = r.table.at<Index>(0, "count");
    ok = ok && count_exceeds(count, N, k);
    if (k == 6) d = "k = 6: count " + std::to_string(count) + " of N_6 = " + std::to_string(N);
  }
  return {ok, d};
}

Outcome ex2_not_hc() {
  const auto r = check_hypercyclicity_refutation(ex2(), 10000, 4, 0);
  return {r.verdict == Verdict::refuted, "min value " + to_decimal(r.get<LogScalar>("min_value"), 6)};
}

Outcome ex3_not_mly() {
  // Dense oracle: weights w_{-1}, ..., w_{-10^4} written out, terms summed directly.
  const Index H = 10000;
  const auto left = gen::naive_side(TwosHalvesOnes{2.0, 0.5}, H, false);
  double logp = 0, sum = 0, oracle_min = 1e300;
  for (Index n = 1; n <= H; ++n) {
    logp += std::log(left[std::size_t(n - 1)]);
    double d = 0;
    for (int k = 1; k <= 40; ++k) d += std::ldexp(std::min(1.0, std::exp(logp + k * std::log(double(n) + 1))), -k);
    sum += d;
    if (n >= 3) oracle_min = std::min(oracle_min, sum / double(n));
  }
  const double lambda = oracle_min / 2;
  const auto s = cesaro_distance_series(ex3(), 0, 100000);
  const double lo = s.running_min(3).first;
  CesaroSeries head = s;
  head.averages.resize(std::size_t(H));
  head.terms.resize(std::size_t(H));
  const bool agree = std::fabs(head.running_min(3).first - oracle_min) <= 1e-12;
  return {lambda > 0.05 && lo >= lambda && agree, "oracle min " + fmt("%.6f", oracle_min) + " on [3, 1e4], lambda " +
                                                     fmt("%.6f", lambda) + ", running min " + fmt("%.6f", lo) +
                                                     " on [3, 1e5]"};
}

Outcome ex4_mly() {
  const ShiftOperator B = ex4();
  const auto a = check_cesaro_condition_A(B, 0, 100000);
  WitnessScheduleMLY s;
  s.check_A = false;
  for (Index k = 1; k <= 6; ++k) {
    const Index N = narrow_or_throw(block_end(k), "N_k");
    s.entries.push_back({k, N, {{N, LogScalar::one()}}});
  }
  s.target_scale = 0.5;
  const auto b = check_mly_condition_B(B, s);
  double min_excess = 1e300;
  for (std::size_t row = 0; row < b.table.size(); ++row)
    min_excess = std::min(min_excess, b.table.at<LogScalar>(row, "average").to_real() - (double(row) + 1) / 2);
  return {a.get<bool>("average_le_2_over_N") && b.certified(),
          "max N * average " + fmt("%.6f", a.get<double>("max_partial_sum")) + ", min(average - k/2) " +
              fmt("%.4f", min_excess)};
}

Outcome ex4_f3() {
  F3Options opt;
  for (Index k : {1, 2, 3, 4, 5, 6, 10, 20, 100}) opt.probes.push_back({"e_N" + std::to_string(k), {{block_end(k), LogScalar::one()}}, {block_end(k)}});
  const auto r = check_f3(ex4(), opt);
  std::string d = "acb " + r.get<std::string>("acb") + ", product running min " + fmt("%.3e", r.get<double>("product_running_min"));
  for (std::size_t row = 0; row < r.table.size(); ++row)
    d += ", C = " + fmt("%g", r.table.at<double>(row, "C")) + " by " + r.table.at<std::string>(row, "probe");
  return {r.get<bool>("acb_falsified") && r.get<bool>("average_le_2_over_N"), d};
}

Outcome baselines() {
  const auto t0 = std::chrono::steady_clock::now();
  SearchOptions opt;
  for (Index i = 1; i <= 200; ++i) opt.anchors.push_back(i);
  opt.N_max = 200;
  const ShiftOperator rolewicz(SpaceSpec::lp(2.0, IndexSet::N), WeightSpec::constant(2.0, IndexSet::N));
  const auto ok = search_witness_dc(rolewicz, opt);
  const ShiftOperator flat(SpaceSpec::lp(2.0, IndexSet::N), WeightSpec::constant(1.0, IndexSet::N));
  const auto bad = search_witness_dc(flat, opt);
  std::vector<AcbProbe> probes;
  for (Index j : {1, 5, 50, 200})
    for (Index N : {1, 10, 100, 1000}) probes.push_back(basis_probe(j, N));
  const auto acb = check_acb(flat, probes, {1});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {ok.report.certified() && bad.report.verdict == Verdict::failed && acb.verdict == Verdict::failed && secs < 5,
          std::string("rolewicz search ") + to_string(ok.report.verdict) + ", unweighted search " +
              to_string(bad.report.verdict) + ", unweighted acb " + to_string(acb.verdict)};
}

Outcome property_suites() {
  const std::string cmd = std::string(WBSHIFT_PROPERTIES_PATH) + " --gtest_brief=1 > /dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  const bool ok = WIFEXITED(raw) && WEXITSTATUS(raw) == 0;
  return {ok, std::to_string(gen::kCases) + " cases per suite, property binary " + (ok ? "green" : "red")};
}

std::string full_catalog_json() {
  std::ostringstream os;
  for (const auto& name : catalog_names()) {
    const CatalogEntry e = build_example(name);
    const auto outcomes = run_checks(e.config, true);
    write_outcomes(os, outcomes, e.config, "json");
  }
  return os.str();
}

Outcome determinism() {
  const std::string a = full_catalog_json(), b = full_catalog_json();
  return {a == b, std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different")};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit;  // seconds; 0: none
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "odd mirrored blocks have lower density above 1/6", 1, odd_block_density},
      {2, "alternating layout: decay along a density-one set refuted", 10, ex1_not_dc},
      {3, "alternating layout: hypercyclicity witness settles by k = 30", 5, ex1_hypercyclic},
      {4, "ramp-plateau Koethe space: counting condition at block ends", 5, ex2_dc},
      {5, "ramp-plateau Koethe space: forward family bounded below", 0, ex2_not_hc},
      {6, "twos-halves-ones layout: Cesaro distance averages bounded below", 0, ex3_not_mly},
      {7, "ramp-plateau weighted l^2: averaged conditions hold", 10, ex4_mly},
      {8, "ramp-plateau weighted l^2: product averages vanish, ACB falsified", 0, ex4_f3},
      {9, "baselines: Rolewicz and unweighted shifts", 5, baselines},
      {10, "property suites", 0, property_suites},
      {11, "full catalog is deterministic", 0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.limit == 0 || secs < c.limit;
    const bool pass = o.pass && in_time;
    failed += pass ? 0 : 1;
    std::printf("criterion %2d: %s  %s: %s (%.3f s%s)\n", c.id, pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs,
                in_time ? "" : ", over time limit");
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
