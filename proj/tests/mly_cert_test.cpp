#include <gtest/gtest.h>

#include <cmath>

#include "gen.hpp"
#include "wbshift/mly_cert.hpp"

using namespace wbshift;

namespace {

Sequence ramp_nu() { return {ConstantForm{LogScalar::one()}, BlocksForm{RampPlateau{10}}, 1}; }

ShiftOperator ex4() { return {SpaceSpec::weighted_lp(2.0, ramp_nu(), IndexSet::Z), WeightSpec::sided(0.5, 1.0)}; }

ShiftOperator ex3() {
  const Sequence w{BlocksForm{TwosHalvesOnes{2.0, 0.5}}, ConstantForm{LogScalar::from_real(2.0)}, 0};
  return {SpaceSpec::rapidly_decreasing(IndexSet::Z), WeightSpec{IndexSet::Z, w}};
}

ShiftOperator half() { return {SpaceSpec::lp(2.0, IndexSet::Z), WeightSpec::constant(0.5)}; }

WitnessScheduleMLY block_ends(Index k_hi) {
  WitnessScheduleMLY s;
  for (Index k = 1; k <= k_hi; ++k) {
    const Index N = cumulative_length<Index>(RampPlateau{10}, k);
    s.entries.push_back({k, N, {{N, LogScalar::one()}}});
  }
  s.check_A = false;
  return s;
}

}  // namespace

TEST(Cesaro, MatchesDenseMaterialization) {
  // w_{-1}, w_{-2}, ... written out block by block, then summed term by term.
  const Index H = 10000;
  const auto left = gen::naive_side(TwosHalvesOnes{2.0, 0.5}, H, false);
  const auto s = cesaro_distance_series(ex3(), 0, H);
  double logp = 0, sum = 0, lo = 1e300;
  for (Index n = 1; n <= H; ++n) {
    logp += std::log(left[std::size_t(n - 1)]);
    double d = 0;
    for (int k = 1; k <= 40; ++k) d += std::ldexp(std::min(1.0, std::exp(logp + k * std::log(double(n) + 1))), -k);
    sum += d;
    ASSERT_NEAR(s.terms[std::size_t(n - 1)], d, 1e-12) << n;
    if (n >= 3) lo = std::min(lo, sum / double(n));
  }
  EXPECT_NEAR(s.running_min(3).first, lo, 1e-12);
  EXPECT_GT(lo, 0.05);
}

TEST(Cesaro, BoundedBelowAtEveryAnchor) {
  const auto r = check_cesaro_condition_A(ex3(), 0, 100000, 1e-3, 3);
  EXPECT_EQ(r.verdict, Verdict::failed);
  EXPECT_GT(r.get<double>("running_min"), 0.05);
  EXPECT_TRUE(anchor_equivalence_probe(ex3(), {-2, -1, 0, 1, 2}, 20000, 1e-3, 3).certified());
}

TEST(Cesaro, GeometricDecayMeetsTwoOverN) {
  const auto r = check_cesaro_condition_A(ex4(), 0, 100000);
  EXPECT_TRUE(r.certified());
  EXPECT_TRUE(r.get<bool>("average_le_2_over_N"));
  const auto s = cesaro_distance_series(half(), 3, 500);
  for (Index n = 1; n <= 500; ++n) ASSERT_LE(s.averages[std::size_t(n - 1)] * double(n), 2.0);
}

TEST(MlyConditionB, BlockEndAveragesMatchDirectSums) {
  const ShiftOperator B = ex4();
  const auto r = check_mly_condition_B(B, block_ends(6));
  EXPECT_TRUE(r.certified());
  for (Index k = 1; k <= 6; ++k) {
    const double avg = r.table.at<LogScalar>(std::size_t(k - 1), "average").to_real();
    EXPECT_GE(avg, double(k) / 2.0) << k;
  }
  // direct oracle for k <= 3: (1/N) sum_{n<=N} nu_{N-n} since w = 1 on the right and nu_N = 1
  for (Index k = 1; k <= 3; ++k) {
    const Index N = cumulative_length<Index>(RampPlateau{10}, k);
    const auto right = gen::naive_side(RampPlateau{10}, N, true);
    double sum = 0;
    for (Index n = 1; n <= N; ++n) sum += N - n >= 1 ? right[std::size_t(N - n - 1)] : 1.0;
    EXPECT_NEAR(r.table.at<LogScalar>(std::size_t(k - 1), "average").to_real(), sum / double(N), 1e-9 * sum / double(N));
  }
}

TEST(MlyConditionB, KotheFormsAgree) {
  const ShiftOperator B = ex4();
  const auto a = check_mly_condition_B(B, block_ends(5));
  const auto b = check_kothe_mly(B, block_ends(5), 2.0);
  for (std::size_t row = 0; row < a.table.size(); ++row) {
    const double x = a.table.at<LogScalar>(row, "average").logmag();
    const double y = b.table.at<LogScalar>(row, "average").logmag();
    EXPECT_NEAR(x, y, 1e-10 * std::max(1.0, std::fabs(x)));
  }
  EXPECT_TRUE(check_kothe_mly(B, block_ends(5), 0.0).certified());
}

TEST(MlyConditionB, SmallAveragesFail) {
  WitnessScheduleMLY s;
  s.entries.push_back({2, 100, {{0, LogScalar::one()}}});
  s.check_A = false;
  const auto r = check_mly_condition_B(half(), s);
  EXPECT_EQ(r.verdict, Verdict::failed);
  EXPECT_EQ(*r.failed_k, 2);
}

TEST(Acb, FalsifiedWithHugeProbe) {
  std::vector<AcbProbe> probes;
  for (Index k : {1, 2, 3, 10, 100}) {
    const BigIndex N = cumulative_length<BigIndex>(RampPlateau{10}, k);
    probes.push_back({"e_N", {{N, LogScalar::one()}}, {N}});
  }
  const auto r = check_acb(ex4(), probes, {1, 10, 100});
  EXPECT_TRUE(r.certified());
  // C = 100 needs the k = 100 block end
  EXPECT_EQ(r.table.at<std::string>(2, "N"), to_string(cumulative_length<BigIndex>(RampPlateau{10}, 100)));
}

TEST(Acb, ContractionHasNoFalsifier) {
  const auto r = check_acb(half(), {basis_probe(0, 10), basis_probe(5, 100000)}, {1});
  EXPECT_EQ(r.verdict, Verdict::failed);
  EXPECT_LT(r.get<LogScalar>("max_average_ratio").to_real(), 1.0);
  // (1/N) sum_{n<=N} 2^-n
  EXPECT_NEAR(cesaro_norm_ratio(half(), basis_probe(0, 10), 10).to_real(), (1 - std::ldexp(1.0, -10)) / 10, 1e-14);
}

TEST(F3, HoldsOnRampLayoutFailsOnContraction) {
  F3Options opt;
  for (Index k : {1, 2, 3, 100}) {
    const BigIndex N = cumulative_length<BigIndex>(RampPlateau{10}, k);
    opt.probes.push_back({"e_N", {{N, LogScalar::one()}}, {N}});
  }
  const auto r = check_f3(ex4(), opt);
  EXPECT_TRUE(r.certified());
  EXPECT_TRUE(r.get<bool>("average_le_2_over_N"));
  opt.probes = {basis_probe(0, 1000)};
  EXPECT_EQ(check_f3(half(), opt).verdict, Verdict::failed);
}
