#include <gtest/gtest.h>

#include <cmath>

#include "gen.hpp"
#include "wbshift/dc_cert.hpp"
#include "wbshift/mly_cert.hpp"

// Randomized invariants; every suite draws gen::kCases instances from a fixed seed.

using namespace wbshift;

namespace {

double rel(double a, double b) { return std::fabs(a - b) / std::max({1.0, std::fabs(a), std::fabs(b)}); }

Index anchor_for(gen::Gen& g, IndexSet J, Index span) { return J == IndexSet::N ? g.integer(1, span) : g.integer(-span, span); }

}  // namespace

TEST(Property, ConditionCOnKotheInstances) {
  gen::Gen g(101);
  for (int c = 0; c < gen::kCases; ++c) {
    const IndexSet J = g.coin() ? IndexSet::Z : IndexSet::N;
    const SpaceSpec s = g.space(J);
    std::vector<SparseVector> xs;
    for (int i = 0; i < 4; ++i) xs.push_back(g.vector(J == IndexSet::N ? 1 : -500, 500, 8));
    ASSERT_TRUE(condition_C_check(s, xs, 8).certified()) << s.label;
  }
}

TEST(Property, KotheMatrixAxioms) {
  gen::Gen g(102);
  for (int c = 0; c < gen::kCases; ++c) {
    const auto a = KotheMatrix::power_in_k(g.sequence_at_least_one());
    ASSERT_TRUE(matrix_invariant_check(a, IndexSet::Z, {-2000, 2000}, 8, 20, std::uint64_t(c)).certified());
  }
}

TEST(Property, SeminormMonotoneHomogeneousSubadditive) {
  gen::Gen g(103);
  for (int c = 0; c < gen::kCases; ++c) {
    const IndexSet J = g.coin() ? IndexSet::Z : IndexSet::N;
    const SpaceSpec s = g.space(J);
    const Index lo = J == IndexSet::N ? 1 : -300;
    const SparseVector x = g.vector(lo, 300), y = g.vector(lo, 300);
    const LogScalar lambda = LogScalar::from_real(g.nonzero(-5, 5));
    for (int k = 1; k <= 5; ++k) {
      const LogScalar nx = seminorm(s, x, k);
      ASSERT_LE(nx.logmag(), seminorm(s, x, k + 1).logmag() + 1e-12 * (1 + std::fabs(nx.logmag())));
      ASSERT_LT(rel(seminorm(s, x.scaled(lambda), k).logmag(), nx.logmag() + lambda.logmag()), 1e-12);
      const LogScalar sum = seminorm(s, x + y, k), bound = nx + seminorm(s, y, k);
      if (!sum.is_zero()) ASSERT_LE(sum.logmag(), bound.logmag() + 1e-12 * (1 + std::fabs(bound.logmag())));
    }
  }
}

TEST(Property, SeminormMatchesNaiveSummation) {
  gen::Gen g(104);
  for (int c = 0; c < gen::kCases; ++c) {
    const double p = g.coin() ? 1.0 : 2.0;
    const Sequence nu = g.sequence_at_least_one();
    const SpaceSpec s = SpaceSpec::kothe(p, KotheMatrix::power_in_k(nu), IndexSet::Z);
    const SparseVector x = g.vector(-200, 200, 10);
    const int k = int(g.integer(1, 4));
    double direct = 0;
    for (const auto& [j, v] : x) direct += std::pow(std::fabs(v.to_real()) * std::pow(nu.at(j).to_real(), k), p);
    direct = std::pow(direct, 1.0 / p);
    ASSERT_LT(std::fabs(seminorm(s, x, k).to_real() - direct), 1e-10 * direct) << s.label;
  }
}

TEST(Property, MetricSymmetricBoundedTruncated) {
  gen::Gen g(105);
  for (int c = 0; c < gen::kCases; ++c) {
    SpaceSpec s = g.space(IndexSet::Z);
    const SparseVector x = g.vector(-100, 100), y = g.vector(-100, 100);
    const MetricValue dxy = metric(s, x, y), dyx = metric(s, y, x);
    ASSERT_DOUBLE_EQ(dxy.value, dyx.value);
    ASSERT_GE(dxy.value, 0.0);
    ASSERT_LE(dxy.value, 1.0);
    ASSERT_DOUBLE_EQ(dxy.tail_bound, std::ldexp(1.0, -40));
    SpaceSpec deep = s;
    deep.metric_depth = 80;
    const double full = metric(deep, x, y).value;
    ASSERT_GE(full + 1e-15, dxy.value);
    ASSERT_LE(full, dxy.value + dxy.tail_bound + 1e-15);
    ASSERT_EQ(metric(s, x, x).value, 0.0);
  }
}

TEST(Property, ProductCocycle) {
  gen::Gen g(106);
  for (int c = 0; c < gen::kCases; ++c) {
    const WeightSpec w{IndexSet::Z, g.sequence()};
    const Index i = g.integer(-10000, 10000), n = g.integer(0, 5000), m = g.integer(0, 5000);
    const LogScalar lhs = product(w, i, n + m), rhs = product(w, i, n) * product(w, i - n, m);
    ASSERT_LT(rel(lhs.logmag(), rhs.logmag()), 1e-10);
  }
}

TEST(Property, DcCountsInvariantUnderScaling) {
  gen::Gen g(107);
  for (int c = 0; c < gen::kCases; ++c) {
    const IndexSet J = g.coin() ? IndexSet::Z : IndexSet::N;
    const ShiftOperator B(g.space(J), WeightSpec{J, g.sequence()});
    WitnessScheduleDC s;
    s.check_A = false;
    const Index k = g.integer(1, 4);
    std::vector<WitnessTerm> terms{{anchor_for(g, J, 100), LogScalar::from_real(g.nonzero())}};
    if (g.coin()) terms.push_back({terms[0].index + g.integer(1, 20), LogScalar::from_real(g.nonzero())});
    s.entries.push_back({k, g.integer(1, 200), terms});
    WitnessScheduleDC t = s;
    const LogScalar lambda = LogScalar::from_real(g.nonzero(-20, 20));
    for (auto& term : t.entries[0].terms) term.coef = term.coef * lambda;
    ASSERT_EQ(check_dc_condition_B(B, s).table.at<Index>(0, "count"), check_dc_condition_B(B, t).table.at<Index>(0, "count"));
  }
}

TEST(Property, MlyAveragesInvariantUnderScaling) {
  gen::Gen g(108);
  for (int c = 0; c < gen::kCases; ++c) {
    const IndexSet J = g.coin() ? IndexSet::Z : IndexSet::N;
    const ShiftOperator B(g.space(J), WeightSpec{J, g.sequence()});
    WitnessScheduleMLY s;
    s.check_A = false;
    std::vector<WitnessTerm> terms{{anchor_for(g, J, 100), LogScalar::from_real(g.nonzero())}};
    if (g.coin()) terms.push_back({terms[0].index + g.integer(1, 20), LogScalar::from_real(g.nonzero())});
    s.entries.push_back({g.integer(1, 4), g.integer(1, 200), terms});
    WitnessScheduleMLY t = s;
    const LogScalar lambda = LogScalar::from_real(g.nonzero(-20, 20));
    for (auto& term : t.entries[0].terms) term.coef = term.coef * lambda;
    const LogScalar a = check_mly_condition_B(B, s).table.at<LogScalar>(0, "average");
    const LogScalar b = check_mly_condition_B(B, t).table.at<LogScalar>(0, "average");
    ASSERT_EQ(a.is_zero(), b.is_zero());
    if (!a.is_zero()) ASSERT_LT(rel(a.logmag(), b.logmag()), 1e-10);
  }
}

TEST(Property, KotheFormAgreesWithSeminormForm) {
  gen::Gen g(109);
  for (int c = 0; c < gen::kCases; ++c) {
    const IndexSet J = g.coin() ? IndexSet::Z : IndexSet::N;
    const ShiftOperator B(g.space(J), WeightSpec{J, g.sequence()});
    std::vector<WitnessEntry> entries;
    const Index N = g.integer(1, 150);
    std::vector<WitnessTerm> terms{{anchor_for(g, J, 80), LogScalar::from_real(g.nonzero())}};
    if (g.coin()) terms.push_back({terms[0].index + g.integer(1, 10), LogScalar::from_real(g.nonzero())});
    entries.push_back({g.integer(1, 4), N, terms});
    WitnessScheduleDC d;
    d.entries = entries;
    d.check_A = false;
    ASSERT_EQ(check_dc_condition_B(B, d).table.at<Index>(0, "count"), check_kothe_dc(B, d).table.at<Index>(0, "count"))
        << B.space.label;
    WitnessScheduleMLY m;
    m.entries = entries;
    m.check_A = false;
    const LogScalar a = check_mly_condition_B(B, m).table.at<LogScalar>(0, "average");
    const LogScalar b = check_kothe_mly(B, m).table.at<LogScalar>(0, "average");
    ASSERT_EQ(a.is_zero(), b.is_zero());
    if (!a.is_zero()) ASSERT_LT(rel(a.logmag(), b.logmag()), 1e-10) << B.space.label;
  }
}

TEST(Property, CesaroAveragesBoundedAndSlowlyVarying) {
  gen::Gen g(110);
  for (int c = 0; c < gen::kCases; ++c) {
    const IndexSet J = g.coin() ? IndexSet::Z : IndexSet::N;
    const ShiftOperator B(g.space(J), WeightSpec{J, g.sequence()});
    const auto s = cesaro_distance_series(B, anchor_for(g, J, 200), g.integer(1, 2000));
    for (Index n = 1; n <= s.horizon(); ++n) {
      const double t = s.terms[std::size_t(n - 1)], a = s.averages[std::size_t(n - 1)];
      ASSERT_GE(t, 0.0);
      ASSERT_LE(t, 1.0);
      ASSERT_GE(a, 0.0);
      ASSERT_LE(a, 1.0 + 1e-15);
      if (n > 1) ASSERT_LE(std::fabs(a - s.averages[std::size_t(n - 2)]), 1.0 / double(n) + 1e-15);
    }
  }
}
