#ifndef WBSHIFT_TESTS_GEN_HPP
#define WBSHIFT_TESTS_GEN_HPP

// Seeded generators for the randomized suites, plus naive sequence oracles.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "wbshift/numerics.hpp"
#include "wbshift/sequence.hpp"
#include "wbshift/spaces.hpp"
#include "wbshift/weights.hpp"

namespace gen {

using wbshift::Index;
using wbshift::LogScalar;

inline constexpr int kCases = 200;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  Index integer(Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  /// Nonzero value with magnitude in [e^-lo_mag, e^hi_mag].
  double nonzero(double log_lo = -3.0, double log_hi = 3.0) {
    const double m = std::exp(real(log_lo, log_hi));
    return coin() ? m : -m;
  }

  double p() {
    switch (integer(0, 3)) {
      case 0: return 0.0;
      case 1: return 1.0;
      case 2: return 2.0;
      default: return real(1.0, 4.0);
    }
  }

  wbshift::SparseVector vector(Index lo, Index hi, int max_terms = 6) {
    wbshift::SparseVector v;
    const int n = int(integer(1, max_terms));
    for (int t = 0; t < n; ++t) v.set(integer(lo, hi), LogScalar::from_real(nonzero()));
    return v;
  }

  wbshift::BlockTemplate block_template() {
    switch (integer(0, 2)) {
      case 0: return wbshift::AlternatingPowers{real(1.1, 4.0)};
      case 1: return wbshift::RampPlateau{integer(2, 5)};
      default: return wbshift::TwosHalvesOnes{real(1.1, 3.0), real(0.2, 0.9)};
    }
  }

  wbshift::SideForm side() {
    switch (integer(0, 3)) {
      case 0: return wbshift::ConstantForm{LogScalar::from_real(real(0.2, 3.0))};
      case 1: return wbshift::GeometricForm{real(0.5, 2.0)};
      case 2: return wbshift::AbsPlusOneForm{};
      default: return wbshift::BlocksForm{block_template()};
    }
  }

  /// Positive sequence with a random side layout.
  wbshift::Sequence sequence() { return {side(), side(), integer(-3, 3)}; }

  /// Sequence with every value >= 1, so that nu^k is nondecreasing in k.
  wbshift::Sequence sequence_at_least_one() {
    auto side = [&]() -> wbshift::SideForm {
      switch (integer(0, 3)) {
        case 0: return wbshift::ConstantForm{LogScalar::from_real(real(1.0, 3.0))};
        case 1: return wbshift::AbsPlusOneForm{};
        case 2: return wbshift::BlocksForm{wbshift::RampPlateau{integer(2, 5)}};
        default: return wbshift::BlocksForm{wbshift::TwosHalvesOnes{real(1.5, 3.0), real(1.0, 1.5)}};
      }
    };
    return {side(), side(), integer(-3, 3)};
  }

  wbshift::SpaceSpec space(wbshift::IndexSet J) {
    const double p = this->p();
    switch (integer(0, 3)) {
      case 0: return wbshift::SpaceSpec::lp(p, J);
      case 1: return wbshift::SpaceSpec::weighted_lp(p, sequence(), J);
      case 2: return wbshift::SpaceSpec::kothe(p, wbshift::KotheMatrix::power_in_k(sequence_at_least_one()), J);
      default: return wbshift::SpaceSpec::kothe(p, wbshift::KotheMatrix::rapidly_decreasing(), J);
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Block n of a template written out value by value, in increasing index order.
inline std::vector<double> naive_block(const wbshift::BlockTemplate& t, Index n) {
  std::vector<double> out;
  if (const auto* a = std::get_if<wbshift::AlternatingPowers>(&t)) {
    const double e = (n % 2 == 0) ? 1.0 : -1.0;
    for (Index i = 0; i < n; ++i) out.push_back(std::pow(a->base, e));
    for (Index i = 0; i < n; ++i) out.push_back(std::pow(a->base, -e));
  } else if (const auto* r = std::get_if<wbshift::RampPlateau>(&t)) {
    for (Index v = 1; v <= n; ++v) out.push_back(double(v));
    Index len = 1;
    for (Index i = 0; i < n; ++i) len *= r->plateau_base;
    for (Index i = 0; i < len; ++i) out.push_back(double(n + 1));
    for (Index v = n; v >= 1; --v) out.push_back(double(v));
  } else {
    const auto& h = std::get<wbshift::TwosHalvesOnes>(t);
    for (Index i = 0; i < n; ++i) out.push_back(h.high);
    for (Index i = 0; i < n; ++i) out.push_back(h.low);
    for (Index i = 0; i < n * n; ++i) out.push_back(1.0);
  }
  return out;
}

/// Values at distance t = 1..count from the side's origin. On the nonnegative side
/// the side origin is split and blocks run rightward; on the negative side blocks
/// run leftward from split - 1 while each block still reads left to right.
inline std::vector<double> naive_side(const wbshift::BlockTemplate& t, Index count, bool right) {
  std::vector<double> out;
  for (Index n = 1; Index(out.size()) < count; ++n) {
    std::vector<double> b = naive_block(t, n);
    if (!right) std::reverse(b.begin(), b.end());
    out.insert(out.end(), b.begin(), b.end());
  }
  out.resize(std::size_t(count));
  return out;
}

}  // namespace gen

#endif  // WBSHIFT_TESTS_GEN_HPP
