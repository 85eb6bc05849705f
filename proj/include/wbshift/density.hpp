#ifndef WBSHIFT_DENSITY_HPP
#define WBSHIFT_DENSITY_HPP

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wbshift/numerics.hpp"
#include "wbshift/sequence.hpp"

namespace wbshift {

struct Rational {
  Index num = 0;
  Index den = 1;

  double value() const { return double(num) / double(den); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

/// count / N > r, exactly.
inline bool ratio_exceeds(Index count, Index N, Rational r) {
  return static_cast<__int128>(count) * r.den > static_cast<__int128>(r.num) * N;
}

/// A subset of N given by membership, optionally with a closed-form counter
/// count(N) = card(A intersected with [1, N]).
struct IndexPredicate {
  std::function<bool(Index)> member;
  std::function<Index(Index)> counter;
  std::string label = "predicate";
  bool full = false;  // A = N

  static IndexPredicate all() {
    return {[](Index n) { return n >= 1; }, [](Index N) { return std::max<Index>(N, 0); }, "N", true};
  }
  static IndexPredicate evens() {
    return {[](Index n) { return n >= 1 && n % 2 == 0; }, [](Index N) { return std::max<Index>(N, 0) / 2; }, "evens"};
  }
  static IndexPredicate none() {
    return {[](Index) { return false; }, [](Index) { return Index(0); }, "empty"};
  }

  /// Union of the mirrored blocks -I_n (negative side of `layout`) over n with select(n).
  /// Block positions are mirrored through split - 1 so that block 1 starts at 1.
  static IndexPredicate mirrored_blocks(const Sequence& layout, std::function<bool(Index)> select,
                                        std::string label) {
    const auto* blocks = std::get_if<BlocksForm>(&layout.negative);
    if (!blocks) throw std::invalid_argument("mirrored_blocks: negative side is not block-structured");
    auto tmpl = std::make_shared<BlockTemplate>(blocks->tmpl);
    // prefix[n] = total length of selected blocks among 1..n
    auto prefix = std::make_shared<std::vector<Index>>(1, 0);
    auto extend = [tmpl, prefix, select](Index n) {
      while (Index(prefix->size()) <= n) {
        const Index b = Index(prefix->size());
        prefix->push_back(prefix->back() + (select(b) ? block_length<Index>(*tmpl, b) : 0));
      }
    };
    IndexPredicate out;
    out.label = std::move(label);
    out.member = [tmpl, select](Index t) { return t >= 1 && select(locate_block<Index>(*tmpl, t)); };
    out.counter = [tmpl, prefix, extend, select](Index N) -> Index {
      if (N < 1) return 0;
      const Index n = locate_block<Index>(*tmpl, N);
      extend(n);
      Index c = (*prefix)[std::size_t(n - 1)];
      if (select(n)) c += N - cumulative_length<Index>(*tmpl, n - 1);
      return c;
    };
    return out;
  }

  /// Finite-horizon set from an explicit indicator over 1..H (members beyond H are absent).
  static IndexPredicate from_indicator(std::vector<bool> indicator, std::string label) {
    auto ind = std::make_shared<std::vector<bool>>(std::move(indicator));
    auto prefix = std::make_shared<std::vector<Index>>(ind->size() + 1, 0);
    for (std::size_t t = 0; t < ind->size(); ++t) (*prefix)[t + 1] = (*prefix)[t] + ((*ind)[t] ? 1 : 0);
    IndexPredicate out;
    out.label = std::move(label);
    out.member = [ind](Index n) { return n >= 1 && std::size_t(n) <= ind->size() && (*ind)[std::size_t(n - 1)]; };
    out.counter = [prefix](Index N) {
      if (N < 1) return Index(0);
      return (*prefix)[std::min<std::size_t>(std::size_t(N), prefix->size() - 1)];
    };
    return out;
  }

  bool has_counter() const { return static_cast<bool>(counter); }

  Index count(Index N) const {
    if (counter) return counter(N);
    Index c = 0;
    for (Index n = 1; n <= N; ++n) c += member(n) ? 1 : 0;
    return c;
  }
};

inline double prefix_ratio(const IndexPredicate& A, Index N) {
  if (N < 1) throw std::invalid_argument("prefix_ratio: N must be >= 1");
  return double(A.count(N)) / double(N);
}

struct DensityEnvelope {
  double running_max = 0.0;
  double running_min = 1.0;
  Index argmax = 0;
  Index argmin = 0;
  Index horizon = 0;
};

inline DensityEnvelope density_envelope(const IndexPredicate& A, const std::vector<Index>& horizons) {
  if (horizons.empty()) throw std::invalid_argument("density_envelope: no horizons");
  DensityEnvelope e;
  for (std::size_t h = 0; h < horizons.size(); ++h) {
    if (h > 0 && horizons[h] <= horizons[h - 1]) throw std::invalid_argument("density_envelope: horizons must increase");
    const double r = prefix_ratio(A, horizons[h]);
    if (h == 0 || r > e.running_max) e.running_max = r, e.argmax = horizons[h];
    if (h == 0 || r < e.running_min) e.running_min = r, e.argmin = horizons[h];
  }
  e.horizon = horizons.back();
  return e;
}

/// Envelope over every N in [lo, hi], counting incrementally from count(lo).
inline DensityEnvelope scan_prefix_ratios(const IndexPredicate& A, Index lo, Index hi) {
  if (lo < 1 || hi < lo) throw std::invalid_argument("scan_prefix_ratios: need 1 <= lo <= hi");
  DensityEnvelope e;
  Index c = A.count(lo);
  // Exact comparisons of c/N via cross-multiplication.
  Index best_c = c, best_n = lo, worst_c = c, worst_n = lo;
  for (Index N = lo + 1; N <= hi; ++N) {
    c += A.member(N) ? 1 : 0;
    if (static_cast<__int128>(c) * best_n > static_cast<__int128>(best_c) * N) best_c = c, best_n = N;
    if (static_cast<__int128>(c) * worst_n < static_cast<__int128>(worst_c) * N) worst_c = c, worst_n = N;
  }
  e.running_max = double(best_c) / double(best_n);
  e.running_min = double(worst_c) / double(worst_n);
  e.argmax = best_n;
  e.argmin = worst_n;
  e.horizon = hi;
  return e;
}

/// Smallest N0 in [1, hi] with count(N)/N > r for every N in [N0, hi], or nullopt if
/// the inequality fails at hi.
inline std::optional<Index> threshold_onset(const IndexPredicate& A, Rational r, Index hi) {
  if (hi < 1) throw std::invalid_argument("threshold_onset: hi must be >= 1");
  Index last_fail = 0;
  Index c = 0;
  for (Index N = 1; N <= hi; ++N) {
    c += A.member(N) ? 1 : 0;
    if (!ratio_exceeds(c, N, r)) last_fail = N;
  }
  if (last_fail == hi) return std::nullopt;
  return last_fail + 1;
}

/// True iff count(N)/N > r for all N in [lo, hi] (exact).
inline bool ratio_exceeds_throughout(const IndexPredicate& A, Rational r, Index lo, Index hi) {
  Index c = A.count(lo);
  if (!ratio_exceeds(c, lo, r)) return false;
  for (Index N = lo + 1; N <= hi; ++N) {
    c += A.member(N) ? 1 : 0;
    if (!ratio_exceeds(c, N, r)) return false;
  }
  return true;
}

}  // namespace wbshift

#endif  // WBSHIFT_DENSITY_HPP
