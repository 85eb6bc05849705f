#ifndef WBSHIFT_SHIFT_HPP
#define WBSHIFT_SHIFT_HPP

#include <stdexcept>
#include <vector>

#include "wbshift/numerics.hpp"
#include "wbshift/positions.hpp"
#include "wbshift/spaces.hpp"
#include "wbshift/weights.hpp"

namespace wbshift {

/// B_w on a sequence space; unilateral iff the space is indexed by N.
struct ShiftOperator {
  SpaceSpec space;
  WeightSpec weights;

  ShiftOperator(SpaceSpec s, WeightSpec w) : space(std::move(s)), weights(std::move(w)) {
    if (weights.domain != space.J) throw std::invalid_argument("weights and space use different index sets");
  }

  bool unilateral() const { return space.J == IndexSet::N; }
};

/// (B x)_n = w_n x_{n+1}.
inline SparseVector apply(const ShiftOperator& B, const SparseVector& x) {
  SparseVector out;
  for (const auto& [i, v] : x) {
    const Index n = i - 1;
    if (B.unilateral() && n < 1) continue;
    out.add_to(n, weight_at(B.weights, n) * v);
  }
  return out;
}

/// B^n e_i = P(i, n) e_{i-n}.
inline SparseVector iterate_basis(const ShiftOperator& B, Index i, Index n, LogScalar coef = LogScalar::one()) {
  if (n < 0) throw std::invalid_argument("iterate_basis: n must be >= 0");
  if (B.unilateral() && (i < 1 || i - n < 1)) return {};
  return SparseVector::basis(i - n, product(B.weights, i, n) * coef);
}

inline SparseVector iterate(const ShiftOperator& B, const SparseVector& x, Index n) {
  SparseVector out;
  for (const auto& [i, v] : x) out = out + iterate_basis(B, i, n, v);
  return out;
}

/// ||B^n x||_m for n = 1..N (entry n-1 holds n).
inline std::vector<LogScalar> orbit_seminorm_series(const ShiftOperator& B, const SparseVector& x, int m, Index N) {
  if (N < 1) throw std::invalid_argument("orbit_seminorm_series: N must be >= 1");
  struct Term {
    Index i;
    LogScalar coef;
    ProductTable table;
    MatrixCursor<Index> rows;
  };
  std::vector<Term> terms;
  for (const auto& [i, v] : x) terms.push_back({i, v, ProductTable(B.weights, i, N), MatrixCursor<Index>(B.space.matrix)});
  std::vector<LogScalar> out(static_cast<std::size_t>(N));
  std::vector<LogScalar> parts(terms.size());
  for (Index n = 1; n <= N; ++n) {
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const LogScalar prod = terms[t].table[n];
      parts[t] = prod.is_zero() ? prod : terms[t].coef * prod * terms[t].rows.entry(terms[t].i - n, m);
    }
    out[static_cast<std::size_t>(n - 1)] = lognorm(parts, B.space.p);
  }
  return out;
}

/// Stretch of orbit steps n = first_n .. first_n + length - 1 of B^n e_anchor on which both
/// the weight w_{anchor-n} and the matrix row of anchor-n stay constant. The log of
/// ||B^n e_anchor||_k is then affine in n.
template <Position P>
struct OrbitSegment {
  P first_n;
  P length;
  WeightStretch<P> stretch;
  P offset;  // position of first_n inside the stretch
  P top_index;
  LogScalar row;  // nu at the segment's rows (custom matrices: 1)
  const KotheMatrix* matrix;
  bool annihilated;

  LogScalar entry(int k) const {
    if (matrix->mode == KotheMatrix::Mode::custom) return matrix->entry<P>(top_index, k);
    return matrix->from_nu(row, k);
  }

  /// log |P(anchor, first_n + t)|.
  double product_log(const P& t) const { return stretch.product_at(P(offset + t)).logmag(); }

  /// log ||B^{first_n + t} e_anchor||_k.
  double term_log(const P& t, int k) const {
    if (annihilated) return kNegInf;
    const LogScalar a = entry(k);
    if (a.is_zero()) return kNegInf;
    return product_log(t) + a.logmag();
  }

  /// Increment of term_log per step.
  double slope() const { return stretch.value.logmag(); }
};

/// Walks n = 1..horizon for B^n e_anchor in maximal constant segments.
/// Visitor returns false to stop; on N a final annihilated segment covers the rest.
template <Position P, class Visit>
void walk_orbit_segments(const ShiftOperator& B, const P& anchor, const P& horizon, Visit&& visit) {
  MatrixCursor<P> rows(B.space.matrix);
  walk_weight_stretches<P>(B.weights, anchor, horizon, [&](const WeightStretch<P>& s) {
    if (s.value.is_zero()) {
      OrbitSegment<P> seg{s.first_n, s.length, s, P(0), P(anchor - s.first_n), LogScalar::zero(),
                          &B.space.matrix, true};
      return visit(seg);
    }
    P o = 0;
    while (o < s.length) {
      const P n = s.first_n + o;
      const P j = anchor - n;
      const RunInfo<P> run = rows.row_run(j);
      P len = s.length - o;
      if (run.lo) len = std::min<P>(len, P(j - *run.lo + 1));
      OrbitSegment<P> seg{n, len, s, o, j, run.value, &B.space.matrix, false};
      if (!visit(seg)) return false;
      o += len;
    }
    return true;
  });
}

/// Count of t in [0, length) with pred(t), for pred monotone in t (either direction).
template <Position P, class Pred>
P count_monotone(const P& length, Pred&& pred) {
  if (length <= P(0)) return P(0);
  const bool first = pred(P(0));
  const bool last = pred(P(length - 1));
  if (first == last) return first ? length : P(0);
  // Boundary: first t where pred(t) != first.
  P lo = 0, hi = length - 1;
  while (hi - lo > 1) {
    const P mid = lo + (hi - lo) / 2;
    if (pred(mid) == first)
      lo = mid;
    else
      hi = mid;
  }
  return first ? hi : P(length - hi);
}

/// Last t in [0, length) with pred(t) for monotone pred, or nullopt.
template <Position P, class Pred>
std::optional<P> last_true_monotone(const P& length, Pred&& pred) {
  if (length <= P(0)) return std::nullopt;
  const bool first = pred(P(0));
  const bool last = pred(P(length - 1));
  if (last) return P(length - 1);
  if (!first) return std::nullopt;
  P lo = 0, hi = length - 1;  // pred(lo) true, pred(hi) false
  while (hi - lo > 1) {
    const P mid = lo + (hi - lo) / 2;
    if (pred(mid))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace wbshift

#endif  // WBSHIFT_SHIFT_HPP
