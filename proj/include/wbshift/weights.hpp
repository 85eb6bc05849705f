#ifndef WBSHIFT_WEIGHTS_HPP
#define WBSHIFT_WEIGHTS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wbshift/numerics.hpp"
#include "wbshift/positions.hpp"
#include "wbshift/sequence.hpp"

namespace wbshift {

/// Weight sequence over N or Z. On N, indices < 1 carry the zero weight.
struct WeightSpec {
  IndexSet domain = IndexSet::Z;
  Sequence seq = Sequence::constant(1.0);

  static WeightSpec constant(double v, IndexSet J = IndexSet::Z) { return {J, Sequence::constant(v)}; }

  static WeightSpec sided(double negative, double nonnegative) {
    return {IndexSet::Z, Sequence::sided(negative, nonnegative)};
  }

  bool unilateral() const { return domain == IndexSet::N; }

  template <Position P>
  RunInfo<P> run_at(const P& j) const {
    if (unilateral() && j < P(1)) return {LogScalar::zero(), std::nullopt, P(0)};
    RunInfo<P> r = seq.run_at<P>(j);
    return restrict(r, j);
  }

  template <Position P>
  RunInfo<P> restrict(RunInfo<P> r, const P& j) const {
    if (r.value.is_zero()) throw std::domain_error("weight at index " + to_string(j) + " is zero");
    if (unilateral() && (!r.lo || *r.lo < P(1))) r.lo = P(1);
    return r;
  }
};

inline LogScalar weight_at(const WeightSpec& w, Index j) { return w.run_at<Index>(j).value; }

/// Cursor over weights that applies the unilateral convention.
template <Position P>
class WeightCursor {
 public:
  explicit WeightCursor(const WeightSpec& w) : w_(&w), seq_(w.seq) {}

  RunInfo<P> at(const P& j) {
    if (w_->unilateral() && j < P(1)) return {LogScalar::zero(), std::nullopt, P(0)};
    return w_->restrict(seq_.at(j), j);
  }

 private:
  const WeightSpec* w_;
  RunCursor<P> seq_;
};

/// One maximal stretch of constant weight met while multiplying leftward from an anchor.
/// Steps first_n .. first_n + length - 1 multiply by `value`; the product before
/// step first_n has log-magnitude `base_logmag` and sign `base_sign`.
template <Position P>
struct WeightStretch {
  P first_n;
  P length;
  LogScalar value;
  double base_logmag;
  int base_sign;

  /// Product after step first_n + offset.
  LogScalar product_at(const P& offset) const {
    if (value.is_zero() || base_sign == 0) return LogScalar::zero();
    const P steps = offset + 1;
    const int s = value.sign() < 0 && is_odd(steps) ? -base_sign : base_sign;
    return LogScalar::from_log(s, base_logmag + to_double(steps) * value.logmag());
  }
};

/// Visits the weight stretches of w_{i-1}, w_{i-2}, ..., w_{i-n} in order.
/// The visitor returns false to stop early. A zero stretch (unilateral fall-off)
/// is reported once and ends the walk.
template <Position P, class Visit>
void walk_weight_stretches(const WeightSpec& w, const P& anchor, const P& n, Visit&& visit) {
  WeightCursor<P> cursor(w);
  P done = 0;
  double logmag = 0.0;
  int sign = 1;
  while (done < n) {
    const P j = anchor - done - 1;
    const RunInfo<P> run = cursor.at(j);
    P len = n - done;
    if (!run.value.is_zero() && run.lo) len = std::min<P>(len, P(j - *run.lo + 1));
    WeightStretch<P> s{P(done + 1), len, run.value, logmag, sign};
    if (!visit(s) || run.value.is_zero()) return;
    logmag += to_double(len) * run.value.logmag();
    if (run.value.sign() < 0 && is_odd(len)) sign = -sign;
    done += len;
  }
}

/// w_{i-n} ... w_{i-1}; the empty product (n = 0) is 1.
template <Position P>
LogScalar product(const WeightSpec& w, const P& i, const P& n) {
  if (n < P(0)) throw std::invalid_argument("product: n must be >= 0");
  LogScalar out = LogScalar::one();
  walk_weight_stretches<P>(w, i, n, [&](const WeightStretch<P>& s) {
    out = s.product_at(P(s.length - 1));
    return true;
  });
  return out;
}

inline LogScalar product(const WeightSpec& w, Index i, Index n) { return product<Index>(w, i, n); }

/// w_l ... w_{l+n-1}.
inline LogScalar forward_product(const WeightSpec& w, Index l, Index n) { return product<Index>(w, l + n, n); }

/// Cumulative products P(i, n) for n = 0..horizon at a fixed anchor i.
class ProductTable {
 public:
  ProductTable(const WeightSpec& w, Index anchor, Index horizon) : anchor_(anchor) {
    if (horizon < 0) throw std::invalid_argument("ProductTable: horizon must be >= 0");
    values_.assign(static_cast<std::size_t>(horizon) + 1, LogScalar::zero());
    values_[0] = LogScalar::one();
    walk_weight_stretches<Index>(w, anchor, horizon, [&](const WeightStretch<Index>& s) {
      for (Index t = 0; t < s.length; ++t) values_[static_cast<std::size_t>(s.first_n + t)] = s.product_at(t);
      return true;
    });
  }

  const LogScalar& operator[](Index n) const { return values_.at(static_cast<std::size_t>(n)); }
  Index anchor() const { return anchor_; }
  Index horizon() const { return static_cast<Index>(values_.size()) - 1; }

 private:
  Index anchor_;
  std::vector<LogScalar> values_;
};

inline IndexInterval block_index_range(const Sequence& layout, Side side, Index n) {
  return layout.block_range(side, n);
}

inline IndexInterval block_index_range(const WeightSpec& w, Side side, Index n) {
  return w.seq.block_range(side, n);
}

}  // namespace wbshift

#endif  // WBSHIFT_WEIGHTS_HPP
