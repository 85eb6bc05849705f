#ifndef WBSHIFT_SEQUENCE_HPP
#define WBSHIFT_SEQUENCE_HPP

// Real sequences over Z described side by side: closed forms, constants, or
// run-length-encoded blocks whose index ranges follow from closed-form prefix
// sums. Blocks of length 10^n are never materialized.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wbshift/numerics.hpp"
#include "wbshift/positions.hpp"

namespace wbshift {

enum class IndexSet { N, Z };

inline const char* to_string(IndexSet J) { return J == IndexSet::N ? "N" : "Z"; }

template <Position P>
struct Run {
  LogScalar value;
  P count;
};

/// Maximal known interval around a position on which a sequence is constant.
/// A missing bound means the run extends to infinity on that side.
template <Position P>
struct RunInfo {
  LogScalar value;
  std::optional<P> lo;
  std::optional<P> hi;
};

// ---------------------------------------------------------------------------
// Block templates. Runs are listed in increasing index order.

/// Block n: n copies of base^((-1)^n) followed by n copies of base^((-1)^(n+1)).
struct AlternatingPowers {
  double base = 2.0;
};

/// Block n: ramp 1..n, plateau of plateau_base^n copies of n+1, ramp n..1.
struct RampPlateau {
  Index plateau_base = 10;
};

/// Block n: n copies of `high`, n copies of `low`, then n^2 ones.
struct TwosHalvesOnes {
  double high = 2.0;
  double low = 0.5;
};

using BlockTemplate = std::variant<AlternatingPowers, RampPlateau, TwosHalvesOnes>;

inline std::string template_name(const BlockTemplate& t) {
  return std::visit(
      [](const auto& b) -> std::string {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, AlternatingPowers>) return "alternating_powers";
        else if constexpr (std::is_same_v<T, RampPlateau>) return "ramp_plateau";
        else return "twos_halves_ones";
      },
      t);
}

template <Position P>
std::vector<Run<P>> block_runs(const BlockTemplate& tmpl, Index n) {
  if (n < 1) throw std::invalid_argument("block number must be >= 1");
  std::vector<Run<P>> runs;
  std::visit(
      [&](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, AlternatingPowers>) {
          const double first = n % 2 == 0 ? b.base : 1.0 / b.base;
          runs.push_back({LogScalar::from_real(first), P(n)});
          runs.push_back({LogScalar::from_real(1.0 / first), P(n)});
        } else if constexpr (std::is_same_v<T, RampPlateau>) {
          runs.reserve(2 * n + 1);
          for (Index v = 1; v <= n; ++v) runs.push_back({LogScalar::from_real(double(v)), P(1)});
          runs.push_back({LogScalar::from_real(double(n + 1)), checked_pow<P>(b.plateau_base, n)});
          for (Index v = n; v >= 1; --v) runs.push_back({LogScalar::from_real(double(v)), P(1)});
        } else {
          runs.push_back({LogScalar::from_real(b.high), P(n)});
          runs.push_back({LogScalar::from_real(b.low), P(n)});
          runs.push_back({LogScalar::one(), checked_mul<P>(P(n), P(n))});
        }
      },
      tmpl);
  return runs;
}

template <Position P>
P block_length(const BlockTemplate& tmpl, Index n) {
  return std::visit(
      [&](const auto& b) -> P {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, AlternatingPowers>) return P(2 * n);
        else if constexpr (std::is_same_v<T, RampPlateau>) return checked_add<P>(P(2 * n), checked_pow<P>(b.plateau_base, n));
        else return checked_add<P>(P(2 * n), checked_mul<P>(P(n), P(n)));
      },
      tmpl);
}

/// Total length of blocks 1..n (0 for n = 0), in closed form.
template <Position P>
P cumulative_length(const BlockTemplate& tmpl, Index n) {
  if (n <= 0) return P(0);
  const P nn(n);
  const P ramps = checked_mul<P>(nn, P(n + 1));
  return std::visit(
      [&](const auto& b) -> P {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, AlternatingPowers>) {
          return ramps;
        } else if constexpr (std::is_same_v<T, RampPlateau>) {
          if (b.plateau_base < 2) throw std::invalid_argument("ramp_plateau: plateau_base must be >= 2");
          const P top = checked_pow<P>(b.plateau_base, n + 1);
          const P plateaus = (top - P(b.plateau_base)) / P(b.plateau_base - 1);
          return checked_add<P>(ramps, plateaus);
        } else {
          const P squares = checked_mul<P>(ramps, P(2 * n + 1)) / P(6);
          return checked_add<P>(ramps, squares);
        }
      },
      tmpl);
}

/// Smallest block number n with cumulative_length(n) >= t (t >= 1).
template <Position P>
Index locate_block(const BlockTemplate& tmpl, const P& t) {
  auto reaches = [&](Index n) {
    try {
      return cumulative_length<P>(tmpl, n) >= t;
    } catch (const std::overflow_error&) {
      return true;  // t itself fits, so an overflowing prefix sum exceeds it
    }
  };
  Index hi = 1;
  while (!reaches(hi)) hi *= 2;
  Index lo = hi / 2 + 1;
  if (hi == 1) return 1;
  while (lo < hi) {
    Index mid = lo + (hi - lo) / 2;
    if (reaches(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

// ---------------------------------------------------------------------------
// Side forms.

struct ConstantForm {
  LogScalar value;
};

/// value base^j.
struct GeometricForm {
  double base = 2.0;
};

/// value |j| + 1.
struct AbsPlusOneForm {};

/// Arbitrary per-index values; only usable at 64-bit positions.
struct ClosedForm {
  std::function<double(Index)> f;
  std::string label = "closed_form";
};

struct BlocksForm {
  BlockTemplate tmpl;
};

using SideForm = std::variant<ConstantForm, GeometricForm, AbsPlusOneForm, ClosedForm, BlocksForm>;

enum class Side { negative, nonnegative };

inline const char* to_string(Side s) { return s == Side::negative ? "negative" : "nonnegative"; }

struct IndexInterval {
  Index lo = 0;
  Index hi = -1;

  bool contains(Index j) const { return lo <= j && j <= hi; }
  Index size() const { return hi < lo ? 0 : hi - lo + 1; }
  IndexInterval negated() const { return {-hi, -lo}; }
  friend bool operator==(const IndexInterval&, const IndexInterval&) = default;
};

/// A sequence indexed by Z. Indices >= split belong to the nonnegative side,
/// whose blocks are stacked rightward starting at split; indices < split belong
/// to the negative side, whose blocks are stacked leftward starting at split - 1.
struct Sequence {
  SideForm negative = ConstantForm{LogScalar::one()};
  SideForm nonnegative = ConstantForm{LogScalar::one()};
  Index split = 0;

  static Sequence constant(double v, Index split = 0) {
    const auto c = ConstantForm{LogScalar::from_real(v)};
    return {c, c, split};
  }

  static Sequence sided(double left, double right, Index split = 0) {
    return {ConstantForm{LogScalar::from_real(left)}, ConstantForm{LogScalar::from_real(right)}, split};
  }

  static Sequence closed_form(std::function<double(Index)> f, std::string label = "closed_form") {
    ClosedForm c{std::move(f), std::move(label)};
    return {c, c, 0};
  }

  const SideForm& form(Side s) const { return s == Side::negative ? negative : nonnegative; }

  Side side_of(Index j) const { return j >= split ? Side::nonnegative : Side::negative; }

  template <Position P>
  RunInfo<P> run_at(const P& j) const {
    const bool right = j >= P(split);
    const SideForm& f = right ? nonnegative : negative;
    return std::visit(
        [&](const auto& form) -> RunInfo<P> {
          using T = std::decay_t<decltype(form)>;
          if constexpr (std::is_same_v<T, ConstantForm>) {
            if (right) return {form.value, P(split), std::nullopt};
            return {form.value, std::nullopt, P(split - 1)};
          } else if constexpr (std::is_same_v<T, GeometricForm>) {
            if (!(form.base > 0)) throw std::domain_error("geometric form: base must be positive");
            return {LogScalar::from_log(1, to_double(j) * std::log(form.base)), j, j};
          } else if constexpr (std::is_same_v<T, AbsPlusOneForm>) {
            return {LogScalar::from_log(1, log_abs_plus_one(j)), j, j};
          } else if constexpr (std::is_same_v<T, ClosedForm>) {
            return {LogScalar::from_real(form.f(to_index(j, "closed-form sequence index"))), j, j};
          } else {
            return block_run_at(form.tmpl, j, right);
          }
        },
        f);
  }

  LogScalar at(Index j) const { return run_at<Index>(j).value; }

  /// Indices covered by block n on the given side (blocks forms only).
  IndexInterval block_range(Side side, Index n) const {
    const auto* blocks = std::get_if<BlocksForm>(&form(side));
    if (!blocks) throw std::invalid_argument("block_range: side is not block-structured");
    if (n < 1) throw std::invalid_argument("block_range: block number must be >= 1");
    const Index before = cumulative_length<Index>(blocks->tmpl, n - 1);
    const Index through = cumulative_length<Index>(blocks->tmpl, n);
    if (side == Side::nonnegative) return {split + before, split + through - 1};
    return {split - through, split - before - 1};
  }

  /// Leftmost index of block n on a side, with its runs in increasing index order.
  template <Position P>
  struct BlockSpan {
    Side side;
    Index n;
    P leftmost;
    P rightmost;
    std::vector<Run<P>> runs;
    std::vector<P> starts;
  };

  template <Position P>
  BlockSpan<P> block_span(Side side, const P& j) const {
    const auto& tmpl = std::get<BlocksForm>(form(side)).tmpl;
    const bool right = side == Side::nonnegative;
    // t: 1-based distance from the side's origin.
    const P t = right ? P(j - P(split) + 1) : P(P(split) - j);
    BlockSpan<P> span{side, locate_block<P>(tmpl, t), P(0), P(0), {}, {}};
    const P before = cumulative_length<P>(tmpl, span.n - 1);
    const P through = cumulative_length<P>(tmpl, span.n);
    span.leftmost = right ? P(P(split) + before) : P(P(split) - through);
    span.rightmost = right ? P(P(split) + through - 1) : P(P(split) - before - 1);
    span.runs = block_runs<P>(tmpl, span.n);
    P start = span.leftmost;
    for (const auto& run : span.runs) {
      span.starts.push_back(start);
      start += run.count;
    }
    return span;
  }

  template <Position P>
  static RunInfo<P> run_in_span(const BlockSpan<P>& span, const P& j) {
    auto it = std::upper_bound(span.starts.begin(), span.starts.end(), j);
    const std::size_t r = static_cast<std::size_t>(it - span.starts.begin()) - 1;
    return {span.runs[r].value, span.starts[r], P(span.starts[r] + span.runs[r].count - 1)};
  }

 private:
  template <Position P>
  RunInfo<P> block_run_at(const BlockTemplate&, const P& j, bool right) const {
    return run_in_span(block_span<P>(right ? Side::nonnegative : Side::negative, j), j);
  }
};

/// Sequential lookups that reuse the last run and the last block's layout.
template <Position P>
class RunCursor {
 public:
  explicit RunCursor(const Sequence& seq) : seq_(&seq) {}

  const RunInfo<P>& at(const P& j) {
    if (run_ && (!run_->lo || *run_->lo <= j) && (!run_->hi || j <= *run_->hi)) return *run_;
    const Side side = j >= P(seq_->split) ? Side::nonnegative : Side::negative;
    if (std::holds_alternative<BlocksForm>(seq_->form(side))) {
      if (!span_ || span_->side != side || j < span_->leftmost || j > span_->rightmost)
        span_ = seq_->block_span<P>(side, j);
      run_ = Sequence::run_in_span(*span_, j);
    } else {
      run_ = seq_->run_at<P>(j);
    }
    return *run_;
  }

 private:
  const Sequence* seq_;
  std::optional<RunInfo<P>> run_;
  std::optional<Sequence::BlockSpan<P>> span_;
};

}  // namespace wbshift

#endif  // WBSHIFT_SEQUENCE_HPP
