#ifndef WBSHIFT_NUMERICS_HPP
#define WBSHIFT_NUMERICS_HPP

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <initializer_list>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wbshift {

using Index = std::int64_t;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// A real scalar stored as (sign, natural log of magnitude).
///
/// Zero is the unique value with sign 0 and logmag -inf. Products of a
/// million weights of size 2 or 1/2 stay representable.
class LogScalar {
 public:
  constexpr LogScalar() noexcept = default;

  static LogScalar from_real(double x) {
    if (std::isnan(x)) throw std::domain_error("LogScalar: NaN");
    if (x == 0.0) return {};
    return LogScalar(x > 0 ? 1 : -1, std::log(std::fabs(x)));
  }

  static LogScalar from_log(int sign, double logmag) {
    if (std::isnan(logmag)) throw std::domain_error("LogScalar: NaN log-magnitude");
    if (logmag == std::numeric_limits<double>::infinity())
      throw std::overflow_error("LogScalar: log-magnitude overflow");
    if (sign == 0 || logmag == kNegInf) return {};
    if (sign != 1 && sign != -1) throw std::domain_error("LogScalar: sign must be -1, 0 or 1");
    return LogScalar(sign, logmag);
  }

  static constexpr LogScalar zero() noexcept { return {}; }
  static constexpr LogScalar one() noexcept { return LogScalar(1, 0.0); }

  constexpr int sign() const noexcept { return sign_; }
  constexpr double logmag() const noexcept { return logmag_; }
  constexpr bool is_zero() const noexcept { return sign_ == 0; }

  /// May overflow to +-inf or underflow to 0.
  double to_real() const noexcept { return sign_ == 0 ? 0.0 : sign_ * std::exp(logmag_); }

  constexpr LogScalar abs() const noexcept { return sign_ == 0 ? LogScalar{} : LogScalar(1, logmag_); }

  /// |x|^p for p > 0.
  LogScalar abs_pow(double p) const {
    if (!(p > 0)) throw std::domain_error("LogScalar::abs_pow: exponent must be positive");
    return sign_ == 0 ? LogScalar{} : from_log(1, p * logmag_);
  }

  /// x^n for a nonnegative count n given as magnitude and parity.
  LogScalar pow_count(double count, bool odd) const {
    if (count == 0) return one();
    if (sign_ == 0) return {};
    return from_log(sign_ < 0 && odd ? -1 : 1, count * logmag_);
  }

  constexpr LogScalar operator-() const noexcept { return sign_ == 0 ? LogScalar{} : LogScalar(-sign_, logmag_); }

  friend LogScalar operator*(LogScalar a, LogScalar b) {
    if (a.sign_ == 0 || b.sign_ == 0) return {};
    return from_log(a.sign_ * b.sign_, a.logmag_ + b.logmag_);
  }

  friend LogScalar operator/(LogScalar a, LogScalar b) {
    if (b.sign_ == 0) throw std::domain_error("LogScalar: division by zero");
    if (a.sign_ == 0) return {};
    return from_log(a.sign_ * b.sign_, a.logmag_ - b.logmag_);
  }

  friend LogScalar operator+(LogScalar a, LogScalar b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    if (a.logmag_ < b.logmag_) std::swap(a, b);
    const double d = b.logmag_ - a.logmag_;
    if (a.sign_ == b.sign_) return LogScalar(a.sign_, a.logmag_ + std::log1p(std::exp(d)));
    if (d == 0.0) return {};
    return from_log(a.sign_, a.logmag_ + std::log1p(-std::exp(d)));
  }

  friend LogScalar operator-(LogScalar a, LogScalar b) { return a + (-b); }

  LogScalar& operator*=(LogScalar b) { return *this = *this * b; }
  LogScalar& operator+=(LogScalar b) { return *this = *this + b; }

  friend constexpr bool operator==(const LogScalar&, const LogScalar&) = default;

  // Real order, decided on (sign, logmag) without exponentiating.
  friend constexpr std::strong_ordering operator<=>(const LogScalar& a, const LogScalar& b) noexcept {
    if (a.sign_ != b.sign_) return a.sign_ <=> b.sign_;
    if (a.sign_ == 0 || a.logmag_ == b.logmag_) return std::strong_ordering::equal;
    const bool less = a.sign_ > 0 ? a.logmag_ < b.logmag_ : a.logmag_ > b.logmag_;
    return less ? std::strong_ordering::less : std::strong_ordering::greater;
  }

 private:
  constexpr LogScalar(int s, double l) noexcept : sign_(s), logmag_(l) {}

  int sign_ = 0;
  double logmag_ = kNegInf;
};

inline LogScalar logmul(LogScalar a, LogScalar b) { return a * b; }

/// (sum_i |v_i|^p)^(1/p), factoring out the largest log-magnitude.
inline LogScalar logsumexp_p(std::span<const LogScalar> values, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("logsumexp_p: p must be >= 1");
  double top = kNegInf;
  std::size_t nonzero = 0;
  for (const auto& v : values) {
    if (v.is_zero()) continue;
    top = std::max(top, v.logmag());
    ++nonzero;
  }
  if (nonzero == 0) return LogScalar::zero();
  if (nonzero == 1) return LogScalar::from_log(1, top);
  double acc = 0.0;
  for (const auto& v : values)
    if (!v.is_zero()) acc += std::exp(p * (v.logmag() - top));
  return LogScalar::from_log(1, top + std::log(acc) / p);
}

inline LogScalar logmax(std::span<const LogScalar> values) {
  LogScalar best;
  for (const auto& v : values) best = std::max(best, v.abs());
  return best;
}

/// p = 0 is the sup case.
inline LogScalar lognorm(std::span<const LogScalar> values, double p) {
  return p == 0.0 ? logmax(values) : logsumexp_p(values, p);
}

/// log of sum_{t=0}^{count-1} exp(first + t*step); count may exceed 2^63.
inline double log_geometric_sum(double first, double step, double count) {
  if (!(count > 0) || first == kNegInf) return kNegInf;
  if (step == 0.0) return first + std::log(count);
  if (step > 0.0)
    return first + (count - 1.0) * step + std::log(-std::expm1(-count * step)) - std::log(-std::expm1(-step));
  return first + std::log(-std::expm1(count * step)) - std::log(-std::expm1(step));
}

/// Decimal rendering with `digits` significant digits, valid far outside double range.
inline std::string to_decimal(LogScalar x, int digits = 12) {
  if (x.is_zero()) return "0";
  char buf[64];
  const double l10 = x.logmag() / std::log(10.0);
  if (std::fabs(l10) < 300.0) {
    std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x.to_real());
    return buf;
  }
  double exponent = std::floor(l10);
  double mantissa = std::pow(10.0, l10 - exponent);
  std::snprintf(buf, sizeof buf, "%.*f", digits - 1, mantissa);
  if (buf[0] == '1' && buf[1] == '0') {
    exponent += 1.0;
    mantissa /= 10.0;
    std::snprintf(buf, sizeof buf, "%.*f", digits - 1, mantissa);
  }
  std::string out = (x.sign() < 0 ? "-" : "") + std::string(buf);
  std::snprintf(buf, sizeof buf, "e%+.0f", exponent);
  return out + buf;
}

/// Finitely supported vector; zero entries are never stored.
class SparseVector {
 public:
  using Map = std::map<Index, LogScalar>;
  using const_iterator = Map::const_iterator;

  SparseVector() = default;

  SparseVector(std::initializer_list<std::pair<Index, double>> entries) {
    for (const auto& [i, v] : entries) add_to(i, LogScalar::from_real(v));
  }

  static SparseVector basis(Index i, LogScalar coef = LogScalar::one()) {
    SparseVector v;
    v.set(i, coef);
    return v;
  }

  void set(Index i, LogScalar v) {
    if (v.is_zero())
      entries_.erase(i);
    else
      entries_[i] = v;
  }

  void add_to(Index i, LogScalar v) { set(i, at(i) + v); }

  LogScalar at(Index i) const {
    auto it = entries_.find(i);
    return it == entries_.end() ? LogScalar::zero() : it->second;
  }

  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }
  const_iterator begin() const noexcept { return entries_.begin(); }
  const_iterator end() const noexcept { return entries_.end(); }

  std::vector<Index> support() const {
    std::vector<Index> out;
    out.reserve(entries_.size());
    for (const auto& [i, v] : entries_) out.push_back(i);
    return out;
  }

  SparseVector scaled(LogScalar lambda) const {
    SparseVector out;
    for (const auto& [i, v] : entries_) out.set(i, v * lambda);
    return out;
  }

  friend SparseVector operator+(SparseVector a, const SparseVector& b) {
    for (const auto& [i, v] : b) a.add_to(i, v);
    return a;
  }

  friend SparseVector operator-(SparseVector a, const SparseVector& b) {
    for (const auto& [i, v] : b) a.add_to(i, -v);
    return a;
  }

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  Map entries_;
};

}  // namespace wbshift

#endif  // WBSHIFT_NUMERICS_HPP
