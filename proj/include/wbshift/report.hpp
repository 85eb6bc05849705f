#ifndef WBSHIFT_REPORT_HPP
#define WBSHIFT_REPORT_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wbshift/numerics.hpp"

namespace wbshift {

enum class Verdict { certified, failed, refuted, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::certified: return "certified-at-horizon";
    case Verdict::failed: return "condition-failed";
    case Verdict::refuted: return "refuted-at-horizon";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

inline Verdict parse_verdict(const std::string& s) {
  for (Verdict v : {Verdict::certified, Verdict::failed, Verdict::refuted, Verdict::inconclusive})
    if (s == to_string(v)) return v;
  throw std::invalid_argument("unknown verdict '" + s + "'");
}

using Field = std::variant<bool, Index, double, std::string, LogScalar>;

using FieldList = std::vector<std::pair<std::string, Field>>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Field>> rows;

  void add(std::vector<Field> row) {
    if (row.size() != columns.size()) throw std::logic_error("table row width mismatch");
    rows.push_back(std::move(row));
  }

  std::size_t column(const std::string& name) const {
    for (std::size_t c = 0; c < columns.size(); ++c)
      if (columns[c] == name) return c;
    throw std::out_of_range("no column '" + name + "'");
  }

  template <class T>
  const T& at(std::size_t row, const std::string& name) const {
    return std::get<T>(rows.at(row).at(column(name)));
  }

  bool empty() const { return rows.empty(); }
  std::size_t size() const { return rows.size(); }
};

struct CertificateReport {
  std::string check;
  Verdict verdict = Verdict::inconclusive;
  std::string statement;
  std::string failed_condition;
  std::optional<Index> failed_k;
  FieldList parameters;
  FieldList summary;
  Table table;
  std::vector<std::string> notes;

  bool certified() const { return verdict == Verdict::certified; }

  void param(std::string name, Field v) { parameters.emplace_back(std::move(name), std::move(v)); }
  void set(std::string name, Field v) {
    for (auto& [k, old] : summary)
      if (k == name) {
        old = std::move(v);
        return;
      }
    summary.emplace_back(std::move(name), std::move(v));
  }

  bool has(const std::string& name) const {
    for (const auto& [k, v] : summary)
      if (k == name) return true;
    return false;
  }

  template <class T>
  const T& get(const std::string& name) const {
    for (const auto& [k, v] : summary)
      if (k == name) return std::get<T>(v);
    for (const auto& [k, v] : parameters)
      if (k == name) return std::get<T>(v);
    throw std::out_of_range("report '" + check + "' has no field '" + name + "'");
  }

  void fail(std::string condition, std::optional<Index> k = std::nullopt) {
    verdict = Verdict::failed;
    failed_condition = std::move(condition);
    failed_k = k;
  }
};

/// "> rhs" on log-domain quantities; values within a few ulps count as ties.
inline bool log_greater(double lhs, double rhs) {
  if (lhs == kNegInf) return false;
  if (rhs == kNegInf) return true;
  const double scale = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
  return lhs - rhs > 1e-13 * scale;
}

/// ">= rhs" with the same tie band counted as equality.
inline bool log_greater_equal(double lhs, double rhs) {
  if (rhs == kNegInf) return true;
  if (lhs == kNegInf) return false;
  const double scale = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
  return lhs - rhs >= -1e-13 * scale;
}

}  // namespace wbshift

#endif  // WBSHIFT_REPORT_HPP
