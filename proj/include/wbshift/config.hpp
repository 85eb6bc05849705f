#ifndef WBSHIFT_CONFIG_HPP
#define WBSHIFT_CONFIG_HPP

// Experiment documents: JSON decoding with line-anchored diagnostics, and the inverse export.

#include <cstddef>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "wbshift/density.hpp"
#include "wbshift/numerics.hpp"
#include "wbshift/positions.hpp"
#include "wbshift/report.hpp"
#include "wbshift/sequence.hpp"
#include "wbshift/spaces.hpp"
#include "wbshift/weights.hpp"

namespace wbshift {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Malformed or schema-violating document; what() carries "source:line:column: ...".
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LineCol {
  std::size_t line = 1;
  std::size_t column = 1;
};

inline LineCol line_col(const std::string& text, std::size_t offset) {
  LineCol lc;
  offset = std::min(offset, text.size());
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++lc.line;
      lc.column = 1;
    } else {
      ++lc.column;
    }
  }
  return lc;
}

// ---------------------------------------------------------------------------
// JSON pointer -> byte offset of the value, from a SAX pass.

class SourceMap {
 public:
  SourceMap() = default;

  SourceMap(std::string source, const std::string& text) : source_(std::move(source)), text_(&text) {
    Recorder rec(this);
    CountingIterator first(text.data(), text.data(), &consumed_);
    CountingIterator last(text.data() + text.size(), text.data(), nullptr);
    json::sax_parse(first, last, &rec);
  }

  std::string where(const std::string& pointer) const {
    std::string p = pointer;
    while (true) {
      auto it = offsets_.find(p);
      if (it != offsets_.end()) {
        const LineCol lc = line_col(*text_, it->second);
        return source_ + ":" + std::to_string(lc.line) + ":" + std::to_string(lc.column);
      }
      if (p.empty()) break;
      p = p.substr(0, p.rfind('/'));
    }
    return source_;
  }

  const std::string& source() const { return source_; }

 private:
  struct CountingIterator {
    using iterator_category = std::input_iterator_tag;
    using value_type = char;
    using difference_type = std::ptrdiff_t;
    using pointer = const char*;
    using reference = const char&;

    const char* p;
    const char* base;
    std::size_t* consumed;

    CountingIterator(const char* p_, const char* b, std::size_t* c) : p(p_), base(b), consumed(c) {}
    reference operator*() const { return *p; }
    CountingIterator& operator++() {
      ++p;
      if (consumed) *consumed = std::size_t(p - base);
      return *this;
    }
    CountingIterator operator++(int) {
      auto t = *this;
      ++*this;
      return t;
    }
    friend bool operator==(const CountingIterator& a, const CountingIterator& b) { return a.p == b.p; }
    friend bool operator!=(const CountingIterator& a, const CountingIterator& b) { return a.p != b.p; }
  };

  struct Recorder : nlohmann::json_sax<json> {
    struct Frame {
      bool array;
      std::size_t index;
      std::string key;
      std::string path;
    };
    SourceMap* map;
    std::vector<Frame> stack;

    explicit Recorder(SourceMap* m) : map(m) {}

    static std::string escape(const std::string& key) {
      std::string out;
      for (char c : key) {
        if (c == '~')
          out += "~0";
        else if (c == '/')
          out += "~1";
        else
          out += c;
      }
      return out;
    }

    std::string value_path() const {
      if (stack.empty()) return "";
      const Frame& f = stack.back();
      return f.path + "/" + (f.array ? std::to_string(f.index) : escape(f.key));
    }

    // Start of the token just read: back off over lookahead and separators.
    std::size_t token_offset() const {
      const std::string& t = *map->text_;
      std::size_t o = std::min(map->consumed_, t.size());
      while (o > 0 && std::string(" \t\r\n,:}]").find(t[o - 1]) != std::string::npos) --o;
      return o > 0 ? o - 1 : 0;
    }

    void record() { map->offsets_.emplace(value_path(), token_offset()); }
    void advance() {
      if (!stack.empty() && stack.back().array) ++stack.back().index;
    }
    bool scalar() {
      record();
      advance();
      return true;
    }

    bool null() override { return scalar(); }
    bool boolean(bool) override { return scalar(); }
    bool number_integer(json::number_integer_t) override { return scalar(); }
    bool number_unsigned(json::number_unsigned_t) override { return scalar(); }
    bool number_float(json::number_float_t, const json::string_t&) override { return scalar(); }
    bool string(json::string_t&) override { return scalar(); }
    bool binary(json::binary_t&) override { return scalar(); }
    bool start_object(std::size_t) override { return open(false); }
    bool start_array(std::size_t) override { return open(true); }
    bool key(json::string_t& k) override {
      stack.back().key = k;
      return true;
    }
    bool end_object() override { return close(); }
    bool end_array() override { return close(); }
    bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception&) override { return false; }

    bool open(bool array) {
      const std::string p = value_path();
      map->offsets_.emplace(p, token_offset());
      stack.push_back({array, 0, "", p});
      return true;
    }
    bool close() {
      stack.pop_back();
      advance();
      return true;
    }
  };

  std::string source_ = "config";
  const std::string* text_ = nullptr;
  std::size_t consumed_ = 0;
  std::map<std::string, std::size_t> offsets_;
};

// ---------------------------------------------------------------------------
// Schema-checked views of a document.

class Node {
 public:
  Node(const json& j, std::string pointer, const SourceMap* map) : j_(&j), ptr_(std::move(pointer)), map_(map) {}

  [[noreturn]] void fail(const std::string& msg) const {
    const std::string at = map_ ? map_->where(ptr_) : std::string("config");
    throw ConfigError(at + ": " + (ptr_.empty() ? std::string("/") : ptr_) + ": " + msg);
  }

  const json& raw() const { return *j_; }
  const std::string& pointer() const { return ptr_; }

  bool is_object() const { return j_->is_object(); }
  bool is_array() const { return j_->is_array(); }
  bool is_string() const { return j_->is_string(); }
  bool is_number() const { return j_->is_number(); }

  Node object() const {
    if (!j_->is_object()) fail("expected an object");
    return *this;
  }

  /// Rejects keys outside `allowed`.
  const Node& only(std::initializer_list<const char*> allowed) const {
    object();
    for (const auto& [k, v] : j_->items()) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || k == a;
      if (!ok) child_unchecked(k).fail("unknown key '" + k + "'");
    }
    return *this;
  }

  bool has(const std::string& key) const { return j_->is_object() && j_->contains(key); }

  Node operator[](const std::string& key) const {
    object();
    if (!j_->contains(key)) fail("missing required key '" + key + "'");
    return child_unchecked(key);
  }

  std::optional<Node> opt(const std::string& key) const {
    object();
    if (!j_->contains(key)) return std::nullopt;
    return child_unchecked(key);
  }

  std::size_t size() const {
    if (!j_->is_array()) fail("expected an array");
    return j_->size();
  }

  Node at(std::size_t i) const {
    if (!j_->is_array()) fail("expected an array");
    return Node((*j_)[i], ptr_ + "/" + std::to_string(i), map_);
  }

  std::vector<Node> elements() const {
    std::vector<Node> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i));
    return out;
  }

  std::string as_string() const {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
  }

  bool as_bool() const {
    if (!j_->is_boolean()) fail("expected true or false");
    return j_->get<bool>();
  }

  double as_double() const {
    if (!j_->is_number()) fail("expected a number");
    return j_->get<double>();
  }

  /// Integer, or a decimal string when it exceeds the JSON number range.
  BigIndex as_big() const {
    if (j_->is_number_integer()) return j_->is_number_unsigned() ? BigIndex(j_->get<std::uint64_t>()) : BigIndex(j_->get<std::int64_t>());
    if (j_->is_string()) {
      try {
        return parse_big_index(j_->get<std::string>());
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
    }
    fail("expected an integer (or an integer string)");
  }

  Index as_index() const {
    const BigIndex v = as_big();
    const auto n = narrow(v);
    if (!n) fail("integer does not fit in 64 bits");
    return *n;
  }

  int as_int() const {
    const Index v = as_index();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) fail("integer out of range");
    return int(v);
  }

  Index as_positive() const {
    const Index v = as_index();
    if (v < 1) fail("expected a positive integer");
    return v;
  }

  /// A number, or {"sign": s, "logmag": l}.
  LogScalar as_scalar() const {
    if (j_->is_number()) return LogScalar::from_real(j_->get<double>());
    if (j_->is_object()) {
      only({"sign", "logmag"});
      const int s = (*this)["sign"].as_int();
      const Node l = (*this)["logmag"];
      if (s != -1 && s != 0 && s != 1) (*this)["sign"].fail("sign must be -1, 0 or 1");
      if (l.raw().is_null()) return LogScalar::zero();
      return LogScalar::from_log(s, l.as_double());
    }
    fail("expected a number or {sign, logmag}");
  }

  /// "a/b", an integer, or [a, b].
  Rational as_rational() const {
    if (j_->is_number_integer()) return {as_index(), 1};
    std::string s;
    if (j_->is_string()) {
      s = j_->get<std::string>();
    } else {
      fail("expected a rational \"a/b\" or an integer");
    }
    const auto slash = s.find('/');
    try {
      const Index num = narrow_or_throw(parse_big_index(s.substr(0, slash)), "numerator");
      const Index den = slash == std::string::npos ? 1 : narrow_or_throw(parse_big_index(s.substr(slash + 1)), "denominator");
      if (den <= 0) fail("denominator must be positive");
      return {num, den};
    } catch (const std::exception& e) {
      fail(std::string("malformed rational: ") + e.what());
    }
  }

  template <class T, class F>
  T get_or(const std::string& key, T fallback, F&& read) const {
    auto n = opt(key);
    return n ? read(*n) : fallback;
  }

  Index index_or(const std::string& key, Index fallback) const {
    return get_or(key, fallback, [](const Node& n) { return n.as_index(); });
  }
  Index positive_or(const std::string& key, Index fallback) const {
    return get_or(key, fallback, [](const Node& n) { return n.as_positive(); });
  }
  int int_or(const std::string& key, int fallback) const {
    return get_or(key, fallback, [](const Node& n) { return n.as_int(); });
  }
  double double_or(const std::string& key, double fallback) const {
    return get_or(key, fallback, [](const Node& n) { return n.as_double(); });
  }
  bool bool_or(const std::string& key, bool fallback) const {
    return get_or(key, fallback, [](const Node& n) { return n.as_bool(); });
  }
  std::string string_or(const std::string& key, std::string fallback) const {
    return get_or(key, fallback, [](const Node& n) { return n.as_string(); });
  }

 private:
  Node child_unchecked(const std::string& key) const {
    std::string esc;
    for (char c : key) esc += c == '~' ? std::string("~0") : c == '/' ? std::string("~1") : std::string(1, c);
    return Node(j_->at(key), ptr_ + "/" + esc, map_);
  }

  const json* j_;
  std::string ptr_;
  const SourceMap* map_;
};

// ---------------------------------------------------------------------------
// Integer polynomials with rational coefficients.

struct Polynomial {
  std::vector<Rational> coefs;  // coefs[d] multiplies n^d

  BigIndex eval_big(Index n) const {
    // common denominator
    BigIndex den = 1;
    for (const auto& c : coefs) den = den * BigIndex(c.den) / boost::multiprecision::gcd(den, BigIndex(c.den));
    BigIndex num = 0, pw = 1;
    for (const auto& c : coefs) {
      num += BigIndex(c.num) * (den / BigIndex(c.den)) * pw;
      pw *= n;
    }
    if (num % den != 0) throw std::domain_error("polynomial value is not an integer at n = " + std::to_string(n));
    return num / den;
  }

  Index eval(Index n) const { return narrow_or_throw(eval_big(n), "polynomial value"); }
};

inline Polynomial parse_polynomial(const Node& n) {
  Polynomial p;
  for (const Node& c : n.elements()) p.coefs.push_back(c.as_rational());
  if (p.coefs.empty()) n.fail("polynomial needs at least one coefficient");
  return p;
}

inline ordered_json polynomial_json(const Polynomial& p) {
  ordered_json out = ordered_json::array();
  for (const auto& c : p.coefs) out.push_back(c.den == 1 ? ordered_json(c.num) : ordered_json(c.str()));
  return out;
}

// ---------------------------------------------------------------------------
// Sequences, spaces, weights.

inline SideForm parse_side(const Node& n) {
  n.object();
  const std::string t = n["template"].as_string();
  if (t == "constant") {
    n.only({"template", "value"});
    const LogScalar v = n["value"].as_scalar();
    return ConstantForm{v};
  }
  if (t == "geometric") {
    n.only({"template", "base"});
    const double b = n["base"].as_double();
    if (!(b > 0)) n["base"].fail("base must be positive");
    return GeometricForm{b};
  }
  if (t == "abs_plus_one") {
    n.only({"template"});
    return AbsPlusOneForm{};
  }
  if (t == "alternating_powers") {
    n.only({"template", "base"});
    const double b = n.double_or("base", 2.0);
    if (!(b > 0)) n["base"].fail("base must be positive");
    return BlocksForm{AlternatingPowers{b}};
  }
  if (t == "ramp_plateau") {
    n.only({"template", "plateau_base"});
    const Index b = n.index_or("plateau_base", 10);
    if (b < 2) n["plateau_base"].fail("plateau_base must be >= 2");
    return BlocksForm{RampPlateau{b}};
  }
  if (t == "twos_halves_ones") {
    n.only({"template", "high", "low"});
    const double hi = n.double_or("high", 2.0), lo = n.double_or("low", 0.5);
    if (!(hi > 0) || !(lo > 0)) n.fail("block values must be positive");
    return BlocksForm{TwosHalvesOnes{hi, lo}};
  }
  n["template"].fail("unknown template '" + t + "' (constant, geometric, abs_plus_one, alternating_powers, "
                     "ramp_plateau, twos_halves_ones)");
}

inline ordered_json side_json(const SideForm& f) {
  return std::visit(
      [](const auto& form) -> ordered_json {
        using T = std::decay_t<decltype(form)>;
        ordered_json o;
        if constexpr (std::is_same_v<T, ConstantForm>) {
          o["template"] = "constant";
          const double v = form.value.to_real();
          if (LogScalar::from_real(v) == form.value)
            o["value"] = v;
          else
            o["value"] = {{"sign", form.value.sign()}, {"logmag", form.value.logmag()}};
        } else if constexpr (std::is_same_v<T, GeometricForm>) {
          o["template"] = "geometric";
          o["base"] = form.base;
        } else if constexpr (std::is_same_v<T, AbsPlusOneForm>) {
          o["template"] = "abs_plus_one";
        } else if constexpr (std::is_same_v<T, ClosedForm>) {
          throw std::invalid_argument("closed-form sequences ('" + form.label + "') cannot be exported");
        } else {
          std::visit(
              [&](const auto& b) {
                using B = std::decay_t<decltype(b)>;
                o["template"] = template_name(b);
                if constexpr (std::is_same_v<B, AlternatingPowers>) o["base"] = b.base;
                else if constexpr (std::is_same_v<B, RampPlateau>) o["plateau_base"] = b.plateau_base;
                else o["high"] = b.high, o["low"] = b.low;
              },
              form.tmpl);
        }
        return o;
      },
      f);
}

/// {"constant": v} or {"split", "negative", "nonnegative"}.
inline Sequence parse_sequence(const Node& n) {
  n.object();
  if (n.has("constant")) {
    n.only({"constant", "split"});
    const LogScalar v = n["constant"].as_scalar();
    return {ConstantForm{v}, ConstantForm{v}, n.index_or("split", 0)};
  }
  n.only({"split", "negative", "nonnegative"});
  return {parse_side(n["negative"]), parse_side(n["nonnegative"]), n.index_or("split", 0)};
}

inline ordered_json sequence_json(const Sequence& s) {
  ordered_json o;
  o["split"] = s.split;
  o["negative"] = side_json(s.negative);
  o["nonnegative"] = side_json(s.nonnegative);
  return o;
}

inline IndexSet parse_index_set(const Node& n) {
  const std::string s = n.as_string();
  if (s == "N") return IndexSet::N;
  if (s == "Z") return IndexSet::Z;
  n.fail("index set must be \"N\" or \"Z\"");
}

inline double parse_p(const Node& n) {
  const double p = n.as_double();
  if (!(p == 0.0 || p >= 1.0)) n.fail("p must be 0 (sup norm) or >= 1");
  return p;
}

inline KotheMatrix parse_matrix(const Node& n) {
  n.only({"mode", "nu"});
  const std::string mode = n["mode"].as_string();
  if (mode == "ones") return KotheMatrix::ones();
  if (mode == "rapidly_decreasing") return KotheMatrix::rapidly_decreasing();
  if (mode == "constant_in_k") return KotheMatrix::constant_in_k(parse_sequence(n["nu"]));
  if (mode == "power_in_k") return KotheMatrix::power_in_k(parse_sequence(n["nu"]));
  n["mode"].fail("unknown matrix mode '" + mode + "' (ones, constant_in_k, power_in_k, rapidly_decreasing)");
}

inline SpaceSpec parse_space(const Node& n) {
  n.only({"kind", "p", "J", "matrix", "nu", "metric_depth"});
  const std::string kind = n["kind"].as_string();
  const IndexSet J = parse_index_set(n["J"]);
  SpaceSpec s;
  if (kind == "lp") {
    s = SpaceSpec::lp(parse_p(n["p"]), J);
  } else if (kind == "weighted_lp") {
    s = SpaceSpec::weighted_lp(parse_p(n["p"]), parse_sequence(n["nu"]), J);
  } else if (kind == "s") {
    if (n.has("p") && n["p"].as_double() != 1.0) n["p"].fail("s(J) is fixed to p = 1");
    s = SpaceSpec::rapidly_decreasing(J);
  } else if (kind == "kothe") {
    s = SpaceSpec::kothe(parse_p(n["p"]), parse_matrix(n["matrix"]), J, "lambda_p(A," + std::string(to_string(J)) + ")");
    s.label = "lambda_" + SpaceSpec::format_p(s.p) + "(" + s.matrix.label + "," + to_string(J) + ")";
  } else {
    n["kind"].fail("unknown space kind '" + kind + "' (lp, weighted_lp, s, kothe)");
  }
  if (kind != "weighted_lp" && n.has("nu")) n["nu"].fail("'nu' applies to weighted_lp only");
  if (kind != "kothe" && n.has("matrix")) n["matrix"].fail("'matrix' applies to kothe only");
  const int depth = n.int_or("metric_depth", 40);
  if (depth < 1 || depth > 1000) n["metric_depth"].fail("metric_depth must be in [1, 1000]");
  s.metric_depth = depth;
  return s;
}

inline ordered_json matrix_json(const KotheMatrix& a) {
  ordered_json o;
  switch (a.mode) {
    case KotheMatrix::Mode::constant_in_k:
      o["mode"] = "constant_in_k";
      o["nu"] = sequence_json(a.nu);
      break;
    case KotheMatrix::Mode::power_in_k:
      o["mode"] = "power_in_k";
      o["nu"] = sequence_json(a.nu);
      break;
    case KotheMatrix::Mode::custom:
      throw std::invalid_argument("custom matrices ('" + a.label + "') cannot be exported");
  }
  return o;
}

inline ordered_json space_json(const SpaceSpec& s) {
  ordered_json o;
  o["kind"] = "kothe";
  o["p"] = s.p;
  o["J"] = to_string(s.J);
  o["matrix"] = matrix_json(s.matrix);
  o["metric_depth"] = s.metric_depth;
  return o;
}

inline WeightSpec parse_weights(const Node& n, IndexSet J) {
  n.only({"sequence"});
  return {J, parse_sequence(n["sequence"])};
}

inline ordered_json weights_json(const WeightSpec& w) { return {{"sequence", sequence_json(w.seq)}}; }

// ---------------------------------------------------------------------------
// Documents.

struct CheckSpec {
  std::string kind;
  std::optional<Verdict> expect;
  json params = json::object();
  std::string label;
};

struct OutputSpec {
  std::string format = "report";
  std::string path;  // empty: stdout
};

struct ExperimentConfig {
  std::string name = "experiment";
  SpaceSpec space;
  WeightSpec weights;
  std::vector<CheckSpec> checks;
  OutputSpec output;
  std::string source = "config";
  std::shared_ptr<std::string> text;  // retained for diagnostics
  std::shared_ptr<SourceMap> map;
  std::shared_ptr<json> doc;
};

inline const std::vector<std::string>& check_kinds() {
  static const std::vector<std::string> kinds{
      "dc",       "dc_search", "kothe_dc", "lp_c0_dc", "mop",         "hypercyclicity", "mly",
      "kothe_mly", "acb",      "f3",       "density",  "orbit",       "condition_C",    "continuity",
      "cesaro",   "anchor_equivalence",    "dc_A",     "dc_A_refute"};
  return kinds;
}

inline std::string parse_format(const Node& n) {
  const std::string f = n.as_string();
  if (f != "report" && f != "csv" && f != "json") n.fail("format must be report, csv or json");
  return f;
}

/// Structural schema check and decoding; check parameters are decoded by the runner.
inline ExperimentConfig parse_config(const std::string& text, const std::string& source = "config") {
  ExperimentConfig cfg;
  cfg.source = source;
  cfg.text = std::make_shared<std::string>(text);
  cfg.doc = std::make_shared<json>();
  try {
    *cfg.doc = json::parse(*cfg.text);
  } catch (const json::parse_error& e) {
    const LineCol lc = line_col(*cfg.text, e.byte > 0 ? e.byte - 1 : 0);
    std::string msg = e.what();
    const auto cut = msg.find("syntax error");
    if (cut != std::string::npos) msg = msg.substr(cut);
    throw ConfigError(source + ":" + std::to_string(lc.line) + ":" + std::to_string(lc.column) + ": " + msg);
  }
  cfg.map = std::make_shared<SourceMap>(source, *cfg.text);
  const Node root(*cfg.doc, "", cfg.map.get());
  root.only({"schema_version", "name", "space", "weights", "checks", "output"});
  const Node version = root["schema_version"];
  if (version.as_index() != kSchemaVersion) version.fail("unsupported schema_version (expected 1)");
  cfg.name = root.string_or("name", "experiment");
  cfg.space = parse_space(root["space"]);
  cfg.weights = parse_weights(root["weights"], cfg.space.J);
  const Node checks = root["checks"];
  if (checks.size() == 0) checks.fail("no checks listed");
  for (const Node& c : checks.elements()) {
    c.only({"kind", "expect", "params", "label"});
    CheckSpec spec;
    spec.kind = c["kind"].as_string();
    if (std::find(check_kinds().begin(), check_kinds().end(), spec.kind) == check_kinds().end())
      c["kind"].fail("unknown check kind '" + spec.kind + "'");
    if (auto e = c.opt("expect")) {
      try {
        spec.expect = parse_verdict(e->as_string());
      } catch (const std::invalid_argument& err) {
        e->fail(err.what());
      }
    }
    if (auto p = c.opt("params")) {
      p->object();
      spec.params = p->raw();
    }
    spec.label = c.string_or("label", spec.kind);
    cfg.checks.push_back(std::move(spec));
  }
  if (auto out = root.opt("output")) {
    out->only({"format", "path"});
    if (auto f = out->opt("format")) cfg.output.format = parse_format(*f);
    cfg.output.path = out->string_or("path", "");
  }
  return cfg;
}

/// Params node of check `i`, carrying source positions.
inline Node check_params(const ExperimentConfig& cfg, std::size_t i) {
  static const json empty = json::object();
  const std::string ptr = "/checks/" + std::to_string(i) + "/params";
  const json* p = &empty;
  if (cfg.doc && cfg.doc->contains("checks") && (*cfg.doc)["checks"].size() > i && (*cfg.doc)["checks"][i].contains("params"))
    p = &(*cfg.doc)["checks"][i]["params"];
  else
    p = &cfg.checks.at(i).params;
  return Node(*p, ptr, cfg.map.get());
}

inline ordered_json config_json(const ExperimentConfig& cfg) {
  ordered_json o;
  o["schema_version"] = kSchemaVersion;
  o["name"] = cfg.name;
  o["space"] = space_json(cfg.space);
  o["weights"] = weights_json(cfg.weights);
  o["checks"] = ordered_json::array();
  for (const auto& c : cfg.checks) {
    ordered_json e;
    e["kind"] = c.kind;
    if (c.label != c.kind) e["label"] = c.label;
    if (c.expect) e["expect"] = to_string(*c.expect);
    e["params"] = ordered_json::parse(c.params.dump());
    o["checks"].push_back(std::move(e));
  }
  o["output"] = {{"format", cfg.output.format}};
  if (!cfg.output.path.empty()) o["output"]["path"] = cfg.output.path;
  return o;
}

}  // namespace wbshift

#endif  // WBSHIFT_CONFIG_HPP
