#pragma once

// Text and JSON forms: ring specs (shorthand or inline config table), ring
// elements as coefficient arrays, Witt vectors, frame elements, displays,
// p^(-e)-scaled matrices and EL data.

#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "wittkit/dg.hpp"
#include "wittkit/el.hpp"
#include "wittkit/error.hpp"
#include "wittkit/iso.hpp"

namespace wittkit::io {

using json = nlohmann::json;

inline constexpr const char* kSchema = "wittkit/1";

namespace detail {

inline bool prime_power(i64 q, int& p, int& e) {
  if (q < 2) return false;
  for (i64 d = 2; d <= q; ++d) {
    if (q % d) continue;
    e = 0;
    while (q % d == 0) {
      q /= d;
      ++e;
    }
    p = static_cast<int>(d);
    return q == 1;
  }
  return false;
}

// `key = value` pairs of an inline table; values are ints, strings or int lists
using Value = std::variant<i64, std::string, std::vector<i64>>;

class TableParser {
 public:
  explicit TableParser(std::string s) : s_(std::move(s)) {}

  std::map<std::string, Value> parse() {
    skip();
    if (s_.compare(i_, 4, "ring") == 0) {
      std::size_t j = i_ + 4;
      while (j < s_.size() && std::isspace(static_cast<unsigned char>(s_[j]))) ++j;
      if (j < s_.size() && s_[j] == '=') i_ = j + 1;
    }
    expect('{');
    std::map<std::string, Value> out;
    skip();
    if (peek() == '}') {
      ++i_;
      return out;
    }
    for (;;) {
      std::string key = ident();
      expect('=');
      out[key] = value();
      skip();
      if (peek() == ',') {
        ++i_;
        continue;
      }
      expect('}');
      break;
    }
    skip();
    if (i_ != s_.size()) bad("trailing input");
    return out;
  }

 private:
  [[noreturn]] void bad(const std::string& what) const {
    fail(ErrorKind::Parse, "ring config: " + what + " at offset " + std::to_string(i_));
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) bad(std::string("expected '") + c + "'");
    ++i_;
  }
  std::string ident() {
    skip();
    std::size_t j = i_;
    while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
    if (j == i_) bad("expected a key");
    std::string k = s_.substr(i_, j - i_);
    i_ = j;
    return k;
  }
  i64 integer() {
    skip();
    std::size_t j = i_;
    if (j < s_.size() && (s_[j] == '-' || s_[j] == '+')) ++j;
    while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
    if (j == i_ || (j == i_ + 1 && !std::isdigit(static_cast<unsigned char>(s_[i_])))) bad("expected an integer");
    const i64 v = std::stoll(s_.substr(i_, j - i_));
    i_ = j;
    return v;
  }
  Value value() {
    const char c = peek();
    if (c == '"') {
      const std::size_t end = s_.find('"', i_ + 1);
      if (end == std::string::npos) bad("unterminated string");
      std::string v = s_.substr(i_ + 1, end - i_ - 1);
      i_ = end + 1;
      return v;
    }
    if (c == '[') {
      ++i_;
      std::vector<i64> v;
      if (peek() == ']') {
        ++i_;
        return v;
      }
      for (;;) {
        v.push_back(integer());
        if (peek() == ',') {
          ++i_;
          continue;
        }
        expect(']');
        return v;
      }
    }
    return integer();
  }

  std::string s_;
  std::size_t i_ = 0;
};

inline i64 get_int(const std::map<std::string, Value>& t, const std::string& k, i64 dflt) {
  auto it = t.find(k);
  if (it == t.end()) return dflt;
  if (auto* v = std::get_if<i64>(&it->second)) return *v;
  fail(ErrorKind::Parse, "ring config: " + k + " must be an integer");
}

}  // namespace detail

/// Z4, Z/8, F2, F4, F9, with an optional [e] suffix for ε² = 0.
inline RingPtr parse_ring_shorthand(std::string s) {
  int eps = 1;
  if (s.size() > 3 && s.compare(s.size() - 3, 3, "[e]") == 0) {
    eps = 2;
    s.resize(s.size() - 3);
  }
  require(s.size() >= 2, ErrorKind::Parse, "unrecognized ring '" + s + "'");
  const char kind = s[0];
  std::string num = s.substr(1);
  if (!num.empty() && num[0] == '/') num = num.substr(1);
  require(!num.empty() && num.find_first_not_of("0123456789") == std::string::npos, ErrorKind::Parse,
          "unrecognized ring '" + s + "'");
  int p = 0, e = 0;
  if (!detail::prime_power(std::stoll(num), p, e)) fail(ErrorKind::Parse, "'" + num + "' is not a prime power");
  if (kind == 'Z') return Ring::make(RingSpec{p, e, 1, {}, eps});
  if (kind == 'F') return Ring::make(RingSpec{p, 1, e, {}, eps});
  fail(ErrorKind::Parse, "unrecognized ring '" + s + "'");
}

/// `ring = { p = 2, kind = "Fq", a = 2, modulus = [1,1,1] }`. Kinds: "Zpn"
/// (with N), "Fq" (with a), "Fq[e]" and "Zpn[e]"; N, a, eps may be given
/// explicitly for the general presentation.
inline RingPtr parse_ring_config(const std::string& text) {
  const auto t = detail::TableParser(text).parse();
  RingSpec spec;
  spec.p = static_cast<int>(detail::get_int(t, "p", 0));
  require(spec.p > 0, ErrorKind::Parse, "ring config needs p");
  std::string kind = "Fq";
  if (auto it = t.find("kind"); it != t.end()) {
    auto* k = std::get_if<std::string>(&it->second);
    require(k != nullptr, ErrorKind::Parse, "kind must be a string");
    kind = *k;
  }
  if (kind == "Zpn" || kind == "Zpn[e]") {
    spec.N = static_cast<int>(detail::get_int(t, "N", 1));
  } else if (kind == "Fq" || kind == "Fq[e]") {
    spec.N = static_cast<int>(detail::get_int(t, "N", 1));
  } else if (kind != "general") {
    fail(ErrorKind::Parse, "unknown ring kind '" + kind + "'");
  }
  spec.a = static_cast<int>(detail::get_int(t, "a", 1));
  spec.eps = static_cast<int>(detail::get_int(t, "eps", kind.ends_with("[e]") ? 2 : 1));
  if (auto it = t.find("modulus"); it != t.end()) {
    auto* m = std::get_if<std::vector<i64>>(&it->second);
    require(m != nullptr, ErrorKind::Parse, "modulus must be a list");
    spec.modulus = *m;
  }
  for (const auto& [k, v] : t)
    if (k != "p" && k != "kind" && k != "N" && k != "a" && k != "eps" && k != "modulus")
      fail(ErrorKind::Parse, "unknown ring config key '" + k + "'");
  auto r = Ring::make(spec);
  if ((kind == "Fq" || kind == "Fq[e]") && !r->is_local()) fail(ErrorKind::Usage, "modulus is reducible mod p");
  return r;
}

/// Shorthand, inline config, or @file holding a config.
inline std::string read_arg(const std::string& s) {
  if (s.empty() || s[0] != '@') return s;
  std::ifstream in(s.substr(1));
  if (!in) fail(ErrorKind::Usage, "cannot read " + s.substr(1));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline RingPtr parse_ring(const std::string& arg) {
  const std::string s = read_arg(arg);
  if (s.find('{') != std::string::npos) return parse_ring_config(s);
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  return parse_ring_shorthand(t);
}

/// JSON text, @file, or a path to an existing file.
inline json parse_json(const std::string& arg) {
  std::error_code ec;
  const bool path = !arg.empty() && arg[0] != '@' && arg.find_first_of("[{") == std::string::npos &&
                    std::filesystem::is_regular_file(arg, ec);
  const std::string s = read_arg(path ? "@" + arg : arg);
  try {
    return json::parse(s);
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, std::string("malformed JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// elements

inline json to_json(const RingElement& x) {
  json a = json::array();
  for (i64 c : x.coeffs()) a.push_back(c);
  return a;
}

inline RingElement ring_element_from_json(const RingPtr& r, const json& j) {
  if (j.is_number_integer()) return RingElement::from_int(r, j.get<i64>());
  require(j.is_array(), ErrorKind::Parse, "ring element must be an integer or a coefficient array");
  require(static_cast<int>(j.size()) <= r->dim(), ErrorKind::Parse, "too many coefficients for " + r->name());
  std::vector<i64> c(static_cast<std::size_t>(r->dim()), 0);
  for (std::size_t i = 0; i < j.size(); ++i) {
    require(j[i].is_number_integer(), ErrorKind::Parse, "coefficients must be integers");
    c[i] = mod_reduce(j[i].get<i64>(), r->characteristic());
  }
  return RingElement(r, std::move(c));
}

inline json to_json(const WittVector& x) {
  json c = json::array();
  for (int i = 0; i < x.len(); ++i) c.push_back(to_json(x[i]));
  return json{{"len", x.len()}, {"coeffs", c}};
}

/// {"len": m, "coeffs": [...]}, or the bare coefficient list padded to m.
inline WittVector witt_from_json(const RingPtr& r, int m, const json& j) {
  json coeffs = j;
  int len = m;
  if (j.is_object()) {
    require(j.contains("coeffs"), ErrorKind::Parse, "Witt vector needs \"coeffs\"");
    coeffs = j["coeffs"];
    len = j.value("len", static_cast<int>(coeffs.size()));
  }
  require(coeffs.is_array(), ErrorKind::Parse, "Witt vector coefficients must be a list");
  require(len >= 1, ErrorKind::Usage, "Witt vector length must be positive");
  require(static_cast<int>(coeffs.size()) <= len, ErrorKind::Parse, "more coefficients than the truncation length");
  std::vector<RingElement> c;
  for (const auto& x : coeffs) c.push_back(ring_element_from_json(r, x));
  while (static_cast<int>(c.size()) < len) c.push_back(RingElement::zero(r));
  return WittVector(r, std::move(c));
}

/// Matrix entries: an integer n is n·1 in W_m(R); a list or object is a Witt vector.
inline WittVector entry_from_json(const RingPtr& r, int m, const json& j) {
  if (j.is_number_integer()) return WittVector::from_int(r, m, j.get<i64>());
  return witt_from_json(r, m, j);
}

inline WMatrix wmatrix_from_json(const RingPtr& r, int m, const json& j) {
  require(j.is_array(), ErrorKind::Parse, "matrix must be a list of rows");
  const int rows = static_cast<int>(j.size());
  const int cols = rows ? static_cast<int>(j[0].size()) : 0;
  WMatrix a(rows, cols);
  for (int i = 0; i < rows; ++i) {
    require(j[i].is_array() && static_cast<int>(j[i].size()) == cols, ErrorKind::Parse, "ragged matrix");
    for (int k = 0; k < cols; ++k) a(i, k) = entry_from_json(r, m, j[i][k]);
  }
  return a;
}

inline json to_json(const WMatrix& a) {
  json rows = json::array();
  for (int i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < a.cols(); ++k) row.push_back(to_json(a(i, k)));
    rows.push_back(row);
  }
  return rows;
}

inline json to_json(const FrameElement& x) { return json{{"deg", x.deg}, {"payload", to_json(x.u)}}; }

inline FrameElement frame_from_json(const RingPtr& r, int m, const json& j) {
  require(j.is_object() && j.contains("deg") && j.contains("payload"), ErrorKind::Parse,
          "frame element needs \"deg\" and \"payload\"");
  return FrameElement(j["deg"].get<int>(), entry_from_json(r, m, j["payload"]));
}

inline FMatrix fmatrix_from_json(const RingPtr& r, int m, const json& j) {
  require(j.is_array(), ErrorKind::Parse, "matrix must be a list of rows");
  const int rows = static_cast<int>(j.size());
  const int cols = rows ? static_cast<int>(j[0].size()) : 0;
  FMatrix a(rows, cols);
  for (int i = 0; i < rows; ++i) {
    require(j[i].is_array() && static_cast<int>(j[i].size()) == cols, ErrorKind::Parse, "ragged matrix");
    for (int k = 0; k < cols; ++k) a(i, k) = frame_from_json(r, m, j[i][k]);
  }
  return a;
}

inline json to_json(const FMatrix& a) {
  json rows = json::array();
  for (int i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < a.cols(); ++k) row.push_back(to_json(a(i, k)));
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// modules, displays, scaled matrices

/// {"0": 2, "1": 1} (basis sorted by weight) or an explicit weight list.
inline std::vector<int> weights_from_json(const json& j) {
  if (j.is_array()) return j.get<std::vector<int>>();
  require(j.is_object(), ErrorKind::Parse, "weights must be a list or a weight -> rank map");
  std::map<int, int> ranks;
  for (const auto& [k, v] : j.items()) {
    try {
      ranks[std::stoi(k)] = v.get<int>();
    } catch (const std::exception&) {
      fail(ErrorKind::Parse, "bad weight key '" + k + "'");
    }
  }
  std::vector<int> w;
  for (const auto& [i, n] : ranks) {
    require(n >= 0, ErrorKind::Usage, "negative rank");
    w.insert(w.end(), n, i);
  }
  return w;
}

inline json weights_to_json(const GradedModule& L) {
  json o = json::object();
  for (const auto& [w, n] : L.ranks()) o[std::to_string(w)] = n;
  return o;
}

inline Display display_from_json(const RingPtr& r, int m, const json& j) {
  require(j.is_object() && j.contains("weights") && j.contains("phi"), ErrorKind::Parse,
          "display needs \"weights\" and \"phi\"");
  return display_validate(GradedModule(r, m, weights_from_json(j["weights"])), wmatrix_from_json(r, m, j["phi"]));
}

inline json to_json(const Display& D) {
  json w = json::array();
  for (int x : D.L.weights()) w.push_back(x);
  return json{{"weights", w}, {"phi", to_json(D.phi)}};
}

/// {"pexp": e, "matrix": [[...]]} for p^(-e)·A; a bare list means e = 0.
inline QMatrix qmatrix_from_json(const RingPtr& r, int m, const json& j) {
  if (j.is_array()) return QMatrix{0, wmatrix_from_json(r, m, j)};
  require(j.is_object() && j.contains("matrix"), ErrorKind::Parse, "scaled matrix needs \"matrix\"");
  return QMatrix{j.value("pexp", 0), wmatrix_from_json(r, m, j["matrix"])};
}

inline json to_json(const QMatrix& q) { return json{{"pexp", q.e}, {"matrix", to_json(q.A)}}; }

inline json to_json(const Rational& x) {
  if (x.denominator() == 1) return x.numerator();
  return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

/// {"factors": [{"a": 2, "s": 1}], "lambda_rank": r, "action": [[...]], "mu": [0, 1, ...]}.
/// One factor after Morita reduction; without "action" the regular datum
/// O_L^r with Λ⁰(j) ranks "d" is built.
struct ParsedEL {
  ELDatum datum;
  std::optional<ELRegular> regular;
};

inline ParsedEL el_from_json(const RingPtr& k, int m, const json& j) {
  require(j.is_object() && j.contains("factors"), ErrorKind::Parse, "EL datum needs \"factors\"");
  const auto& f = j["factors"];
  require(f.is_array() && f.size() == 1, ErrorKind::Usage, "exactly one simple factor is supported");
  const int a = f[0].value("a", 1);
  const int s = f[0].value("s", 1);
  require(s >= 1, ErrorKind::Usage, "matrix size s must be positive");
  if (j.contains("action")) {
    ELDatum d{a, wmatrix_from_json(k, m, j["action"]), j.value("mu", std::vector<int>{})};
    el_validate(d);
    return {d, std::nullopt};
  }
  const int r = j.value("lambda_rank", 1);
  const auto dj = j.value("d", std::vector<int>(static_cast<std::size_t>(a), 0));
  auto R = el_regular(k, m, a, r, dj);
  return {R.datum, R};
}

inline std::vector<int> int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      require(tok.find_first_not_of(" ", used) == std::string::npos, ErrorKind::Parse, "bad integer '" + tok + "'");
    } catch (const std::logic_error&) {
      fail(ErrorKind::Parse, "bad integer '" + tok + "'");
    }
  }
  return out;
}

}  // namespace wittkit::io
