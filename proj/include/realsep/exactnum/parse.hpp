#pragma once

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "realsep/exactnum/form.hpp"

namespace realsep {

/// Grammar (whitespace insignificant):
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor (['*'] factor)*          juxtaposition multiplies
///   factor := atom ['^' integer]
///   atom   := number ['/' integer] | 'sqrt' '(' integer ')' | variable | '(' expr ')'
///   variable := 'x' | 'y' | 'z' | 'x' digits
/// Numbers are integers or exact decimals. A '/' is only allowed inside a
/// rational literal such as 3/4.
namespace detail {

struct SparsePoly {
  std::map<Exponent, Qsqrt> terms;

  static SparsePoly constant(const Qsqrt& c) {
    SparsePoly p;
    if (!c.is_zero()) p.terms[{}] = c;
    return p;
  }
  static SparsePoly variable(int index) {
    SparsePoly p;
    Exponent e(static_cast<size_t>(index) + 1, 0);
    e.back() = 1;
    p.terms[e] = Qsqrt(1);
    return p;
  }
  static Exponent add(const Exponent& a, const Exponent& b) {
    Exponent r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }
  void accumulate(const Exponent& e, const Qsqrt& c) {
    auto& slot = terms[e];
    slot += c;
    if (slot.is_zero()) terms.erase(e);
  }
  SparsePoly operator+(const SparsePoly& o) const {
    SparsePoly r = *this;
    for (const auto& [e, c] : o.terms) r.accumulate(e, c);
    return r;
  }
  SparsePoly operator-() const {
    SparsePoly r = *this;
    for (auto& [e, c] : r.terms) c = -c;
    return r;
  }
  SparsePoly operator*(const SparsePoly& o) const {
    SparsePoly r;
    for (const auto& [ea, ca] : terms)
      for (const auto& [eb, cb] : o.terms) r.accumulate(add(ea, eb), ca * cb);
    return r;
  }
};

class Parser {
 public:
  Parser(std::string text, int line) : s_(std::move(text)), line_(line) {}

  SparsePoly parse() {
    SparsePoly p = expr();
    skip();
    if (pos_ < s_.size()) error("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

  bool saw_xyz() const { return saw_xyz_; }
  bool saw_indexed() const { return saw_indexed_; }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorCode::parse_error,
         "line " + std::to_string(line_) + ", column " + std::to_string(pos_ + 1) + ": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  bool at_atom_start() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '(' || c == 'x' || c == 'y' ||
           c == 'z' || c == 's';
  }

  SparsePoly expr() {
    SparsePoly acc;
    bool first = true;
    while (true) {
      bool neg = false;
      if (accept('+')) {
      } else if (accept('-')) {
        neg = true;
      } else if (!first) {
        break;
      }
      SparsePoly t = term();
      acc = acc + (neg ? -t : t);
      first = false;
    }
    return acc;
  }

  SparsePoly term() {
    SparsePoly acc = factor();
    while (true) {
      if (accept('*')) {
        acc = acc * factor();
      } else if (at_atom_start()) {
        acc = acc * factor();
      } else {
        break;
      }
    }
    return acc;
  }

  SparsePoly factor() {
    SparsePoly base = atom();
    if (accept('^')) {
      skip();
      std::string digits = read_digits();
      if (digits.empty()) error("expected integer exponent");
      if (digits.size() > 3) error("exponent too large");
      int e = std::stoi(digits);
      SparsePoly r = SparsePoly::constant(Qsqrt(1));
      for (int i = 0; i < e; ++i) r = r * base;
      return r;
    }
    return base;
  }

  std::string read_digits() {
    size_t b = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return s_.substr(b, pos_ - b);
  }

  SparsePoly atom() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      SparsePoly e = expr();
      if (!accept(')')) error("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t b = pos_;
      read_digits();
      if (pos_ < s_.size() && s_[pos_] == '.') {
        ++pos_;
        read_digits();
      }
      std::string lit = s_.substr(b, pos_ - b);
      if (lit == ".") error("malformed number");
      Rational q = parse_decimal(lit);
      if (accept('/')) {
        skip();
        std::string den = read_digits();
        if (den.empty()) error("expected integer denominator");
        Integer d(den);
        if (d == 0) error("zero denominator");
        q /= Rational(d);
      }
      return SparsePoly::constant(Qsqrt(q));
    }
    if (s_.compare(pos_, 4, "sqrt") == 0) {
      pos_ += 4;
      if (!accept('(')) error("expected '(' after sqrt");
      skip();
      std::string digits = read_digits();
      if (digits.empty()) error("sqrt expects a nonnegative integer");
      if (!accept(')')) error("expected ')'");
      return SparsePoly::constant(Qsqrt::sqrt_of(Integer(digits)));
    }
    if (c == 'x' || c == 'y' || c == 'z') {
      ++pos_;
      if (c == 'x' && pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        std::string digits = read_digits();
        if (digits.size() > 3) error("variable index too large");
        saw_indexed_ = true;
        return SparsePoly::variable(std::stoi(digits));
      }
      saw_xyz_ = true;
      return SparsePoly::variable(c - 'x');
    }
    error("unexpected character '" + std::string(1, c) + "'");
  }

  std::string s_;
  size_t pos_ = 0;
  int line_ = 1;
  bool saw_xyz_ = false, saw_indexed_ = false;
};

}  // namespace detail

/// Parse one homogeneous form. `nvars` = 0 infers the variable count
/// (3 for x, y, z; max index + 1, at least 3, for x0..xm).
inline PlaneForm parse_form(const std::string& text, int nvars = 0, int line = 1) {
  detail::Parser parser(text, line);
  detail::SparsePoly p = parser.parse();
  auto where = [&](const std::string& m) { return "line " + std::to_string(line) + ": " + m; };
  if (parser.saw_xyz() && parser.saw_indexed())
    fail(ErrorCode::parse_error, where("mixing x, y, z with indexed variables"));
  int needed = 3;
  for (const auto& [e, c] : p.terms) needed = std::max(needed, static_cast<int>(e.size()));
  if (nvars == 0) nvars = needed;
  if (needed > nvars) fail(ErrorCode::parse_error, where("variable index exceeds " + std::to_string(nvars - 1)));
  if (p.terms.empty()) fail(ErrorCode::parse_error, where("form is identically zero"));
  int degree = -1;
  for (const auto& [e, c] : p.terms) {
    int d = std::accumulate(e.begin(), e.end(), 0);
    if (degree >= 0 && d != degree) fail(ErrorCode::parse_error, where("polynomial is not homogeneous"));
    degree = d;
  }
  long radicand = 0;
  PlaneForm f(nvars, degree);
  for (const auto& [e, c] : p.terms) {
    if (!c.is_rational()) {
      if (radicand != 0 && radicand != c.radicand())
        fail(ErrorCode::parse_error, where("more than one square-root radicand"));
      radicand = c.radicand();
    }
    Exponent full(static_cast<size_t>(nvars), 0);
    std::copy(e.begin(), e.end(), full.begin());
    f.add_term(full, c);
  }
  return f;
}

/// Non-empty lines, '#' comments stripped.
inline std::vector<std::pair<int, std::string>> content_lines(const std::string& text) {
  std::vector<std::pair<int, std::string>> out;
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.emplace_back(n, line);
  }
  return out;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::invalid_input, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// A .poly file holds exactly one form (may span lines).
inline PlaneForm parse_poly_text(const std::string& text, int nvars = 0) {
  auto lines = content_lines(text);
  if (lines.empty()) fail(ErrorCode::parse_error, "empty polynomial file");
  std::string joined;
  for (const auto& [n, l] : lines) joined += l + " ";
  return parse_form(joined, nvars, lines.front().first);
}

/// One form per line.
inline std::vector<PlaneForm> parse_form_list(const std::string& text, int nvars = 0) {
  std::vector<PlaneForm> out;
  for (const auto& [n, l] : content_lines(text)) out.push_back(parse_form(l, nvars, n));
  return out;
}

}  // namespace realsep
