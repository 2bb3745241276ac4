#include "fxsv/parser.hpp"

#include <map>
#include <set>

namespace fxsv {

namespace {

enum class Tok { kIdent, kNumber, kEquals, kSemi, kLBracket, kRBracket, kComma, kDot, kEnd };

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

class Lexer {
 public:
  Lexer(std::string_view text, std::string source)
      : text_(text), source_(std::move(source)) {}

  Token next() {
    skip_ws_and_comments();
    int line = line_, col = col_;
    if (eof()) return {Tok::kEnd, "", line, col};
    char c = peek();
    if (c == '=') return advance(), Token{Tok::kEquals, "=", line, col};
    if (c == ';') return advance(), Token{Tok::kSemi, ";", line, col};
    if (c == '[') return advance(), Token{Tok::kLBracket, "[", line, col};
    if (c == ']') return advance(), Token{Tok::kRBracket, "]", line, col};
    if (c == ',') return advance(), Token{Tok::kComma, ",", line, col};
    if (is_digit(c) || c == '+' || c == '-' || c == '.') {
      std::string num = lex_number(line, col);
      if (!num.empty()) return {Tok::kNumber, num, line, col};
      // A lone '.' is the key separator.
      advance();
      return {Tok::kDot, ".", line, col};
    }
    if (is_ident_start(c)) {
      std::string id;
      while (!eof() && is_ident_char(peek())) id.push_back(take());
      return {Tok::kIdent, id, line, col};
    }
    throw SpecError(source_, line, col, std::string("unexpected character '") + c + "'");
  }

  const std::string& source() const { return source_; }

 private:
  std::string_view text_;
  std::string source_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;

  bool eof() const { return pos_ >= text_.size(); }
  char peek(size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  char take() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void advance() { take(); }

  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  static bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

  void skip_ws_and_comments() {
    for (;;) {
      while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\r' ||
                        peek() == '\n'))
        advance();
      if (!eof() && peek() == '%') {
        while (!eof() && peek() != '\n') advance();
        continue;
      }
      return;
    }
  }

  // Returns "" if the text at the cursor is not a number (e.g. a lone dot).
  std::string lex_number(int line, int col) {
    size_t look = 0;
    std::string out;
    char c = peek(look);
    if (c == '+' || c == '-') {
      out.push_back(c);
      ++look;
    }
    bool any_digit = false;
    while (is_digit(peek(look))) {
      out.push_back(peek(look));
      ++look;
      any_digit = true;
    }
    if (peek(look) == '.') {
      // Only part of a number if a digit appears on either side.
      if (any_digit || is_digit(peek(look + 1))) {
        out.push_back('.');
        ++look;
        while (is_digit(peek(look))) {
          out.push_back(peek(look));
          ++look;
          any_digit = true;
        }
      }
    }
    if (!any_digit) {
      if (out.empty()) return "";
      throw SpecError(source_, line, col, "malformed number '" + out + "'");
    }
    for (size_t i = 0; i < look; ++i) advance();
    return out;
  }
};

// A parsed right-hand side: always a matrix (scalars are 1 x 1).
struct Value {
  RationalMatrix matrix;
  int line, col;
};

class Parser {
 public:
  explicit Parser(const SpecFile& file)
      : lex_(file.text, file.source_name), source_(file.source_name) {
    cur_ = lex_.next();
  }

  ParsedSpec parse();

 private:
  Lexer lex_;
  std::string source_;
  Token cur_;
  std::map<std::string, Value> values_;
  std::map<std::string, Token> key_tokens_;

  [[noreturn]] void fail(const Token& at, const std::string& msg) {
    throw SpecError(source_, at.line, at.col, msg);
  }

  void bump() { cur_ = lex_.next(); }

  Token expect(Tok kind, const char* what) {
    if (cur_.kind != kind)
      fail(cur_, std::string("expected ") + what + ", got '" +
                     (cur_.kind == Tok::kEnd ? "<end of file>" : cur_.text) + "'");
    Token t = cur_;
    bump();
    return t;
  }

  void parse_statement() {
    Token first = expect(Tok::kIdent, "identifier");
    std::string key = first.text;
    while (cur_.kind == Tok::kDot) {
      bump();
      Token part = expect(Tok::kIdent, "identifier after '.'");
      key += "." + part.text;
    }
    expect(Tok::kEquals, "'='");
    Value v;
    v.line = cur_.line;
    v.col = cur_.col;
    if (cur_.kind == Tok::kNumber) {
      RationalMatrix m(1, 1);
      m.at(0, 0) = Rational::from_decimal(cur_.text);
      v.matrix = m;
      bump();
    } else if (cur_.kind == Tok::kLBracket) {
      v.matrix = parse_matrix();
    } else {
      fail(cur_, "expected a number or '['");
    }
    expect(Tok::kSemi, "';'");
    if (values_.count(key)) fail(first, "duplicate key '" + key + "'");
    values_.emplace(key, std::move(v));
    key_tokens_.emplace(key, first);
  }

  RationalMatrix parse_matrix() {
    Token open = expect(Tok::kLBracket, "'['");
    std::vector<std::vector<Rational>> rows;
    rows.emplace_back();
    for (;;) {
      if (cur_.kind == Tok::kRBracket) {
        bump();
        break;
      }
      if (cur_.kind == Tok::kSemi) {
        bump();
        rows.emplace_back();
        continue;
      }
      if (cur_.kind == Tok::kComma) {
        bump();
        continue;
      }
      if (cur_.kind == Tok::kNumber) {
        rows.back().push_back(Rational::from_decimal(cur_.text));
        bump();
        continue;
      }
      fail(cur_, "expected a number, ';', ',' or ']' inside matrix");
    }
    if (!rows.empty() && rows.back().empty()) rows.pop_back();
    if (rows.empty()) fail(open, "empty matrix");
    size_t cols = rows[0].size();
    for (const auto& r : rows)
      if (r.size() != cols)
        fail(open, "ragged matrix rows (expected " + std::to_string(cols) +
                       " columns, got " + std::to_string(r.size()) + ")");
    RationalMatrix m(rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    return m;
  }

  const Value* find(const std::string& key) {
    auto it = values_.find(key);
    return it == values_.end() ? nullptr : &it->second;
  }

  [[noreturn]] void fail_key(const std::string& key, const std::string& msg) {
    auto it = key_tokens_.find(key);
    if (it != key_tokens_.end()) fail(it->second, msg);
    throw SpecError(source_, 1, 1, msg);
  }

  const Value& require(const std::string& key) {
    const Value* v = find(key);
    if (!v)
      throw SpecError(source_, 1, 1, "missing required key '" + key + "'");
    return *v;
  }

  int64_t require_integer(const std::string& key, int64_t lo, int64_t hi) {
    const Value& v = require(key);
    if (v.matrix.rows() != 1 || v.matrix.cols() != 1)
      fail_key(key, "'" + key + "' must be a scalar");
    const Rational& r = v.matrix.at(0, 0);
    if (!r.is_integer() || !r.num().fits_int64())
      fail_key(key, "'" + key + "' must be an integer");
    int64_t x = r.num().to_int64();
    if (x < lo || x > hi)
      fail_key(key, "'" + key + "' out of range [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]");
    return x;
  }

  std::vector<Rational> vector_value(const std::string& key, size_t len,
                                     bool broadcast_scalar) {
    const Value& v = *find(key);
    const RationalMatrix& m = v.matrix;
    if (m.rows() == 1 && m.cols() == 1 && broadcast_scalar)
      return std::vector<Rational>(len, m.at(0, 0));
    size_t got = m.rows() == 1 ? m.cols() : (m.cols() == 1 ? m.rows() : 0);
    if (got != len)
      fail_key(key, "'" + key + "' must be a vector of length " +
                        std::to_string(len));
    std::vector<Rational> out(len);
    for (size_t i = 0; i < len; ++i)
      out[i] = m.rows() == 1 ? m.at(0, i) : m.at(i, 0);
    return out;
  }
};

ParsedSpec Parser::parse() {
  while (cur_.kind != Tok::kEnd) parse_statement();

  static const std::set<std::string> known = {
      "A", "B", "C", "D", "K", "implementation.int_bits",
      "implementation.frac_bits", "inputs.min", "inputs.max",
      "states.initial", "error.bound", "bound"};
  for (const auto& [key, tok] : key_tokens_)
    if (!known.count(key)) fail(tok, "unknown key '" + key + "'");

  ParsedSpec spec;
  spec.system.a = require("A").matrix;
  spec.system.b = require("B").matrix;
  spec.system.c = require("C").matrix;
  spec.system.d = require("D").matrix;
  size_t n = spec.system.a.rows();
  if (spec.system.a.cols() != n) fail_key("A", "A must be square");
  if (spec.system.b.rows() != n)
    fail_key("B", "B must have as many rows as A");
  size_t m = spec.system.b.cols();
  if (spec.system.c.cols() != n)
    fail_key("C", "C must have as many columns as A");
  size_t p = spec.system.c.rows();
  if (spec.system.d.rows() != p || spec.system.d.cols() != m)
    fail_key("D", "D must be " + std::to_string(p) + "x" + std::to_string(m));
  if (const Value* k = find("K")) {
    if (k->matrix.rows() != m || k->matrix.cols() != n)
      fail_key("K", "K must be " + std::to_string(m) + "x" + std::to_string(n));
    spec.system.k = k->matrix;
  }

  spec.int_bits = static_cast<uint32_t>(require_integer("implementation.int_bits", 1, 62));
  spec.frac_bits = static_cast<uint32_t>(require_integer("implementation.frac_bits", 0, 62));
  FixedPointFormat fmt;
  try {
    fmt = FixedPointFormat(spec.int_bits, spec.frac_bits);
  } catch (const std::invalid_argument& e) {
    fail_key("implementation.int_bits", e.what());
  }

  if (find("states.initial")) {
    spec.system.x0 = vector_value("states.initial", n, false);
  } else {
    spec.system.x0.assign(n, Rational(0));
  }
  if (find("inputs.min")) {
    spec.system.input_lo = vector_value("inputs.min", m, true);
  } else {
    spec.system.input_lo.assign(m, fmt.min_value());
  }
  if (find("inputs.max")) {
    spec.system.input_hi = vector_value("inputs.max", m, true);
  } else {
    spec.system.input_hi.assign(m, fmt.max_value());
  }
  if (find("bound"))
    spec.bound = static_cast<uint32_t>(require_integer("bound", 1, 1000000));
  if (const Value* e = find("error.bound")) {
    if (e->matrix.rows() != 1 || e->matrix.cols() != 1)
      fail_key("error.bound", "'error.bound' must be a scalar");
    Rational eps = e->matrix.at(0, 0);
    if (!(eps > Rational(0)))
      fail_key("error.bound", "'error.bound' must be positive");
    spec.error_bound = eps;
  }

  try {
    spec.system.validate();
  } catch (const std::invalid_argument& e) {
    throw SpecError(source_, 1, 1, e.what());
  }
  return spec;
}

std::string render(const Rational& r) {
  auto dec = r.to_decimal_string();
  if (!dec)
    throw std::invalid_argument(
        "pretty_print: value has no terminating decimal form: " + r.to_string());
  return *dec;
}

std::string render_matrix(const RationalMatrix& m) {
  std::string out = "[";
  for (size_t i = 0; i < m.rows(); ++i) {
    if (i) out += "; ";
    for (size_t j = 0; j < m.cols(); ++j) {
      if (j) out += " ";
      out += render(m.at(i, j));
    }
  }
  out += "]";
  return out;
}

std::string render_vector(const std::vector<Rational>& v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += " ";
    out += render(v[i]);
  }
  out += "]";
  return out;
}

}  // namespace

ParsedSpec parse_spec(const SpecFile& file) { return Parser(file).parse(); }

std::string pretty_print(const ParsedSpec& spec) {
  std::string out;
  out += "A = " + render_matrix(spec.system.a) + ";\n";
  out += "B = " + render_matrix(spec.system.b) + ";\n";
  out += "C = " + render_matrix(spec.system.c) + ";\n";
  out += "D = " + render_matrix(spec.system.d) + ";\n";
  if (spec.system.k) out += "K = " + render_matrix(*spec.system.k) + ";\n";
  out += "states.initial = " + render_vector(spec.system.x0) + ";\n";
  out += "inputs.min = " + render_vector(spec.system.input_lo) + ";\n";
  out += "inputs.max = " + render_vector(spec.system.input_hi) + ";\n";
  out += "implementation.int_bits = " + std::to_string(spec.int_bits) + ";\n";
  out += "implementation.frac_bits = " + std::to_string(spec.frac_bits) + ";\n";
  out += "bound = " + std::to_string(spec.bound) + ";\n";
  if (spec.error_bound)
    out += "error.bound = " + render(*spec.error_bound) + ";\n";
  return out;
}

bool ParsedSpec::operator==(const ParsedSpec& o) const {
  return system == o.system && int_bits == o.int_bits &&
         frac_bits == o.frac_bits && bound == o.bound &&
         error_bound == o.error_bound;
}

}  // namespace fxsv
