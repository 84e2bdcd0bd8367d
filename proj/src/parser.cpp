#include "stlobs/parser.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <optional>

#include "numbers.hpp"

namespace stlobs {

ParseError::ParseError(Code code, std::size_t position, std::string message)
    : std::runtime_error(std::string(to_string(code)) + " at position " +
                         std::to_string(position) + ": " + message),
      code_(code),
      position_(position),
      detail_(std::move(message)) {}

std::string_view to_string(ParseError::Code code) {
  switch (code) {
    case ParseError::Code::syntax: return "syntax error";
    case ParseError::Code::unknown_signal: return "unknown signal";
    case ParseError::Code::bad_interval: return "malformed interval";
    case ParseError::Code::nested_temporal: return "nested temporal operator";
  }
  return "parse error";
}

namespace {

constexpr std::array<std::string_view, 6> kReserved = {"true",  "false", "not",
                                                       "and",   "or",    "implies"};

enum class Tok {
  ident,
  number,
  lparen,
  rparen,
  lbracket,
  rbracket,
  comma,
  bang,
  amp,
  pipe,
  arrow,
  plus,
  minus,
  star,
  cmp,
  kw_true,
  kw_false,
  temporal,  // G / F / U directly followed by '['
  end,
};

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t pos;
  Comparator cmp = Comparator::gt;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      if (i_ >= src_.size()) {
        out.push_back({Tok::end, {}, i_});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  void skip_space() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
  }

  char peek(std::size_t off = 0) const {
    return i_ + off < src_.size() ? src_[i_ + off] : '\0';
  }

  Token emit(Tok kind, std::size_t len, Comparator cmp = Comparator::gt) {
    Token t{kind, src_.substr(i_, len), i_, cmp};
    i_ += len;
    return t;
  }

  Token next() {
    const char c = peek();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return word();
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      return number();
    }
    switch (c) {
      case '(': return emit(Tok::lparen, 1);
      case ')': return emit(Tok::rparen, 1);
      case '[': return emit(Tok::lbracket, 1);
      case ']': return emit(Tok::rbracket, 1);
      case ',': return emit(Tok::comma, 1);
      case '+': return emit(Tok::plus, 1);
      case '*': return emit(Tok::star, 1);
      case '&': return emit(Tok::amp, peek(1) == '&' ? 2 : 1);
      case '|': return emit(Tok::pipe, peek(1) == '|' ? 2 : 1);
      case '-': return peek(1) == '>' ? emit(Tok::arrow, 2) : emit(Tok::minus, 1);
      case '!': return peek(1) == '=' ? emit(Tok::cmp, 2, Comparator::ne) : emit(Tok::bang, 1);
      case '=':
        if (peek(1) == '>') return emit(Tok::arrow, 2);
        if (peek(1) == '=') return emit(Tok::cmp, 2, Comparator::eq);
        return emit(Tok::cmp, 1, Comparator::eq);
      case '>':
        return peek(1) == '=' ? emit(Tok::cmp, 2, Comparator::ge) : emit(Tok::cmp, 1, Comparator::gt);
      case '<':
        return peek(1) == '=' ? emit(Tok::cmp, 2, Comparator::le) : emit(Tok::cmp, 1, Comparator::lt);
      default:
        throw ParseError(ParseError::Code::syntax, i_,
                         std::string("unexpected character '") + c + "'");
    }
  }

  Token word() {
    std::size_t len = 0;
    while (std::isalnum(static_cast<unsigned char>(peek(len))) || peek(len) == '_') ++len;
    const std::string_view w = src_.substr(i_, len);
    if (w == "G" || w == "F" || w == "U") {
      std::size_t j = i_ + len;
      while (j < src_.size() && std::isspace(static_cast<unsigned char>(src_[j]))) ++j;
      if (j < src_.size() && src_[j] == '[') return emit(Tok::temporal, len);
    }
    if (w == "true") return emit(Tok::kw_true, len);
    if (w == "false") return emit(Tok::kw_false, len);
    if (w == "not") return emit(Tok::bang, len);
    if (w == "and") return emit(Tok::amp, len);
    if (w == "or") return emit(Tok::pipe, len);
    if (w == "implies") return emit(Tok::arrow, len);
    return emit(Tok::ident, len);
  }

  Token number() {
    std::size_t len = 0;
    auto digits = [&] {
      while (std::isdigit(static_cast<unsigned char>(peek(len)))) ++len;
    };
    digits();
    if (peek(len) == '.') {
      ++len;
      digits();
    }
    if ((peek(len) == 'e' || peek(len) == 'E') &&
        (std::isdigit(static_cast<unsigned char>(peek(len + 1))) ||
         ((peek(len + 1) == '+' || peek(len + 1) == '-') &&
          std::isdigit(static_cast<unsigned char>(peek(len + 2)))))) {
      len += 2;
      digits();
    }
    return emit(Tok::number, len);
  }

  std::string_view src_;
  std::size_t i_ = 0;
};

struct Linear {
  std::vector<LinearTerm> terms;
  double constant = 0.0;

  void add(const std::string& signal, double coeff) {
    auto it = std::find_if(terms.begin(), terms.end(),
                           [&](const LinearTerm& t) { return t.signal == signal; });
    if (it == terms.end()) {
      terms.push_back({coeff, signal});
    } else {
      it->coeff += coeff;
    }
  }
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, const std::vector<std::string>& signals)
      : toks_(std::move(tokens)), signals_(signals) {}

  Formula run() {
    Formula f = implication_expr();
    if (cur().kind != Tok::end) syntax("unexpected '" + std::string(cur().text) + "'");
    return f;
  }

 private:
  const Token& cur() const { return toks_[k_]; }
  const Token& advance() { return toks_[k_++]; }
  bool accept(Tok kind) {
    if (cur().kind != kind) return false;
    ++k_;
    return true;
  }

  [[noreturn]] void syntax(const std::string& msg) const {
    throw ParseError(ParseError::Code::syntax, cur().pos, msg);
  }

  void expect(Tok kind, std::string_view what) {
    if (!accept(kind)) {
      syntax("expected " + std::string(what) +
             (cur().kind == Tok::end ? " before end of input"
                                     : ", found '" + std::string(cur().text) + "'"));
    }
  }

  Formula implication_expr() {
    Formula lhs = or_expr();
    if (accept(Tok::arrow)) return implication(lhs, implication_expr());
    return lhs;
  }

  Formula or_expr() {
    Formula f = and_expr();
    while (accept(Tok::pipe)) f = disjunction(f, and_expr());
    return f;
  }

  Formula and_expr() {
    Formula f = until_expr();
    while (accept(Tok::amp)) f = conjunction(f, until_expr());
    return f;
  }

  Formula until_expr() {
    const std::size_t seen_before = temporal_seen_.size();
    Formula lhs = unary();
    if (cur().kind != Tok::temporal || cur().text != "U") return lhs;
    const Token& op = cur();
    if (depth_ > 0) nested(op.pos, "U");
    if (temporal_seen_.size() > seen_before) {
      const auto& [pos, name] = temporal_seen_[seen_before];
      nested(pos, name);
    }
    advance();
    temporal_seen_.emplace_back(op.pos, "U");
    const Interval iv = interval();
    ++depth_;
    Formula rhs = unary();
    --depth_;
    if (cur().kind == Tok::temporal && cur().text == "U") nested(cur().pos, "U");
    return until(iv, lhs, rhs);
  }

  Formula unary() {
    if (accept(Tok::bang)) return negation(unary());
    if (cur().kind == Tok::temporal) {
      const Token& op = cur();
      if (op.text == "U") syntax("'U' needs a left operand");
      if (depth_ > 0) nested(op.pos, op.text);
      advance();
      temporal_seen_.emplace_back(op.pos, op.text);
      const Interval iv = interval();
      ++depth_;
      Formula operand = unary();
      --depth_;
      return op.text == "G" ? always(iv, operand) : eventually(iv, operand);
    }
    return primary();
  }

  Formula primary() {
    if (accept(Tok::lparen)) {
      Formula f = implication_expr();
      expect(Tok::rparen, "')'");
      return f;
    }
    if (accept(Tok::kw_true)) return constant(true);
    if (accept(Tok::kw_false)) return constant(false);
    return atomic();
  }

  [[noreturn]] void nested(std::size_t pos, std::string_view name) const {
    throw ParseError(ParseError::Code::nested_temporal, pos,
                     "operator '" + std::string(name) +
                         "' appears inside the operand of another temporal operator");
  }

  Tick bound() {
    const Token& t = cur();
    if (t.kind == Tok::minus) {
      throw ParseError(ParseError::Code::bad_interval, t.pos, "negative interval bound");
    }
    if (t.kind != Tok::number) syntax("expected an interval bound");
    const bool integral = std::all_of(t.text.begin(), t.text.end(),
                                      [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    if (!integral) {
      throw ParseError(ParseError::Code::bad_interval, t.pos,
                       "interval bound '" + std::string(t.text) + "' is not a tick count");
    }
    Tick v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{}) {
      throw ParseError(ParseError::Code::bad_interval, t.pos, "interval bound out of range");
    }
    advance();
    return v;
  }

  Interval interval() {
    const std::size_t open = cur().pos;
    expect(Tok::lbracket, "'['");
    const Tick lo = bound();
    expect(Tok::comma, "','");
    const Tick hi = bound();
    expect(Tok::rbracket, "']'");
    if (lo >= hi) {
      throw ParseError(ParseError::Code::bad_interval, open,
                       "interval [" + std::to_string(lo) + "," + std::to_string(hi) +
                           "] needs a < b");
    }
    return {lo, hi};
  }

  double number_value(const Token& t) const {
    auto v = detail::parse_double(t.text);
    if (!v || !std::isfinite(*v)) {
      throw ParseError(ParseError::Code::syntax, t.pos,
                       "number '" + std::string(t.text) + "' is out of range");
    }
    return *v;
  }

  const std::string& signal_name(const Token& t) const {
    auto it = std::find(signals_.begin(), signals_.end(), t.text);
    if (it == signals_.end()) {
      throw ParseError(ParseError::Code::unknown_signal, t.pos,
                       "'" + std::string(t.text) + "' is not a declared signal");
    }
    return *it;
  }

  // term := NUMBER ['*' IDENT] | IDENT ['*' NUMBER]
  void term(double sign, Linear& out) {
    const Token& t = cur();
    if (t.kind == Tok::number) {
      advance();
      const double c = sign * number_value(t);
      if (accept(Tok::star)) {
        if (cur().kind != Tok::ident) syntax("expected a signal after '*'");
        out.add(signal_name(advance()), c);
      } else {
        out.constant += c;
      }
    } else if (t.kind == Tok::ident) {
      advance();
      const std::string& name = signal_name(t);
      double c = sign;
      if (accept(Tok::star)) {
        if (cur().kind != Tok::number) syntax("expected a number after '*'");
        c *= number_value(advance());
      }
      out.add(name, c);
    } else if (t.kind == Tok::end) {
      syntax("unexpected end of input");
    } else {
      syntax("unexpected '" + std::string(t.text) + "'");
    }
  }

  Linear linear() {
    Linear out;
    double sign = 1.0;
    if (accept(Tok::minus)) sign = -1.0;
    else accept(Tok::plus);
    term(sign, out);
    for (;;) {
      if (accept(Tok::plus)) term(1.0, out);
      else if (accept(Tok::minus)) term(-1.0, out);
      else return out;
    }
  }

  Formula atomic() {
    const std::size_t start = cur().pos;
    Linear lhs = linear();
    if (cur().kind != Tok::cmp) syntax("expected a comparison operator");
    const Comparator cmp = advance().cmp;
    Linear rhs = linear();
    for (const auto& t : rhs.terms) lhs.add(t.signal, -t.coeff);
    lhs.constant -= rhs.constant;
    if (lhs.terms.empty()) {
      throw ParseError(ParseError::Code::syntax, start,
                       "atomic predicate must reference a signal");
    }
    return atom(AtomicPredicate{std::move(lhs.terms), lhs.constant, cmp});
  }

  std::vector<Token> toks_;
  const std::vector<std::string>& signals_;
  std::size_t k_ = 0;
  int depth_ = 0;
  std::vector<std::pair<std::size_t, std::string_view>> temporal_seen_;
};

}  // namespace

bool is_reserved_word(std::string_view name) {
  return std::find(kReserved.begin(), kReserved.end(), name) != kReserved.end();
}

Formula parse(std::string_view text, const std::vector<std::string>& signals) {
  for (const auto& s : signals) {
    if (is_reserved_word(s)) {
      throw ParseError(ParseError::Code::syntax, 0,
                       "signal name '" + s + "' is a reserved word");
    }
  }
  if (detail::trim(text).empty()) {
    throw ParseError(ParseError::Code::syntax, 0, "empty formula");
  }
  return Parser(Lexer(text).run(), signals).run();
}

}  // namespace stlobs
