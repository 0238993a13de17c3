#include "carsym/parse.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <optional>

namespace carsym {

namespace {

enum class Tok { number, imag_number, ident, plus, minus, star, slash, lparen, rparen, comma, end };

struct Token {
  Tok kind;
  std::size_t column = 0;    // 1-based start column
  std::string_view text{};   // ident or number text
  double value = 0.0;        // numeric value
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::size_t col = pos_ + 1;
    if (pos_ >= text_.size()) return {Tok::end, col};
    char c = text_[pos_];
    switch (c) {
      case '+': ++pos_; return {Tok::plus, col};
      case '-': ++pos_; return {Tok::minus, col};
      case '*': ++pos_; return {Tok::star, col};
      case '/': ++pos_; return {Tok::slash, col};
      case '(': ++pos_; return {Tok::lparen, col};
      case ')': ++pos_; return {Tok::rparen, col};
      case ',': ++pos_; return {Tok::comma, col};
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return lex_number(col);
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return {Tok::ident, col, text_.substr(start, pos_ - start)};
    }
    throw ParseError(std::string("unexpected character '") + c + "'", col);
  }

 private:
  Token lex_number(std::size_t col) {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t mark = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      } else {
        pos_ = mark;  // 'e' belongs to something else
      }
    }
    std::string_view digits = text_.substr(start, pos_ - start);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw ParseError("invalid number '" + std::string(digits) + "'", col);
    }
    if (pos_ < text_.size() && text_[pos_] == 'i') {
      ++pos_;
      return {Tok::imag_number, col, digits, value};
    }
    return {Tok::number, col, digits, value};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) { tokenize(); }

  CarPolynomial run() {
    CarPolynomial p = parse_expr();
    expect(Tok::end, "end of input");
    return p;
  }

 private:
  void tokenize() {
    Lexer lex(text_);
    for (;;) {
      Token t = lex.next();
      tokens_.push_back(t);
      if (t.kind == Tok::end) break;
    }
  }

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(idx_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  Token take() { return tokens_[std::min(idx_++, tokens_.size() - 1)]; }
  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) throw ParseError(std::string("expected ") + what, peek().column);
    take();
  }

  CarPolynomial parse_expr() {
    bool negate = false;
    if (peek().kind == Tok::minus) {
      take();
      negate = true;
    }
    CarPolynomial p = parse_term();
    if (negate) p *= Complex(-1.0, 0.0);
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      bool minus = take().kind == Tok::minus;
      CarPolynomial q = parse_term();
      if (minus)
        p -= q;
      else
        p += q;
    }
    return p;
  }

  bool at_complex_literal() const {
    // '(' [-] number ',' ...
    if (peek().kind != Tok::lparen) return false;
    std::size_t i = 1;
    if (peek(i).kind == Tok::minus) ++i;
    if (peek(i).kind != Tok::number) return false;
    return peek(i + 1).kind == Tok::comma;
  }

  CarPolynomial parse_term() {
    std::optional<Complex> scalar;
    if (peek().kind == Tok::number || peek().kind == Tok::imag_number) {
      Token t = take();
      scalar = (t.kind == Tok::imag_number) ? Complex(0.0, t.value) : Complex(t.value, 0.0);
    } else if (at_complex_literal()) {
      scalar = parse_complex_literal();
    }
    CarPolynomial p = scalar ? CarPolynomial(*scalar) : parse_factor();
    while (peek().kind == Tok::star) {
      take();
      p *= parse_factor();
    }
    return p;
  }

  Complex parse_complex_literal() {
    expect(Tok::lparen, "'('");
    double re = parse_signed_float();
    expect(Tok::comma, "','");
    double im = parse_signed_float();
    expect(Tok::rparen, "')'");
    return {re, im};
  }

  double parse_signed_float() {
    bool neg = false;
    if (peek().kind == Tok::minus) {
      take();
      neg = true;
    }
    if (peek().kind != Tok::number) throw ParseError("expected number", peek().column);
    double v = take().value;
    return neg ? -v : v;
  }

  CarPolynomial parse_factor() {
    if (peek().kind == Tok::lparen) {
      take();
      CarPolynomial p = parse_expr();
      expect(Tok::rparen, "')'");
      return p;
    }
    if (peek().kind != Tok::ident) throw ParseError("expected 'a', 'ad' or '('", peek().column);
    Token name = take();
    bool dagger;
    if (name.text == "a")
      dagger = false;
    else if (name.text == "ad")
      dagger = true;
    else
      throw ParseError("unknown symbol '" + std::string(name.text) + "'", name.column);
    expect(Tok::lparen, "'('");
    Dyadic index = parse_dyadic();
    expect(Tok::rparen, "')'");
    return CarPolynomial::generator(Generator{index, dagger});
  }

  std::int64_t parse_int() {
    bool neg = false;
    if (peek().kind == Tok::minus) {
      take();
      neg = true;
    }
    if (peek().kind != Tok::number) throw ParseError("expected integer", peek().column);
    Token t = take();
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
      throw ParseError("expected integer, got '" + std::string(t.text) + "'", t.column);
    }
    return neg ? -v : v;
  }

  Dyadic parse_dyadic() {
    std::int64_t p = parse_int();
    if (peek().kind != Tok::slash) return Dyadic(p);
    take();
    Token denom_tok = peek();
    std::int64_t q = parse_int();
    if (q <= 0 || (q & (q - 1)) != 0) {
      throw ParseError("denominator " + std::to_string(q) + " is not a power of two", denom_tok.column);
    }
    std::uint32_t e = 0;
    while (q > 1) {
      q /= 2;
      ++e;
    }
    return Dyadic(p, e);
  }

  std::string_view text_;
  std::vector<Token> tokens_;
  std::size_t idx_ = 0;
};

}  // namespace

CarPolynomial parse_expression(std::string_view text) { return Parser(text).run(); }

}  // namespace carsym
