#pragma once

#include <complex>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "carsym/dyadic.hpp"

namespace carsym {

using Complex = std::complex<double>;

struct Generator {
  Dyadic index;
  bool dagger = false;

  friend bool operator==(const Generator&, const Generator&) = default;
  // Creators sort before annihilators, then by index.
  friend std::strong_ordering operator<=>(const Generator& a, const Generator& b) {
    if (a.dagger != b.dagger) return a.dagger ? std::strong_ordering::less : std::strong_ordering::greater;
    return a.index <=> b.index;
  }
};

inline Generator ann(Dyadic i) { return Generator{i, false}; }
inline Generator cre(Dyadic i) { return Generator{i, true}; }

using Word = std::vector<Generator>;

// Deterministic total order on words: shorter first, then lexicographic.
struct WordLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

// Complex-linear combination of normal-ordered words in CAR generators.
// Normal form: creators first with strictly increasing indices, then
// annihilators with strictly decreasing indices.
class CarPolynomial {
 public:
  using TermMap = std::map<Word, Complex, WordLess>;
  static constexpr double zero_threshold = 1e-12;

  CarPolynomial() = default;
  CarPolynomial(Complex c) { add_raw({}, c); }      // NOLINT
  CarPolynomial(double c) { add_raw({}, Complex(c, 0.0)); }  // NOLINT

  static CarPolynomial unit() { return CarPolynomial(1.0); }
  static CarPolynomial annihilator(Dyadic i) { return generator(ann(i)); }
  static CarPolynomial creator(Dyadic i) { return generator(cre(i)); }
  static CarPolynomial generator(Generator g);
  // Coefficient times an arbitrary factor sequence; reduced to normal form.
  static CarPolynomial monomial(Complex c, std::span<const Generator> factors);
  static CarPolynomial position(Dyadic i);  // a_i + a†_i

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  int degree() const;                   // max word length, 0 for the zero polynomial
  std::set<Dyadic> support() const;
  bool has_integer_support() const;

  CarPolynomial adjoint() const;
  CarPolynomial parity() const;  // Θ: each term scaled by (-1)^degree
  std::pair<CarPolynomial, CarPolynomial> even_odd() const;

  CarPolynomial& operator+=(const CarPolynomial& o);
  CarPolynomial& operator-=(const CarPolynomial& o);
  CarPolynomial& operator*=(const CarPolynomial& o);
  CarPolynomial& operator*=(Complex c);

  friend CarPolynomial operator+(CarPolynomial a, const CarPolynomial& b) { return a += b; }
  friend CarPolynomial operator-(CarPolynomial a, const CarPolynomial& b) { return a -= b; }
  friend CarPolynomial operator*(CarPolynomial a, const CarPolynomial& b) { return a *= b; }
  friend CarPolynomial operator*(Complex c, CarPolynomial p) { return p *= c; }
  friend CarPolynomial operator*(CarPolynomial p, Complex c) { return p *= c; }
  friend CarPolynomial operator-(CarPolynomial p) { return p *= Complex(-1.0, 0.0); }

  friend bool operator==(const CarPolynomial& a, const CarPolynomial& b) { return a.terms_ == b.terms_; }
  bool almost_equal(const CarPolynomial& o, double tol) const;
  double max_coefficient_distance(const CarPolynomial& o) const;

  std::string str() const;  // deterministic, parseable by parse_expression

  // Adds c times a raw (not necessarily ordered) factor sequence.
  void add_raw(Word word, Complex c);

 private:
  void add_normal(Word&& w, Complex c);
  TermMap terms_;
};

std::string format_double(double x);    // shortest round-trip decimal
std::string format_complex(Complex c);  // "x", "yi" or "(x,y)"
std::string word_str(const Word& w);    // "ad(0)*a(1)", "1" for the empty word

}  // namespace carsym
