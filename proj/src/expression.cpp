#include "carsym/expression.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace carsym {

namespace {

bool negligible(Complex c) { return std::abs(c.real()) + std::abs(c.imag()) < CarPolynomial::zero_threshold; }

// True if the coefficient should be rendered after a '-' sign.
bool negative_looking(Complex c) {
  if (c.real() != 0.0) return c.real() < 0.0;
  return c.imag() < 0.0;
}

}  // namespace

CarPolynomial CarPolynomial::generator(Generator g) {
  CarPolynomial p;
  p.terms_.emplace(Word{g}, Complex(1.0, 0.0));
  return p;
}

CarPolynomial CarPolynomial::monomial(Complex c, std::span<const Generator> factors) {
  CarPolynomial p;
  p.add_raw(Word(factors.begin(), factors.end()), c);
  return p;
}

CarPolynomial CarPolynomial::position(Dyadic i) {
  CarPolynomial p = annihilator(i);
  p += creator(i);
  return p;
}

void CarPolynomial::add_normal(Word&& w, Complex c) {
  if (negligible(c)) return;
  auto [it, inserted] = terms_.try_emplace(std::move(w), c);
  if (!inserted) {
    it->second += c;
    if (negligible(it->second)) terms_.erase(it);
  }
}

// Worklist rewriting: each swap removes an inversion, each contraction
// shortens the word, so the loop terminates with normal-ordered output.
void CarPolynomial::add_raw(Word word, Complex c) {
  if (negligible(c)) return;
  std::vector<std::pair<Word, Complex>> pending;
  pending.emplace_back(std::move(word), c);
  while (!pending.empty()) {
    auto [w, coeff] = std::move(pending.back());
    pending.pop_back();
    bool dropped = false;
    bool rewrote = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      const Generator& x = w[i];
      const Generator& y = w[i + 1];
      if (x == y) {  // x^2 = 0
        dropped = true;
        break;
      }
      if (!x.dagger && y.dagger) {
        if (x.index == y.index) {  // a a† = 1 − a† a
          Word contracted;
          contracted.reserve(w.size() - 2);
          contracted.insert(contracted.end(), w.begin(), w.begin() + i);
          contracted.insert(contracted.end(), w.begin() + i + 2, w.end());
          pending.emplace_back(std::move(contracted), coeff);
          std::swap(w[i], w[i + 1]);
          pending.emplace_back(std::move(w), -coeff);
        } else {
          std::swap(w[i], w[i + 1]);
          pending.emplace_back(std::move(w), -coeff);
        }
        rewrote = true;
        break;
      }
      bool out_of_order = (x.dagger && y.dagger && x.index > y.index) ||
                          (!x.dagger && !y.dagger && x.index < y.index);
      if (out_of_order) {
        std::swap(w[i], w[i + 1]);
        pending.emplace_back(std::move(w), -coeff);
        rewrote = true;
        break;
      }
    }
    if (!dropped && !rewrote) add_normal(std::move(w), coeff);
  }
}

int CarPolynomial::degree() const {
  int d = 0;
  for (const auto& [w, c] : terms_) d = std::max(d, static_cast<int>(w.size()));
  return d;
}

std::set<Dyadic> CarPolynomial::support() const {
  std::set<Dyadic> s;
  for (const auto& [w, c] : terms_)
    for (const Generator& g : w) s.insert(g.index);
  return s;
}

bool CarPolynomial::has_integer_support() const {
  for (const auto& [w, c] : terms_)
    for (const Generator& g : w)
      if (!g.index.is_integer()) return false;
  return true;
}

CarPolynomial CarPolynomial::adjoint() const {
  CarPolynomial out;
  for (const auto& [w, c] : terms_) {
    Word rev(w.rbegin(), w.rend());
    for (Generator& g : rev) g.dagger = !g.dagger;
    // The reverse of a normal word is normal, so no rewriting happens here.
    out.add_raw(std::move(rev), std::conj(c));
  }
  return out;
}

CarPolynomial CarPolynomial::parity() const {
  CarPolynomial out;
  for (const auto& [w, c] : terms_) {
    Complex v = (w.size() % 2 == 0) ? c : -c;
    out.terms_.emplace(w, v);
  }
  return out;
}

std::pair<CarPolynomial, CarPolynomial> CarPolynomial::even_odd() const {
  CarPolynomial even, odd;
  for (const auto& [w, c] : terms_) {
    (w.size() % 2 == 0 ? even : odd).terms_.emplace(w, c);
  }
  return {even, odd};
}

CarPolynomial& CarPolynomial::operator+=(const CarPolynomial& o) {
  for (const auto& [w, c] : o.terms_) add_normal(Word(w), c);
  return *this;
}

CarPolynomial& CarPolynomial::operator-=(const CarPolynomial& o) {
  for (const auto& [w, c] : o.terms_) add_normal(Word(w), -c);
  return *this;
}

CarPolynomial& CarPolynomial::operator*=(const CarPolynomial& o) {
  CarPolynomial result;
  for (const auto& [wa, ca] : terms_) {
    for (const auto& [wb, cb] : o.terms_) {
      Word prod;
      prod.reserve(wa.size() + wb.size());
      prod.insert(prod.end(), wa.begin(), wa.end());
      prod.insert(prod.end(), wb.begin(), wb.end());
      result.add_raw(std::move(prod), ca * cb);
    }
  }
  terms_ = std::move(result.terms_);
  return *this;
}

CarPolynomial& CarPolynomial::operator*=(Complex c) {
  if (negligible(c)) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, coeff] : terms_) coeff *= c;
  return *this;
}

double CarPolynomial::max_coefficient_distance(const CarPolynomial& o) const {
  double dist = 0.0;
  auto scan = [&dist](const TermMap& a, const TermMap& b) {
    for (const auto& [w, c] : a) {
      auto it = b.find(w);
      Complex d = (it == b.end()) ? c : c - it->second;
      dist = std::max(dist, std::abs(d));
    }
  };
  scan(terms_, o.terms_);
  scan(o.terms_, terms_);
  return dist;
}

bool CarPolynomial::almost_equal(const CarPolynomial& o, double tol) const {
  return max_coefficient_distance(o) <= tol;
}

std::string format_double(double x) {
  if (x == 0.0) x = 0.0;  // normalize -0
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string format_complex(Complex c) {
  if (c.imag() == 0.0) return format_double(c.real());
  if (c.real() == 0.0) return format_double(c.imag()) + "i";
  return "(" + format_double(c.real()) + "," + format_double(c.imag()) + ")";
}

std::string word_str(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += "*";
    out += w[i].dagger ? "ad(" : "a(";
    out += w[i].index.str();
    out += ")";
  }
  return out;
}

std::string CarPolynomial::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    Complex coeff = c;
    bool negate = negative_looking(coeff);
    if (first) {
      if (negate) out += "-";
    } else {
      out += negate ? " - " : " + ";
    }
    if (negate) coeff = -coeff;
    bool unit_coeff = coeff == Complex(1.0, 0.0);
    if (w.empty()) {
      out += format_complex(coeff);
    } else if (unit_coeff) {
      out += word_str(w);
    } else {
      out += format_complex(coeff);
      out += "*";
      out += word_str(w);
    }
    first = false;
  }
  return out;
}

}  // namespace carsym
