#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "carsym/expression.hpp"

namespace carsym {

// Bijection of ℤ moving finitely many points.
class FinitePermutation {
 public:
  FinitePermutation() = default;
  explicit FinitePermutation(std::map<std::int64_t, std::int64_t> moved);  // validates bijectivity
  static FinitePermutation transposition(std::int64_t i, std::int64_t j);

  std::int64_t operator()(std::int64_t k) const;
  FinitePermutation inverse() const;
  friend FinitePermutation compose(const FinitePermutation& f, const FinitePermutation& g);  // f ∘ g
  const std::map<std::int64_t, std::int64_t>& moved() const { return moved_; }
  friend bool operator==(const FinitePermutation&, const FinitePermutation&) = default;

 private:
  std::map<std::int64_t, std::int64_t> moved_;
};

// Strictly increasing self-map of ℤ with cofinite range, stored canonically
// as (eventual shift at -∞, finite set of skipped values).
class SpreadingMap {
 public:
  SpreadingMap() = default;  // identity
  SpreadingMap(std::int64_t shift, std::vector<std::int64_t> skipped);

  static SpreadingMap theta(std::int64_t h) { return theta_power(h, 1); }
  static SpreadingMap theta_power(std::int64_t h, std::int64_t e);
  static SpreadingMap tau(std::int64_t l = 1) { return SpreadingMap(l, {}); }

  std::int64_t operator()(std::int64_t k) const;
  friend SpreadingMap compose(const SpreadingMap& f, const SpreadingMap& g);  // f ∘ g

  std::int64_t shift() const { return shift_; }
  const std::vector<std::int64_t>& skipped() const { return skipped_; }
  bool is_identity() const { return shift_ == 0 && skipped_.empty(); }
  friend bool operator==(const SpreadingMap&, const SpreadingMap&) = default;
  friend bool operator<(const SpreadingMap& a, const SpreadingMap& b) {
    if (a.shift_ != b.shift_) return a.shift_ < b.shift_;
    return a.skipped_ < b.skipped_;
  }

  struct GeneratorWord {
    std::int64_t n;                        // exponents indexed -n..n
    std::vector<std::int64_t> exponents;   // size 2n+1
    std::int64_t shift;
  };
  // A theta word times tau^shift realizing this map.
  GeneratorWord generator_word() const;

 private:
  std::int64_t shift_ = 0;
  std::vector<std::int64_t> skipped_;  // sorted, unique
};

// theta_{-n}^{e_{-n}} ... theta_n^{e_n} tau^shift, leftmost factor applied
// last; exponents has size 2n+1, entry i+n holding the power of theta_i.
SpreadingMap folner_word_to_map(std::span<const std::int64_t> exponents, std::int64_t n, std::int64_t shift);

// Continuous strictly increasing piecewise-linear bijection of ℤ[1/2] with
// power-of-two slopes, dyadic offsets and slope-1 unbounded ends.
class PLDyadicMap {
 public:
  struct Piece {
    int slope_exp = 0;  // slope 2^slope_exp
    Dyadic offset;      // x -> 2^slope_exp x + offset
    friend bool operator==(const Piece&, const Piece&) = default;
  };

  PLDyadicMap();  // identity
  PLDyadicMap(std::vector<Dyadic> breakpoints, std::vector<Piece> pieces);  // validates

  static PLDyadicMap theta0_tilde();
  // δ_k^{-1} ∘ θ̃₀ ∘ δ_k with δ_k the dilation by 2^k.
  static PLDyadicMap dilated_theta0(unsigned k);
  static PLDyadicMap translation(Dyadic t);

  Dyadic operator()(const Dyadic& d) const;
  PLDyadicMap inverse() const;
  friend PLDyadicMap compose(const PLDyadicMap& f, const PLDyadicMap& g);  // f ∘ g

  bool is_identity() const;
  const std::vector<Dyadic>& breakpoints() const { return breakpoints_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  friend bool operator==(const PLDyadicMap&, const PLDyadicMap&) = default;

 private:
  void normalize();
  std::vector<Dyadic> breakpoints_;
  std::vector<Piece> pieces_;  // pieces_[i] on [breakpoints_[i-1], breakpoints_[i]]
};

// Real orthogonal matrix equal to the identity outside a finite index window.
class OrthogonalWindowMatrix {
 public:
  OrthogonalWindowMatrix(std::vector<std::int64_t> window, Eigen::MatrixXd entries);  // validates O^T O = I

  static OrthogonalWindowMatrix identity(std::vector<std::int64_t> window);
  static OrthogonalWindowMatrix givens(std::vector<std::int64_t> window, std::int64_t i, std::int64_t j,
                                       double angle);
  static OrthogonalWindowMatrix sign_flip(std::vector<std::int64_t> window, std::int64_t i);
  static OrthogonalWindowMatrix swap(std::vector<std::int64_t> window, std::int64_t i, std::int64_t j);

  friend OrthogonalWindowMatrix operator*(const OrthogonalWindowMatrix& a, const OrthogonalWindowMatrix& b);

  const std::vector<std::int64_t>& window() const { return window_; }
  const Eigen::MatrixXd& entries() const { return entries_; }
  double entry(std::int64_t row, std::int64_t col) const;  // δ off-window

 private:
  std::vector<std::int64_t> window_;  // sorted
  Eigen::MatrixXd entries_;
};

// Index actions lifted to polynomials.
CarPolynomial act(const FinitePermutation& f, const CarPolynomial& p);
CarPolynomial act(const SpreadingMap& f, const CarPolynomial& p);     // integer support required
CarPolynomial act(const PLDyadicMap& f, const CarPolynomial& p);
CarPolynomial act(const OrthogonalWindowMatrix& o, const CarPolynomial& p);  // Bogolubov

// Ψ_n: doubles every index; support must lie in ℤ/2^{n+1}.
CarPolynomial rescale(unsigned n, const CarPolynomial& p);
// Inverse of Ψ_n: halves every index; support must lie in ℤ/2^n.
CarPolynomial rescale_inverse(unsigned n, const CarPolynomial& p);

}  // namespace carsym
