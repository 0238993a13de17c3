#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "carsym/errors.hpp"

namespace carsym {

// Exact dyadic rational num/2^exp, canonical: exp == 0 or num odd.
class Dyadic {
 public:
  constexpr Dyadic() = default;
  constexpr Dyadic(std::int64_t n) : num_(n) {}  // NOLINT: implicit from integers is intended
  Dyadic(std::int64_t numerator, std::uint32_t exponent);

  // Accepts "p", "p/q" with q a power of two, or "p/2^e".
  static Dyadic parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::uint32_t exp() const { return exp_; }
  bool is_integer() const { return exp_ == 0; }
  std::int64_t floor() const;
  double to_double() const;
  std::string str() const;  // "p" or "p/q"

  Dyadic operator-() const { return Dyadic(-num_, exp_); }
  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  // Exact multiplication by 2^k (k may be negative).
  Dyadic times_pow2(int k) const;

  friend bool operator==(const Dyadic&, const Dyadic&) = default;
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

 private:
  std::int64_t num_ = 0;
  std::uint32_t exp_ = 0;
};

}  // namespace carsym
