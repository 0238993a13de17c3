#include "carsym/dyadic.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace carsym {

namespace {

std::int64_t checked_narrow(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw DomainError("dyadic arithmetic overflow");
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace

Dyadic::Dyadic(std::int64_t numerator, std::uint32_t exponent) : num_(numerator), exp_(exponent) {
  while (exp_ > 0 && num_ % 2 == 0) {
    num_ /= 2;
    --exp_;
  }
  if (num_ == 0) exp_ = 0;
}

Dyadic Dyadic::parse(std::string_view text) {
  auto read_int = [](std::string_view s) -> std::int64_t {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw DomainError("invalid integer literal '" + std::string(s) + "'");
    }
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Dyadic(read_int(text), 0);
  std::int64_t p = read_int(text.substr(0, slash));
  std::string_view denom = text.substr(slash + 1);
  std::uint32_t e = 0;
  if (denom.rfind("2^", 0) == 0) {
    std::int64_t k = read_int(denom.substr(2));
    if (k < 0 || k > 62) throw DomainError("dyadic exponent out of range");
    e = static_cast<std::uint32_t>(k);
  } else {
    std::int64_t q = read_int(denom);
    if (q <= 0 || (q & (q - 1)) != 0) {
      throw DomainError("denominator " + std::string(denom) + " is not a power of two");
    }
    while (q > 1) {
      q /= 2;
      ++e;
    }
  }
  return Dyadic(p, e);
}

std::int64_t Dyadic::floor() const {
  if (exp_ == 0) return num_;
  std::int64_t d = std::int64_t(1) << exp_;
  std::int64_t q = num_ / d;
  if (num_ % d != 0 && num_ < 0) --q;
  return q;
}

double Dyadic::to_double() const { return std::ldexp(static_cast<double>(num_), -static_cast<int>(exp_)); }

std::string Dyadic::str() const {
  if (exp_ == 0) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(std::int64_t(1) << exp_);
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  std::uint32_t e = std::max(a.exp_, b.exp_);
  __int128 n = (__int128)a.num_ << (e - a.exp_);
  n += (__int128)b.num_ << (e - b.exp_);
  return Dyadic(checked_narrow(n), e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic Dyadic::times_pow2(int k) const {
  if (k >= 0) {
    std::uint32_t uk = static_cast<std::uint32_t>(k);
    if (exp_ >= uk) return Dyadic(num_, exp_ - uk);
    int shift = static_cast<int>(uk - exp_);
    if (shift > 62) throw DomainError("dyadic arithmetic overflow");
    return Dyadic(checked_narrow((__int128)num_ << shift), 0);
  }
  std::uint32_t ue = exp_ + static_cast<std::uint32_t>(-k);
  if (ue > 62) throw DomainError("dyadic exponent out of range");
  return Dyadic(num_, ue);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  std::uint32_t e = std::max(a.exp_, b.exp_);
  __int128 x = (__int128)a.num_ << (e - a.exp_);
  __int128 y = (__int128)b.num_ << (e - b.exp_);
  if (x < y) return std::strong_ordering::less;
  if (x > y) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace carsym
