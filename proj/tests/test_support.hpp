#pragma once

#include <random>
#include <vector>

#include "carsym/expression.hpp"

namespace carsym::testing {

// Random polynomial over integer modes [lo, hi]: term words are raw generator
// sequences, so building them exercises the normal-ordering rewriter.
inline CarPolynomial random_poly(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi, int max_degree,
                                 int terms) {
  CarPolynomial p;
  std::uniform_int_distribution<std::int64_t> index(lo, hi);
  std::uniform_int_distribution<int> degree(0, max_degree);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  for (int t = 0; t < terms; ++t) {
    Word w;
    int d = degree(rng);
    for (int i = 0; i < d; ++i) w.push_back(Generator{Dyadic(index(rng)), (rng() & 1) != 0});
    p += CarPolynomial::monomial(Complex(coeff(rng), coeff(rng)), w);
  }
  return p;
}

}  // namespace carsym::testing
