#include "carsym/folner.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "carsym/parallel.hpp"

namespace carsym {

namespace {

// Number of nonnegative tuples of the given length with sum <= budget.
BigInt tuple_space_size(int length, std::int64_t budget) {
  return binomial(std::uint64_t(budget) + std::uint64_t(length), std::uint64_t(length));
}

// Lexicographically next exponent tuple (first coordinate most significant);
// returns false after the last tuple.
bool next_tuple(std::vector<std::int64_t>& h, std::int64_t& sum, std::int64_t budget) {
  if (sum < budget) {
    ++h.back();
    ++sum;
    return true;
  }
  std::size_t j = h.size();
  while (j > 0 && h[j - 1] == 0) --j;
  if (j <= 1) return false;
  sum -= h[j - 1] - 1;
  h[j - 1] = 0;
  ++h[j - 2];
  return true;
}

// Tuple of the given lexicographic rank.
std::vector<std::int64_t> unrank_tuple(BigInt rank, int length, std::int64_t budget) {
  std::vector<std::int64_t> h(length, 0);
  std::int64_t remaining = budget;
  for (int p = 0; p < length; ++p) {
    int rest = length - 1 - p;
    for (std::int64_t v = 0;; ++v) {
      BigInt count = tuple_space_size(rest, remaining - v);
      if (rank < count) {
        h[p] = v;
        remaining -= v;
        break;
      }
      rank -= count;
    }
  }
  return h;
}

BigInt uniform_below(std::mt19937_64& rng, const BigInt& bound) {
  if (bound <= 1) return 0;
  std::size_t bits = boost::multiprecision::msb(bound) + 1;
  std::size_t words = (bits + 63) / 64;
  for (;;) {
    BigInt v = 0;
    for (std::size_t i = 0; i < words; ++i) {
      v <<= 64;
      v |= BigInt(rng());
    }
    v >>= (words * 64 - bits);
    if (v < bound) return v;
  }
}

void check_cap(int n) {
  if (n < 1) throw DomainError("n must be at least 1");
  if (n > folner_enumeration_cap) {
    throw PreconditionError("F_" + std::to_string(n) +
                            " exceeds the enumeration cap (4); use sampling (sample_folner / --sample)");
  }
}

// Deterministic pairwise combination of per-block partial sums.
Complex pairwise_total(std::vector<Complex> partial) {
  if (partial.empty()) return 0.0;
  while (partial.size() > 1) {
    std::size_t half = (partial.size() + 1) / 2;
    for (std::size_t i = 0; i + half < partial.size(); ++i) partial[i] += partial[i + half];
    partial.resize(half);
  }
  return partial[0];
}

}  // namespace

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

BigInt folner_count(int n) {
  if (n < 1) throw DomainError("n must be at least 1");
  std::uint64_t nn = std::uint64_t(n) * std::uint64_t(n);
  return BigInt(2 * n + 1) * binomial(nn + 2 * std::uint64_t(n) + 1, nn);
}

std::int64_t folner_tuple_apply(const FolnerTuple& t, int n, std::int64_t k) {
  // tau^shift first, then theta_n^{e_n} down to theta_{-n}^{e_{-n}}.
  std::int64_t v = k + t.shift;
  for (std::int64_t i = n; i >= -n; --i) {
    if (v >= i) v += t.exponents[i + n];
  }
  return v;
}

SpreadingMap folner_tuple_to_map(const FolnerTuple& t, int n) {
  return folner_word_to_map(t.exponents, n, t.shift);
}

void enumerate_folner(int n, const std::function<void(const FolnerTuple&)>& visit) {
  check_cap(n);
  const std::int64_t budget = std::int64_t(n) * n;
  for (std::int64_t shift = -n; shift <= n; ++shift) {
    FolnerTuple t{std::vector<std::int64_t>(2 * n + 1, 0), shift};
    std::int64_t sum = 0;
    do {
      visit(t);
    } while (next_tuple(t.exponents, sum, budget));
  }
}

std::vector<SpreadingMap> folner_maps(int n) {
  if (n > 3) throw PreconditionError("materialized F_n maps are capped at n = 3");
  std::vector<SpreadingMap> maps;
  enumerate_folner(n, [&](const FolnerTuple& t) { maps.push_back(folner_tuple_to_map(t, n)); });
  return maps;
}

BigInt folner_distinct_count(int n) {
  auto maps = folner_maps(n);
  std::sort(maps.begin(), maps.end());
  maps.erase(std::unique(maps.begin(), maps.end()), maps.end());
  return BigInt(maps.size());
}

FolnerSubsetReport subset_report(int n, int m, bool distinct_maps, int threads) {
  check_cap(n);
  if (m < 1) throw DomainError("m must be at least 1");
  FolnerSubsetReport r;
  r.n = n;
  r.m = m;
  r.h_bound = BigInt(1) << (m + n);
  r.distinct_maps = distinct_maps;

  if (distinct_maps) {
    if (n > 3) throw PreconditionError("distinct-map reports are capped at n = 3");
    std::map<SpreadingMap, unsigned> flags;  // bit 0: member of H, bit 1: member of K
    enumerate_folner(n, [&](const FolnerTuple& t) {
      std::int64_t lo = folner_tuple_apply(t, n, -n);
      std::int64_t hi = folner_tuple_apply(t, n, n);
      unsigned f = 0;
      if (lo >= -m && lo <= m) f |= 1;
      if (hi >= -m && hi <= m) f |= 2;
      flags[folner_tuple_to_map(t, n)] |= f;
    });
    std::uint64_t fc = flags.size(), gc = 0, hc = 0, kc = 0;
    for (const auto& [map, f] : flags) {
      if (f & 1) ++hc;
      if (f & 2) ++kc;
      if (f) ++gc;
    }
    r.f_count = fc;
    r.g_count = gc;
    r.h_count = hc;
    r.k_count = kc;
  } else {
    const std::int64_t budget = std::int64_t(n) * n;
    const int length = 2 * n + 1;
    const BigInt tuples_big = tuple_space_size(length, budget);
    const std::uint64_t tuples = tuples_big.convert_to<std::uint64_t>();
    std::uint64_t g = 0, h = 0, k = 0;
    std::mutex mu;
    for (std::int64_t shift = -n; shift <= n; ++shift) {
      parallel_blocks(tuples, default_block_size, threads, [&](std::size_t, std::uint64_t begin, std::uint64_t end) {
        FolnerTuple t{unrank_tuple(BigInt(begin), length, budget), shift};
        std::int64_t sum = 0;
        for (std::int64_t e : t.exponents) sum += e;
        std::uint64_t bg = 0, bh = 0, bk = 0;
        for (std::uint64_t idx = begin; idx < end; ++idx) {
          std::int64_t lo = folner_tuple_apply(t, n, -n);
          std::int64_t hi = folner_tuple_apply(t, n, n);
          bool in_h = lo >= -m && lo <= m;
          bool in_k = hi >= -m && hi <= m;
          bh += in_h;
          bk += in_k;
          bg += in_h || in_k;
          if (idx + 1 < end) next_tuple(t.exponents, sum, budget);
        }
        std::lock_guard<std::mutex> lock(mu);
        g += bg;
        h += bh;
        k += bk;
      });
    }
    r.f_count = folner_count(n);
    r.g_count = g;
    r.h_count = h;
    r.k_count = k;
  }
  r.g_ratio = BigRat(r.g_count, r.f_count);
  r.g_ratio_double = r.g_ratio.convert_to<double>();
  return r;
}

std::string subset_report_csv_header() { return "n,m,F_count,G_count,H_count,K_count,G_ratio,H_bound_2^{m+n}"; }

std::string subset_report_csv_row(const FolnerSubsetReport& r) {
  return std::to_string(r.n) + "," + std::to_string(r.m) + "," + r.f_count.str() + "," + r.g_count.str() +
         "," + r.h_count.str() + "," + r.k_count.str() + "," + format_double(r.g_ratio_double) + "," +
         r.h_bound.str();
}

nlohmann::ordered_json subset_report_json(const FolnerSubsetReport& r) {
  return {{"n", r.n},
          {"m", r.m},
          {"F_count", r.f_count.str()},
          {"G_count", r.g_count.str()},
          {"H_count", r.h_count.str()},
          {"K_count", r.k_count.str()},
          {"G_ratio", {{"num", BigInt(boost::multiprecision::numerator(r.g_ratio)).str()},
                       {"den", BigInt(boost::multiprecision::denominator(r.g_ratio)).str()}}},
          {"G_ratio_double", r.g_ratio_double},
          {"H_bound_2^{m+n}", r.h_bound.str()},
          {"mode", r.distinct_maps ? "maps" : "tuples"}};
}

Complex ergodic_average(const StateModel& s, const CarPolynomial& x, int n, int threads) {
  check_cap(n);
  if (!x.has_integer_support()) throw DomainError("ergodic averages require integer support");
  const std::int64_t budget = std::int64_t(n) * n;
  const int length = 2 * n + 1;
  const std::uint64_t tuples = tuple_space_size(length, budget).convert_to<std::uint64_t>();
  const std::uint64_t blocks_per_shift = (tuples + default_block_size - 1) / default_block_size;
  std::vector<Complex> partial(std::size_t(2 * n + 1) * blocks_per_shift, Complex(0.0, 0.0));
  for (std::int64_t shift = -n; shift <= n; ++shift) {
    parallel_blocks(tuples, default_block_size, threads,
                    [&](std::size_t block, std::uint64_t begin, std::uint64_t end) {
                      FolnerTuple t{unrank_tuple(BigInt(begin), length, budget), shift};
                      std::int64_t sum = 0;
                      for (std::int64_t e : t.exponents) sum += e;
                      Complex acc = 0.0;
                      for (std::uint64_t idx = begin; idx < end; ++idx) {
                        acc += s.evaluate(act(folner_tuple_to_map(t, n), x));
                        if (idx + 1 < end) next_tuple(t.exponents, sum, budget);
                      }
                      partial[std::size_t(shift + n) * blocks_per_shift + block] = acc;
                    });
  }
  double total = double(std::uint64_t(2 * n + 1) * tuples);
  return pairwise_total(std::move(partial)) / total;
}

std::vector<SpreadingMap> sample_folner(int n, std::int64_t count, std::uint64_t seed) {
  if (n < 1) throw DomainError("n must be at least 1");
  if (count < 1) throw DomainError("sample count must be at least 1");
  const std::int64_t budget = std::int64_t(n) * n;
  const int length = 2 * n + 1;
  const BigInt tuples = tuple_space_size(length, budget);
  std::mt19937_64 rng(seed);
  std::vector<SpreadingMap> out;
  out.reserve(count);
  for (std::int64_t i = 0; i < count; ++i) {
    std::int64_t shift = std::int64_t(uniform_below(rng, BigInt(2 * n + 1)).convert_to<std::uint64_t>()) - n;
    FolnerTuple t{unrank_tuple(uniform_below(rng, tuples), length, budget), shift};
    out.push_back(folner_tuple_to_map(t, n));
  }
  return out;
}

Complex ergodic_average_sampled(const StateModel& s, const CarPolynomial& x, int n, std::int64_t count,
                                std::uint64_t seed) {
  if (!x.has_integer_support()) throw DomainError("ergodic averages require integer support");
  auto maps = sample_folner(n, count, seed);
  std::vector<Complex> values;
  values.reserve(maps.size());
  for (const SpreadingMap& h : maps) values.push_back(s.evaluate(act(h, x)));
  return pairwise_total(std::move(values)) / double(maps.size());
}

}  // namespace carsym
