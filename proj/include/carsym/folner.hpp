#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "carsym/actions.hpp"
#include "carsym/states.hpp"
#include "json.hpp"

namespace carsym {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Largest n whose F_n is enumerated exactly (|F_4| = 18,386,775 tuples,
// streamed); beyond it use sample_folner.
inline constexpr int folner_enumeration_cap = 4;

BigInt binomial(std::uint64_t n, std::uint64_t k);

// |F_n| = (2n+1) C(n^2+2n+1, n^2) counted over parameter tuples.
BigInt folner_count(int n);

// One F_n parameter tuple: exponents of theta_{-n}..theta_n plus the tau power.
struct FolnerTuple {
  std::vector<std::int64_t> exponents;  // size 2n+1
  std::int64_t shift;
};

// Value of the tuple's word at k, without materializing the map.
std::int64_t folner_tuple_apply(const FolnerTuple& t, int n, std::int64_t k);

SpreadingMap folner_tuple_to_map(const FolnerTuple& t, int n);

// Streams every tuple of F_n exactly once (shift-major, exponents
// lexicographic). Throws PreconditionError above the enumeration cap.
void enumerate_folner(int n, const std::function<void(const FolnerTuple&)>& visit);

// Materialized maps of F_n in enumeration order, one per tuple (n <= 3).
std::vector<SpreadingMap> folner_maps(int n);

// Distinct maps represented by F_n tuples (n <= 3).
BigInt folner_distinct_count(int n);

struct FolnerSubsetReport {
  int n = 0;
  int m = 0;
  BigInt f_count, g_count, h_count, k_count;
  BigRat g_ratio;
  double g_ratio_double = 0.0;
  BigInt h_bound;  // 2^{m+n}
  bool distinct_maps = false;
};

// Counts of G_n = H_n ∪ K_n with H_n = {h : -m <= h(-n) <= m} and
// K_n = {h : -m <= h(n) <= m}, by streaming enumeration.
FolnerSubsetReport subset_report(int n, int m, bool distinct_maps = false, int threads = 1);

std::string subset_report_csv_header();
std::string subset_report_csv_row(const FolnerSubsetReport& r);
nlohmann::ordered_json subset_report_json(const FolnerSubsetReport& r);

// (1/|F_n|) sum over tuples of s(alpha_h(x)); deterministic pairwise
// reduction, independent of the thread count.
Complex ergodic_average(const StateModel& s, const CarPolynomial& x, int n, int threads = 1);

// Uniform tuples from the F_n parameter domain (stars-and-bars unranking);
// reproducible for a fixed seed.
std::vector<SpreadingMap> sample_folner(int n, std::int64_t count, std::uint64_t seed);

Complex ergodic_average_sampled(const StateModel& s, const CarPolynomial& x, int n, std::int64_t count,
                                std::uint64_t seed);

}  // namespace carsym
