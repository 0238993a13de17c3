#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "carsym/folner.hpp"

#include <algorithm>
#include <map>

#include "carsym/json_io.hpp"
#include "doctest.h"

using namespace carsym;

namespace {
CarPolynomial a(std::int64_t i) { return CarPolynomial::annihilator(Dyadic(i)); }
CarPolynomial ad(std::int64_t i) { return CarPolynomial::creator(Dyadic(i)); }
}  // namespace

TEST_CASE("folner counts match the closed formula and the stream") {
  CHECK(folner_count(1) == 12);
  CHECK(folner_count(2) == 630);
  CHECK(folner_count(3) == 80080);
  CHECK(folner_count(4) == 18386775);
  for (int n = 1; n <= 3; ++n) {
    std::uint64_t streamed = 0;
    enumerate_folner(n, [&](const FolnerTuple&) { ++streamed; });
    CHECK(BigInt(streamed) == folner_count(n));
  }
  CHECK(folner_count(10).str() == "3564929502232372921893246");  // exceeds 64-bit range
}

TEST_CASE("enumeration yields tuples exactly once") {
  std::set<std::pair<std::vector<std::int64_t>, std::int64_t>> seen;
  enumerate_folner(1, [&](const FolnerTuple& t) { seen.emplace(t.exponents, t.shift); });
  CHECK(seen.size() == 12);
  // 3 of the 12 are pure shifts
  int pure = 0;
  for (const auto& [exps, shift] : seen) {
    if (std::all_of(exps.begin(), exps.end(), [](std::int64_t e) { return e == 0; })) ++pure;
  }
  CHECK(pure == 3);
}

TEST_CASE("n=1 maps match the hand enumeration") {
  auto maps = folner_maps(1);
  CHECK(maps.size() == 12);
  std::multiset<SpreadingMap> expected;
  for (std::int64_t l : {-1, 0, 1}) {
    expected.insert(SpreadingMap::tau(l));
    for (std::int64_t h : {-1, 0, 1}) expected.insert(compose(SpreadingMap::theta(h), SpreadingMap::tau(l)));
  }
  CHECK(std::multiset<SpreadingMap>(maps.begin(), maps.end()) == expected);
  // every yielded map has its base shift in [-n, n] far below the skips
  for (const auto& m : maps) CHECK(m(-1000) == -1000 + m.shift());
}

TEST_CASE("enumeration cap") {
  CHECK_THROWS_AS(enumerate_folner(5, [](const FolnerTuple&) {}), PreconditionError);
  CHECK_THROWS_WITH_AS(ergodic_average(*product_state(0.5), ad(0) * a(0), 5),
                       doctest::Contains("sampl"), PreconditionError);
}

TEST_CASE("subset report n=1 m=1") {
  FolnerSubsetReport r = subset_report(1, 1);
  CHECK(r.f_count == 12);
  CHECK(r.h_count == 8);
  CHECK(r.k_count == 5);
  CHECK(r.g_count == 12);
  CHECK(r.g_ratio == BigRat(1));
  CHECK(r.h_bound == 4);
}

TEST_CASE("subset ratios decrease and H grows slower than F") {
  for (int m : {1, 2}) {
    BigRat prev;
    bool first = true;
    for (int n = 1; n <= 3; ++n) {
      FolnerSubsetReport r = subset_report(n, m, false, 2);
      CHECK(r.g_count <= r.h_count + r.k_count);
      if (!first) CHECK(r.g_ratio < prev);
      prev = r.g_ratio;
      first = false;
    }
  }
}

TEST_CASE("m large enough forces ratio one") {
  FolnerSubsetReport r = subset_report(1, 10);
  CHECK(r.g_count == r.f_count);
  CHECK(r.g_ratio == BigRat(1));
}

TEST_CASE("report rows are stable") {
  CHECK(subset_report_csv_header() == "n,m,F_count,G_count,H_count,K_count,G_ratio,H_bound_2^{m+n}");
  FolnerSubsetReport r = subset_report(1, 1);
  CHECK(subset_report_csv_row(r) == "1,1,12,12,8,5,1,4");
  auto j = subset_report_json(r);
  CHECK(j["F_count"] == "12");
  CHECK(j["mode"] == "tuples");
}

TEST_CASE("tuple endpoint evaluation agrees with the composed map") {
  for (int n = 1; n <= 2; ++n) {
    enumerate_folner(n, [&](const FolnerTuple& t) {
      SpreadingMap m = folner_tuple_to_map(t, n);
      for (std::int64_t k : {-n, 0, n}) {
        CHECK(folner_tuple_apply(t, n, k) == m(k));
      }
    });
  }
}

TEST_CASE("right folner property is empirically decreasing") {
  for (const SpreadingMap& h : {SpreadingMap::theta(0), SpreadingMap::tau(1)}) {
    double prev = 2.0;
    for (int n = 1; n <= 3; ++n) {
      auto maps = folner_maps(n);
      std::map<SpreadingMap, std::int64_t> left, right;
      for (const auto& f : maps) {
        ++left[f];
        ++right[compose(f, h)];
      }
      std::int64_t diff = 0;
      for (const auto& [key, count] : left) {
        auto it = right.find(key);
        diff += std::abs(count - (it == right.end() ? 0 : it->second));
      }
      for (const auto& [key, count] : right) {
        if (!left.count(key)) diff += count;
      }
      double ratio = double(diff) / double(maps.size());
      CHECK(ratio < prev);
      prev = ratio;
    }
  }
}

TEST_CASE("ergodic averages") {
  StatePtr phi = product_state(0.25);
  CarPolynomial x = ad(0) * a(0);
  for (int n : {1, 2}) {
    CHECK(ergodic_average(*phi, x, n) == Complex(0.75, 0.0));  // spreadable: every summand equal
  }
  CHECK(ergodic_average(*phi, CarPolynomial(1.0), 1) == Complex(1.0, 0.0));

  auto toe = QuasiFreeState::toeplitz({{0, 0.5}, {1, 0.25}});
  Complex avg = ergodic_average(*toe, ad(0) * a(1), 2);
  CHECK(avg.real() > 0.0);
  CHECK(avg.real() < 0.25);
  CHECK(avg.imag() == 0.0);

  // independent oracle: naive sum over tuples via stepwise application
  Complex naive = 0.0;
  std::uint64_t count = 0;
  enumerate_folner(2, [&](const FolnerTuple& t) {
    std::int64_t i0 = folner_tuple_apply(t, 2, 0);
    std::int64_t i1 = folner_tuple_apply(t, 2, 1);
    naive += toe->evaluate(ad(i0) * a(i1));
    ++count;
  });
  naive /= double(count);
  CHECK(std::abs(avg - naive) < 1e-12);
}

TEST_CASE("ergodic average is independent of the thread count") {
  auto toe = QuasiFreeState::toeplitz({{0, 0.5}, {1, 0.25}});
  CarPolynomial x = ad(0) * a(1) + Complex(0.5, 0.25) * (ad(-1) * a(0));
  Complex t1 = ergodic_average(*toe, x, 2, 1);
  Complex t4 = ergodic_average(*toe, x, 2, 4);
  CHECK(t1 == t4);  // bit identical
}

TEST_CASE("sampling is reproducible and uniform") {
  auto s1 = sample_folner(1, 1000, 42);
  auto s2 = sample_folner(1, 1000, 42);
  CHECK(s1 == s2);
  auto s3 = sample_folner(1, 1000, 43);
  CHECK(s1 != s3);

  // shift distribution uniform over {-1,0,1} within 3 sigma
  const std::int64_t trials = 100000;
  auto sample = sample_folner(1, trials, 7);
  std::map<std::int64_t, std::int64_t> shift_counts;
  for (const auto& m : sample) ++shift_counts[m.shift()];
  double expected = double(trials) / 3.0;
  double sigma = std::sqrt(double(trials) * (1.0 / 3.0) * (2.0 / 3.0));
  for (std::int64_t l : {-1, 0, 1}) {
    CHECK(std::abs(double(shift_counts[l]) - expected) < 3.0 * sigma);
  }

  // tuple distribution: every one of the 4 exponent tuples appears uniformly
  std::map<SpreadingMap, std::int64_t> map_counts;
  for (const auto& m : sample) ++map_counts[m];
  CHECK(map_counts.size() == 12);

  StatePtr phi = product_state(0.25);
  CHECK(ergodic_average_sampled(*phi, ad(0) * a(0), 6, 50, 3) == Complex(0.75, 0.0));
}

TEST_CASE("distinct map mode") {
  CHECK(folner_distinct_count(1) == 12);
  FolnerSubsetReport tuples = subset_report(2, 1, false);
  FolnerSubsetReport maps = subset_report(2, 1, true);
  CHECK(maps.f_count <= tuples.f_count);
  CHECK(maps.distinct_maps);
}
