#include "carsym/checker.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>

#include "carsym/parallel.hpp"

namespace carsym {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kClusteringTol = 1e-10;

double default_tolerance(SymmetryKind kind) { return kind == SymmetryKind::rotatable ? 1e-9 : 0.0; }

std::vector<Transformation> battery_for(SymmetryKind kind, const CheckOptions& opts) {
  const auto& w = opts.window;
  std::vector<Transformation> out;
  switch (kind) {
    case SymmetryKind::exchangeable:
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        out.emplace_back(FinitePermutation::transposition(w[i], w[i + 1]),
                         "transposition(" + std::to_string(w[i]) + "," + std::to_string(w[i + 1]) + ")");
      }
      break;
    case SymmetryKind::spreadable:
      for (std::int64_t h : w) out.emplace_back(SpreadingMap::theta(h), "theta(" + std::to_string(h) + ")");
      out.emplace_back(SpreadingMap::tau(1), "tau(1)");
      out.emplace_back(SpreadingMap::tau(-1), "tau(-1)");
      break;
    case SymmetryKind::stationary:
      out.emplace_back(SpreadingMap::tau(1), "tau(1)");
      out.emplace_back(SpreadingMap::tau(-1), "tau(-1)");
      break;
    case SymmetryKind::even:
      out.emplace_back(ParityOp{}, "parity");
      break;
    case SymmetryKind::rotatable: {
      const double angles[] = {kPi / 6.0, kPi / 4.0, kPi / 3.0};
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        for (double angle : angles) {
          out.emplace_back(OrthogonalWindowMatrix::givens(w, w[i], w[i + 1], angle),
                           "givens(" + std::to_string(w[i]) + "," + std::to_string(w[i + 1]) + ";" +
                               format_double(angle) + ")");
        }
        out.emplace_back(OrthogonalWindowMatrix::swap(w, w[i], w[i + 1]),
                         "signed_swap(" + std::to_string(w[i]) + "," + std::to_string(w[i + 1]) + ")");
      }
      for (std::int64_t i : w) out.emplace_back(OrthogonalWindowMatrix::sign_flip(w, i),
                                                "sign_flip(" + std::to_string(i) + ")");
      std::mt19937_64 rng(opts.seed);
      auto uniform = [&rng](std::size_t bound) { return std::size_t(rng() % bound); };
      for (int t = 0; t < opts.random_count; ++t) {
        OrthogonalWindowMatrix o = OrthogonalWindowMatrix::identity(w);
        std::size_t factors = 2 * w.size();
        for (std::size_t f = 0; f < factors; ++f) {
          std::size_t i = uniform(w.size());
          std::size_t j = uniform(w.size() - 1);
          if (j >= i) ++j;
          double angle = 2.0 * kPi * (double(rng() >> 11) / double(std::uint64_t(1) << 53));
          o = o * OrthogonalWindowMatrix::givens(w, std::min(w[i], w[j]), std::max(w[i], w[j]), angle);
        }
        out.emplace_back(std::move(o), "random_orthogonal(" + std::to_string(t) + ")");
      }
      break;
    }
  }
  return out;
}

std::string battery_description(SymmetryKind kind) {
  switch (kind) {
    case SymmetryKind::exchangeable: return "adjacent transpositions";
    case SymmetryKind::spreadable: return "theta_h over the window, tau, tau^-1";
    case SymmetryKind::stationary: return "tau, tau^-1";
    case SymmetryKind::even: return "parity automorphism";
    case SymmetryKind::rotatable:
      return "givens grid (pi/6, pi/4, pi/3), signed permutations, seeded random orthogonal products";
  }
  return {};
}

struct Violation {
  std::uint64_t index;
  Witness witness;
};

// Scans (transformation, word) pairs in deterministic order; returns the
// violation of least index, if any.
std::optional<Witness> scan_battery(const StateModel& s, const std::vector<Transformation>& battery,
                                    const std::vector<Word>& words, double tolerance, int threads) {
  const std::uint64_t total = std::uint64_t(battery.size()) * words.size();
  std::optional<Violation> best;
  std::mutex mu;
  parallel_blocks(total, 1 << 10, threads, [&](std::size_t, std::uint64_t begin, std::uint64_t end) {
    {
      std::lock_guard<std::mutex> lock(mu);
      if (best && best->index < begin) return;
    }
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      const Transformation& t = battery[idx / words.size()];
      CarPolynomial x = CarPolynomial::monomial(1.0, words[idx % words.size()]);
      Complex lhs = s.evaluate(x);
      Complex rhs = s.evaluate(t.apply(x));
      double gap = std::abs(lhs - rhs);
      if (gap > tolerance) {
        std::lock_guard<std::mutex> lock(mu);
        if (!best || idx < best->index) best = Violation{idx, Witness{t, x, lhs, rhs, gap}};
        return;
      }
    }
  });
  if (best) return best->witness;
  return std::nullopt;
}

}  // namespace

std::string symmetry_name(SymmetryKind kind) {
  switch (kind) {
    case SymmetryKind::exchangeable: return "exchangeable";
    case SymmetryKind::spreadable: return "spreadable";
    case SymmetryKind::rotatable: return "rotatable";
    case SymmetryKind::stationary: return "stationary";
    case SymmetryKind::even: return "even";
  }
  return {};
}

std::optional<SymmetryKind> symmetry_from_name(std::string_view name) {
  for (SymmetryKind kind : {SymmetryKind::exchangeable, SymmetryKind::spreadable, SymmetryKind::rotatable,
                            SymmetryKind::stationary, SymmetryKind::even}) {
    if (name == symmetry_name(kind)) return kind;
  }
  return std::nullopt;
}

CarPolynomial Transformation::apply(const CarPolynomial& p) const {
  return std::visit(
      [&p](const auto& op) -> CarPolynomial {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, ParityOp>)
          return p.parity();
        else
          return act(op, p);
      },
      op_);
}

nlohmann::ordered_json Witness::to_json() const {
  const char* kind_name = kind == WitnessKind::invariance ? "invariance"
                          : kind == WitnessKind::vanishing ? "vanishing"
                                                           : "clustering";
  return {{"transformation", transformation.label()},
          {"polynomial", polynomial.str()},
          {"lhs", {{"re", lhs.real()}, {"im", lhs.imag()}}},
          {"rhs", {{"re", rhs.real()}, {"im", rhs.imag()}}},
          {"gap", gap},
          {"kind", kind_name}};
}

nlohmann::ordered_json BatteryInfo::to_json() const {
  return {{"generators", generators}, {"degree_cap", degree_cap}, {"window", window},
          {"tolerance", tolerance},   {"seed", seed},             {"random_count", random_count}};
}

nlohmann::ordered_json SymmetryVerdict::to_json() const {
  nlohmann::ordered_json j{{"symmetry", symmetry}, {"verdict", holds ? "holds" : "violated"}};
  j["witness"] = witness ? witness->to_json() : nlohmann::ordered_json(nullptr);
  j["battery"] = battery.to_json();
  return j;
}

std::vector<std::int64_t> centered_window(int size) {
  if (size < 1) throw DomainError("window size must be positive");
  std::vector<std::int64_t> w(size);
  for (int i = 0; i < size; ++i) w[i] = i - (size - 1) / 2;
  return w;
}

namespace {

// Visits every k-subset of {0..n-1} in lexicographic order.
void for_each_subset(std::size_t n, int k, const std::function<void(const std::vector<std::size_t>&)>& visit) {
  if (k == 0) {
    visit({});
    return;
  }
  if (std::size_t(k) > n) return;
  std::vector<std::size_t> c(k);
  for (int i = 0; i < k; ++i) c[i] = i;
  for (;;) {
    visit(c);
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) return;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

}  // namespace

std::vector<Word> spanning_words(const std::vector<std::int64_t>& window, int degree_cap) {
  std::vector<std::int64_t> sorted = window;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  std::vector<Word> words;
  for (int l = 0; l <= degree_cap; ++l) {
    for_each_subset(n, l, [&](const std::vector<std::size_t>& cset) {
      for (int m = (l == 0 ? 1 : 0); l + m <= degree_cap; ++m) {
        for_each_subset(n, m, [&](const std::vector<std::size_t>& aset) {
          Word w;
          w.reserve(l + m);
          for (std::size_t i : cset) w.push_back(cre(Dyadic(sorted[i])));
          for (std::size_t i = aset.size(); i-- > 0;) w.push_back(ann(Dyadic(sorted[aset[i]])));
          words.push_back(std::move(w));
        });
      }
    });
  }
  std::sort(words.begin(), words.end(), WordLess{});
  return words;
}

SymmetryVerdict check_symmetry(const StateModel& s, SymmetryKind kind, const CheckOptions& opts) {
  if (opts.degree_cap > 8) throw DomainError("degree cap is limited to 8");
  if (opts.window.size() > 10) throw DomainError("window is limited to 10 indices");
  double tol = opts.tolerance.value_or(default_tolerance(kind));
  auto battery = battery_for(kind, opts);
  auto words = spanning_words(opts.window, opts.degree_cap);
  SymmetryVerdict v;
  v.symmetry = symmetry_name(kind);
  v.battery = BatteryInfo{battery_description(kind), opts.degree_cap, opts.window,
                          tol,                       opts.seed,       kind == SymmetryKind::rotatable ? opts.random_count : 0};
  v.witness = scan_battery(s, battery, words, tol, opts.threads);
  v.holds = !v.witness.has_value();
  return v;
}

SymmetryVerdict check_spreadable_implies_even(const StateModel& s, const CheckOptions& opts) {
  SymmetryVerdict pre = check_symmetry(s, SymmetryKind::spreadable, opts);
  if (!pre.holds) {
    throw PreconditionError("state fails the spreadable battery; evenness conclusion does not apply");
  }
  SymmetryVerdict v;
  v.symmetry = "spreadable_implies_even";
  v.battery = BatteryInfo{"all odd normal words must vanish", opts.degree_cap, opts.window, 0.0, opts.seed, 0};
  v.holds = true;
  for (const Word& w : spanning_words(opts.window, opts.degree_cap)) {
    if (w.size() % 2 == 0) continue;
    CarPolynomial x = CarPolynomial::monomial(1.0, w);
    Complex value = s.evaluate(x);
    if (std::abs(value) > 0.0) {
      v.holds = false;
      v.witness = Witness{Transformation(ParityOp{}, "parity"), x, value, 0.0, std::abs(value),
                          WitnessKind::vanishing, 0};
      break;
    }
  }
  return v;
}

SymmetryVerdict check_dyadic_invariance(const StateModel& base, unsigned level, const CheckOptions& opts) {
  SymmetryVerdict pre = check_symmetry(base, SymmetryKind::spreadable, opts);
  if (!pre.holds) throw PreconditionError("base state fails the spreadable battery");
  if (level == 0) {
    pre.symmetry = "dyadic_invariance";
    return pre;
  }
  StatePtr tower = pullback(StatePtr(&base, [](const StateModel*) {}), level);

  // Words over the dyadic grid (window scaled by 2^-level).
  std::vector<std::int64_t> grid;
  std::int64_t lo = *std::min_element(opts.window.begin(), opts.window.end());
  std::int64_t hi = *std::max_element(opts.window.begin(), opts.window.end());
  std::int64_t scale = std::int64_t(1) << level;
  for (std::int64_t j = lo * scale; j <= hi * scale; ++j) grid.push_back(j);
  std::vector<Word> words;
  for (Word w : spanning_words(grid, opts.degree_cap)) {
    for (Generator& g : w) g.index = g.index.times_pow2(-static_cast<int>(level));
    words.push_back(std::move(w));
  }

  std::vector<Transformation> battery;
  for (unsigned k = 0; k <= level; ++k) {
    battery.emplace_back(PLDyadicMap::dilated_theta0(k), "dilated_theta0(" + std::to_string(k) + ")");
  }
  for (int j = -opts.degree_cap; j <= opts.degree_cap; ++j) {
    if (j == 0) continue;
    Dyadic step = Dyadic(j).times_pow2(-static_cast<int>(level));
    battery.emplace_back(PLDyadicMap::translation(step), "translation(" + step.str() + ")");
  }

  SymmetryVerdict v;
  v.symmetry = "dyadic_invariance";
  v.battery = BatteryInfo{"dilated theta0 conjugates, dyadic translations, restriction consistency",
                          opts.degree_cap,
                          opts.window,
                          opts.tolerance.value_or(0.0),
                          opts.seed,
                          0};
  v.witness = scan_battery(*tower, battery, words, v.battery.tolerance, opts.threads);
  v.holds = !v.witness.has_value();
  if (!v.holds) return v;

  // Restriction consistency: on integer-support words the tower agrees with
  // its base (the uniqueness direction of the extension).
  std::mt19937_64 rng(opts.seed);
  for (int trial = 0; trial < 200; ++trial) {
    int len = 1 + int(rng() % std::uint64_t(std::max(1, opts.degree_cap)));
    Word w;
    for (int i = 0; i < len; ++i) {
      std::int64_t idx = opts.window[rng() % opts.window.size()];
      w.push_back(Generator{Dyadic(idx), (rng() & 1) != 0});
    }
    CarPolynomial x = CarPolynomial::monomial(1.0, w);
    Complex lhs = base.evaluate(x);
    Complex rhs = tower->evaluate(x);
    double gap = std::abs(lhs - rhs);
    if (gap > v.battery.tolerance) {
      v.holds = false;
      v.witness = Witness{Transformation(PLDyadicMap(), "restriction(" + std::to_string(trial) + ")"),
                          x, lhs, rhs, gap, WitnessKind::invariance, 0};
      return v;
    }
  }
  return v;
}

SymmetryVerdict check_extremality(const StateModel& s, std::int64_t separation, const CheckOptions& opts) {
  SymmetryVerdict pre = check_symmetry(s, SymmetryKind::spreadable, opts);
  if (!pre.holds) throw PreconditionError("state fails the spreadable battery");
  std::int64_t lo = *std::min_element(opts.window.begin(), opts.window.end());
  std::int64_t hi = *std::max_element(opts.window.begin(), opts.window.end());
  if (separation <= hi - lo) throw DomainError("separation must exceed the window diameter");

  SymmetryVerdict v;
  v.symmetry = "extremality";
  v.battery = BatteryInfo{"clustering gap on self-adjoint even words at separation " +
                              std::to_string(separation),
                          opts.degree_cap,
                          opts.window,
                          kClusteringTol,
                          opts.seed,
                          0};
  v.holds = true;
  double max_gap = 0.0;
  for (const Word& w : spanning_words(opts.window, opts.degree_cap)) {
    if (w.size() % 2 != 0) continue;
    CarPolynomial x = CarPolynomial::monomial(1.0, w);
    x += x.adjoint();
    if (x.is_zero()) continue;
    double gap = clustering_gap(s, x, separation);
    if (gap > max_gap) {
      max_gap = gap;
      if (gap > kClusteringTol) {
        CarPolynomial shifted = act(SpreadingMap::tau(separation), x);
        Complex lhs = s.evaluate(x * shifted);
        Complex single = s.evaluate(x);
        v.witness = Witness{Transformation(SpreadingMap::tau(separation),
                                           "tau(" + std::to_string(separation) + ")"),
                            x, lhs, single * single, gap, WitnessKind::clustering, separation};
        v.holds = false;
      }
    }
  }
  return v;
}

bool reverify(const Witness& w, const StateModel& s, double tolerance) {
  double gap = 0.0;
  switch (w.kind) {
    case WitnessKind::invariance:
      gap = std::abs(s.evaluate(w.polynomial) - s.evaluate(w.transformation.apply(w.polynomial)));
      break;
    case WitnessKind::vanishing:
      gap = std::abs(s.evaluate(w.polynomial));
      break;
    case WitnessKind::clustering:
      gap = clustering_gap(s, w.polynomial, w.separation);
      break;
  }
  return gap > tolerance;
}

}  // namespace carsym
