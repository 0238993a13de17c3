#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "carsym/actions.hpp"
#include "carsym/states.hpp"
#include "json.hpp"

namespace carsym {

enum class SymmetryKind { exchangeable, spreadable, rotatable, stationary, even };

std::string symmetry_name(SymmetryKind kind);
std::optional<SymmetryKind> symmetry_from_name(std::string_view name);

struct ParityOp {
  friend bool operator==(const ParityOp&, const ParityOp&) = default;
};

// One battery element: a labelled transformation of polynomials.
class Transformation {
 public:
  using Op = std::variant<ParityOp, FinitePermutation, SpreadingMap, OrthogonalWindowMatrix, PLDyadicMap>;
  Transformation(Op op, std::string label) : op_(std::move(op)), label_(std::move(label)) {}
  CarPolynomial apply(const CarPolynomial& p) const;
  const std::string& label() const { return label_; }

 private:
  Op op_;
  std::string label_;
};

enum class WitnessKind {
  invariance,  // gap = |s(x) - s(t(x))|
  vanishing,   // gap = |s(x)|
  clustering,  // gap = |s(x tau^k(x)) - s(x)^2|, t = tau(k)
};

struct Witness {
  Transformation transformation;
  CarPolynomial polynomial;
  Complex lhs = 0.0;
  Complex rhs = 0.0;
  double gap = 0.0;
  WitnessKind kind = WitnessKind::invariance;
  std::int64_t separation = 0;  // clustering only
  nlohmann::ordered_json to_json() const;
};

struct BatteryInfo {
  std::string generators;
  int degree_cap = 0;
  std::vector<std::int64_t> window;
  double tolerance = 0.0;
  std::uint64_t seed = 0;
  int random_count = 0;
  nlohmann::ordered_json to_json() const;
};

struct SymmetryVerdict {
  std::string symmetry;
  bool holds = false;
  std::optional<Witness> witness;
  BatteryInfo battery;
  nlohmann::ordered_json to_json() const;
};

struct CheckOptions {
  int degree_cap = 4;
  std::vector<std::int64_t> window = {-2, -1, 0, 1, 2};
  std::optional<double> tolerance;  // default: 1e-9 for rotatable, exact zero otherwise
  std::uint64_t seed = 0;
  int random_count = 50;  // random orthogonal products in the rotatable battery
  int threads = 1;
};

// Contiguous window of the given size centered at 0 (size 5 -> {-2..2}).
std::vector<std::int64_t> centered_window(int size);

// Tests invariance of the state on every normal word over the window with
// degree <= degree_cap under the generator battery of the symmetry. Returns
// the first violation in deterministic battery order, or an exhaustive pass.
SymmetryVerdict check_symmetry(const StateModel& s, SymmetryKind kind, const CheckOptions& opts = {});

// Precondition: the spreadable battery holds. Then all odd words must
// evaluate to exactly zero.
SymmetryVerdict check_spreadable_implies_even(const StateModel& s, const CheckOptions& opts = {});

// Precondition: base is spreadable. Builds the pullback tower to the given
// level and tests invariance under the dilated theta-tilde conjugates and
// dyadic translations, plus tower restriction consistency on random
// integer-support words.
SymmetryVerdict check_dyadic_invariance(const StateModel& base, unsigned level, const CheckOptions& opts = {});

// Precondition: s is spreadable. Holds iff the clustering gap vanishes
// (<= 1e-10) for every tested self-adjoint even word at the given separation.
SymmetryVerdict check_extremality(const StateModel& s, std::int64_t separation, const CheckOptions& opts = {});

// Recomputes the witness gap against the state.
bool reverify(const Witness& w, const StateModel& s, double tolerance);

// All normal-ordered words over the window with degree in [1, degree_cap],
// in deterministic order.
std::vector<Word> spanning_words(const std::vector<std::int64_t>& window, int degree_cap);

}  // namespace carsym
