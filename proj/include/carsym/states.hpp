#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "carsym/expression.hpp"
#include "json.hpp"

namespace carsym {

// Evaluation rule assigning a complex number to every CarPolynomial.
class StateModel {
 public:
  virtual ~StateModel() = default;
  // Value on a single normal-ordered word.
  virtual Complex word_value(const Word& w) const = 0;
  Complex evaluate(const CarPolynomial& p) const;
  virtual nlohmann::ordered_json descriptor() const = 0;
};

using StatePtr = std::shared_ptr<const StateModel>;

// Infinite product of the single-site even state diag(mu, 1-mu); defined on
// every dyadic index.
class ProductState final : public StateModel {
 public:
  explicit ProductState(double mu);
  Complex word_value(const Word& w) const override;
  nlohmann::ordered_json descriptor() const override;
  double mu() const { return mu_; }

 private:
  double mu_;
};

// Gauge-invariant quasi-free state on CAR(ℤ): normal words with equal
// creator/annihilator index lists evaluate to det[Q(j_i, k_h)].
class QuasiFreeState final : public StateModel {
 public:
  // Q_{jk} = q(j-k); lags may be given one-sided, symmetry is enforced.
  static std::shared_ptr<const QuasiFreeState> toeplitz(std::map<std::int64_t, double> q);
  // Finite matrix over a window; off-window indices carry default_diag on the
  // diagonal when given and are out of domain otherwise.
  static std::shared_ptr<const QuasiFreeState> window(std::vector<std::int64_t> window, Eigen::MatrixXd q,
                                                      std::optional<double> default_diag = std::nullopt);

  Complex word_value(const Word& w) const override;
  nlohmann::ordered_json descriptor() const override;
  double covariance(std::int64_t j, std::int64_t k) const;
  Eigen::MatrixXd covariance_block(const std::vector<std::int64_t>& indices) const;

 private:
  QuasiFreeState() = default;
  void validate_spectrum() const;

  bool toeplitz_ = false;
  std::map<std::int64_t, double> symbol_;            // toeplitz kind
  std::vector<std::int64_t> window_;                 // window kind
  Eigen::MatrixXd q_;                                // window kind
  std::optional<double> default_diag_;
};

class MixtureState final : public StateModel {
 public:
  explicit MixtureState(std::vector<std::pair<double, StatePtr>> parts);  // weights >= 0, sum 1
  Complex word_value(const Word& w) const override;
  nlohmann::ordered_json descriptor() const override;
  const std::vector<std::pair<double, StatePtr>>& parts() const { return parts_; }

 private:
  std::vector<std::pair<double, StatePtr>> parts_;
};

// phi_n = base ∘ Ψ_0 ∘ ... ∘ Ψ_{n-1}: evaluates on Z/2^n by n-fold index
// doubling followed by base evaluation.
class PullbackState final : public StateModel {
 public:
  PullbackState(StatePtr base, unsigned level);
  Complex word_value(const Word& w) const override;
  nlohmann::ordered_json descriptor() const override;
  unsigned level() const { return level_; }
  const StatePtr& base() const { return base_; }

 private:
  StatePtr base_;
  unsigned level_;
};

StatePtr product_state(double mu);
StatePtr vacuum_state();  // mu = 1
StatePtr mixture(std::vector<std::pair<double, StatePtr>> parts);
// make_pullback_tower: n = 0 returns base unchanged.
StatePtr pullback(StatePtr base, unsigned n);

// Test stub: base plus an injected value on one specific word. Used as the
// planted violation in checker negative controls.
StatePtr with_injected_term(StatePtr base, Word w, Complex value);

// |s(x · tau^k(x)) - s(x)^2| for even self-adjoint x with integer support;
// k must exceed the support diameter.
double clustering_gap(const StateModel& s, const CarPolynomial& x, std::int64_t k);

}  // namespace carsym
