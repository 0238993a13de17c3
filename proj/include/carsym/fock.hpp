#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "carsym/expression.hpp"

namespace carsym {

// Finite set of modes mapped to qubit positions of a 2^n-dimensional space.
class ModeWindow {
 public:
  static constexpr std::size_t max_modes = 12;

  // Canonical window: modes sorted ascending.
  static ModeWindow of(std::vector<Dyadic> modes);
  // Keeps the given chain order (used to probe order dependence).
  static ModeWindow with_order(std::vector<Dyadic> modes);
  static ModeWindow integers(std::int64_t lo, std::int64_t hi);

  std::size_t size() const { return modes_.size(); }
  std::size_t dim() const { return std::size_t(1) << modes_.size(); }
  const std::vector<Dyadic>& modes() const { return modes_; }
  std::optional<std::size_t> position(Dyadic index) const;
  bool covers(const CarPolynomial& p) const;

 private:
  explicit ModeWindow(std::vector<Dyadic> modes);
  std::vector<Dyadic> modes_;
};

// Dense matrix of a polynomial in the sign-chain representation where the
// single-mode annihilator is [[0,1],[0,0]].
Eigen::MatrixXcd represent(const CarPolynomial& p, const ModeWindow& w);

// Largest entrywise deviation of {a_i,a†_j} − δ_ij I, {a_i,a_j}, {a†_i,a†_j}
// over all mode pairs of the window.
double car_relation_deviation(const ModeWindow& w);

class DensityMatrix {
 public:
  explicit DensityMatrix(Eigen::MatrixXcd rho);  // validates hermitian, trace, positivity
  const Eigen::MatrixXcd& matrix() const { return rho_; }

 private:
  Eigen::MatrixXcd rho_;
};

// n-fold tensor power of diag(mu, 1-mu).
DensityMatrix product_density(double mu, const ModeWindow& w);

// Gauge-invariant Gaussian density with two-point matrix q_window; spectrum
// of q_window must lie in [0,1], boundary eigenvalues are clamped at 1e-8.
DensityMatrix gaussian_density(const Eigen::MatrixXd& q_window, const ModeWindow& w);

Complex oracle_evaluate(const DensityMatrix& d, const CarPolynomial& p, const ModeWindow& w);

}  // namespace carsym
