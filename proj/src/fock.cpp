#include "carsym/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace carsym {

namespace {

constexpr double kDensityEigTol = 1e-10;
constexpr double kTraceTol = 1e-12;
constexpr double kCovarianceClamp = 1e-8;

// Applies a factor sequence to basis state conf (rightmost factor first).
// Returns false when the word annihilates the state.
bool apply_word(const Word& w, const ModeWindow& win, std::size_t& conf, int& sign) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    auto pos = win.position(it->index);
    if (!pos) throw DomainError("polynomial support outside the mode window");
    std::size_t bit = std::size_t(1) << *pos;
    bool occupied = conf & bit;
    if (it->dagger ? occupied : !occupied) return false;
    std::size_t below = conf & (bit - 1);
    if (std::popcount(below) % 2 == 1) sign = -sign;
    conf ^= bit;
  }
  return true;
}

}  // namespace

ModeWindow::ModeWindow(std::vector<Dyadic> modes) : modes_(std::move(modes)) {
  if (modes_.size() > max_modes) throw DomainError("mode window larger than 12 modes");
  for (std::size_t i = 0; i + 1 < modes_.size(); ++i) {
    for (std::size_t j = i + 1; j < modes_.size(); ++j) {
      if (modes_[i] == modes_[j]) throw DomainError("duplicate mode in window");
    }
  }
}

ModeWindow ModeWindow::of(std::vector<Dyadic> modes) {
  std::sort(modes.begin(), modes.end());
  return ModeWindow(std::move(modes));
}

ModeWindow ModeWindow::with_order(std::vector<Dyadic> modes) { return ModeWindow(std::move(modes)); }

ModeWindow ModeWindow::integers(std::int64_t lo, std::int64_t hi) {
  std::vector<Dyadic> modes;
  for (std::int64_t k = lo; k <= hi; ++k) modes.emplace_back(k);
  return ModeWindow(std::move(modes));
}

std::optional<std::size_t> ModeWindow::position(Dyadic index) const {
  for (std::size_t i = 0; i < modes_.size(); ++i)
    if (modes_[i] == index) return i;
  return std::nullopt;
}

bool ModeWindow::covers(const CarPolynomial& p) const {
  for (const Dyadic& d : p.support())
    if (!position(d)) return false;
  return true;
}

Eigen::MatrixXcd represent(const CarPolynomial& p, const ModeWindow& w) {
  const std::size_t dim = w.dim();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [word, coeff] : p.terms()) {
    for (std::size_t conf = 0; conf < dim; ++conf) {
      std::size_t out = conf;
      int sign = 1;
      if (apply_word(word, w, out, sign)) m(out, conf) += coeff * double(sign);
    }
  }
  return m;
}

double car_relation_deviation(const ModeWindow& w) {
  const std::size_t n = w.size();
  const std::size_t dim = w.dim();
  double dev = 0.0;
  auto word_column = [&](const Word& word, std::size_t conf) -> std::pair<std::size_t, double> {
    std::size_t out = conf;
    int sign = 1;
    if (apply_word(word, w, out, sign)) return {out, double(sign)};
    return {conf, 0.0};
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (int kind = 0; kind < 3; ++kind) {
        // kind: 0 -> {a_i,a_j}, 1 -> {a†_i,a†_j}, 2 -> {a_i,a†_j}
        Generator x{w.modes()[i], kind == 1};
        Generator y{w.modes()[j], kind != 0};
        double expected_diag = (kind == 2 && i == j) ? 1.0 : 0.0;
        for (std::size_t conf = 0; conf < dim; ++conf) {
          auto [o1, v1] = word_column({x, y}, conf);
          auto [o2, v2] = word_column({y, x}, conf);
          // column of {x,y} has at most two nonzero rows; compare to expected_diag * e_conf
          double at_conf = (o1 == conf ? v1 : 0.0) + (o2 == conf ? v2 : 0.0);
          dev = std::max(dev, std::abs(at_conf - expected_diag));
          if (o1 != conf) dev = std::max(dev, std::abs(v1 + (o2 == o1 ? v2 : 0.0)));
          if (o2 != conf && o2 != o1) dev = std::max(dev, std::abs(v2));
        }
      }
    }
  }
  return dev;
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols()) throw DomainError("density matrix must be square");
  double herm = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-10) throw DomainError("density matrix is not hermitian");
  double tr = rho_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol || std::abs(rho_.trace().imag()) > kTraceTol) {
    throw DomainError("density matrix trace is not 1");
  }
  if (rho_.rows() <= 1024) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kDensityEigTol) {
      throw DomainError("density matrix has a negative eigenvalue");
    }
  }
}

DensityMatrix product_density(double mu, const ModeWindow& w) {
  if (mu < 0.0 || mu > 1.0) throw DomainError("mu must lie in [0,1]");
  const std::size_t dim = w.dim();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t conf = 0; conf < dim; ++conf) {
    double v = 1.0;
    for (std::size_t p = 0; p < w.size(); ++p) v *= (conf >> p & 1) ? (1.0 - mu) : mu;
    rho(conf, conf) = v;
  }
  return DensityMatrix(std::move(rho));
}

DensityMatrix gaussian_density(const Eigen::MatrixXd& q_window, const ModeWindow& w) {
  const std::size_t n = w.size();
  if (q_window.rows() != Eigen::Index(n) || q_window.cols() != Eigen::Index(n)) {
    throw DomainError("covariance size does not match the window");
  }
  if ((q_window - q_window.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw DomainError("covariance matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> qes(q_window);
  Eigen::VectorXd lam = qes.eigenvalues();
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam[i] < -kDensityEigTol || lam[i] > 1.0 + kDensityEigTol) {
      throw DomainError("covariance eigenvalues must lie in [0,1]");
    }
    lam[i] = std::clamp(lam[i], kCovarianceClamp, 1.0 - kCovarianceClamp);
  }
  // h = log(Q (1-Q)^{-1}) through the spectral decomposition of Q.
  Eigen::VectorXd eps = lam.unaryExpr([](double x) { return std::log(x / (1.0 - x)); });
  Eigen::MatrixXd h = qes.eigenvectors() * eps.asDiagonal() * qes.eigenvectors().transpose();

  const std::size_t dim = w.dim();
  Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (h(j, k) == 0.0) continue;
      Word word{Generator{w.modes()[j], true}, Generator{w.modes()[k], false}};
      for (std::size_t conf = 0; conf < dim; ++conf) {
        std::size_t out = conf;
        int sign = 1;
        if (apply_word(word, w, out, sign)) big(out, conf) += h(j, k) * double(sign);
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> hes(big);
  Eigen::VectorXd spectrum = hes.eigenvalues();
  double top = spectrum.maxCoeff();
  Eigen::VectorXd weights = (spectrum.array() - top).exp();
  weights /= weights.sum();
  Eigen::MatrixXcd rho = hes.eigenvectors() * weights.asDiagonal() * hes.eigenvectors().adjoint();
  return DensityMatrix(std::move(rho));
}

Complex oracle_evaluate(const DensityMatrix& d, const CarPolynomial& p, const ModeWindow& w) {
  const std::size_t dim = w.dim();
  Complex total = 0.0;
  for (const auto& [word, coeff] : p.terms()) {
    Complex tr = 0.0;
    for (std::size_t conf = 0; conf < dim; ++conf) {
      std::size_t out = conf;
      int sign = 1;
      if (apply_word(word, w, out, sign)) tr += double(sign) * d.matrix()(conf, out);
    }
    total += coeff * tr;
  }
  return total;
}

}  // namespace carsym
