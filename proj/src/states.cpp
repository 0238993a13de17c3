#include "carsym/states.hpp"

#include <algorithm>
#include <cmath>

#include "carsym/actions.hpp"

namespace carsym {

namespace {

constexpr double kCovarianceEigTol = 1e-10;

// Splits a normal word into creator indices (ascending) and annihilator
// indices (ascending); empty return means the word is not gauge-balanced.
struct SplitWord {
  std::vector<Dyadic> creators;
  std::vector<Dyadic> annihilators;
};

SplitWord split_normal_word(const Word& w) {
  SplitWord s;
  for (const Generator& g : w) {
    if (g.dagger)
      s.creators.push_back(g.index);
    else
      s.annihilators.push_back(g.index);
  }
  std::reverse(s.annihilators.begin(), s.annihilators.end());  // stored descending in the word
  return s;
}

}  // namespace

Complex StateModel::evaluate(const CarPolynomial& p) const {
  Complex total = 0.0;
  for (const auto& [w, c] : p.terms()) total += c * word_value(w);
  return total;
}

// ---------------------------------------------------------------------------
// ProductState

ProductState::ProductState(double mu) : mu_(mu) {
  if (mu < 0.0 || mu > 1.0) throw DomainError("mu must lie in [0,1]");
}

Complex ProductState::word_value(const Word& w) const {
  SplitWord s = split_normal_word(w);
  if (s.creators != s.annihilators) return 0.0;  // singleton or unbalanced word
  double v = 1.0;
  for (std::size_t i = 0; i < s.creators.size(); ++i) v *= 1.0 - mu_;
  return v;
}

nlohmann::ordered_json ProductState::descriptor() const {
  return {{"type", "product"}, {"mu", mu_}};
}

// ---------------------------------------------------------------------------
// QuasiFreeState

std::shared_ptr<const QuasiFreeState> QuasiFreeState::toeplitz(std::map<std::int64_t, double> q) {
  auto s = std::shared_ptr<QuasiFreeState>(new QuasiFreeState());
  s->toeplitz_ = true;
  for (const auto& [lag, v] : q) {
    auto it = s->symbol_.find(-lag);
    if (it != s->symbol_.end() && it->second != v) throw DomainError("toeplitz symbol is not symmetric");
    s->symbol_[lag] = v;
    s->symbol_[-lag] = v;
  }
  s->validate_spectrum();
  return s;
}

std::shared_ptr<const QuasiFreeState> QuasiFreeState::window(std::vector<std::int64_t> window,
                                                             Eigen::MatrixXd q,
                                                             std::optional<double> default_diag) {
  auto s = std::shared_ptr<QuasiFreeState>(new QuasiFreeState());
  if (!std::is_sorted(window.begin(), window.end()) ||
      std::adjacent_find(window.begin(), window.end()) != window.end()) {
    throw DomainError("window must be sorted and duplicate-free");
  }
  if (q.rows() != Eigen::Index(window.size()) || q.cols() != q.rows()) {
    throw DomainError("covariance size does not match the window");
  }
  if (window.size() > 0 && (q - q.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw DomainError("covariance matrix is not symmetric");
  }
  if (default_diag && (*default_diag < 0.0 || *default_diag > 1.0)) {
    throw DomainError("default diagonal must lie in [0,1]");
  }
  s->window_ = std::move(window);
  s->q_ = std::move(q);
  s->default_diag_ = default_diag;
  s->validate_spectrum();
  return s;
}

void QuasiFreeState::validate_spectrum() const {
  Eigen::MatrixXd block;
  if (toeplitz_) {
    // Desk-scale stand-in for "0 <= Q <= 1 on every finite window": eigenvalues
    // of one section comfortably wider than the symbol support.
    std::int64_t maxlag = 0;
    for (const auto& [lag, v] : symbol_) maxlag = std::max(maxlag, std::abs(lag));
    std::int64_t width = std::max<std::int64_t>(64, 4 * maxlag + 1);
    std::vector<std::int64_t> indices(width);
    for (std::int64_t i = 0; i < width; ++i) indices[i] = i;
    block = covariance_block(indices);
  } else {
    if (window_.empty()) return;
    block = q_;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block, Eigen::EigenvaluesOnly);
  double lo = es.eigenvalues().minCoeff();
  double hi = es.eigenvalues().maxCoeff();
  if (lo < -kCovarianceEigTol || hi > 1.0 + kCovarianceEigTol) {
    throw DomainError("covariance spectrum must lie in [0,1]");
  }
}

double QuasiFreeState::covariance(std::int64_t j, std::int64_t k) const {
  if (toeplitz_) {
    auto it = symbol_.find(j - k);
    return it == symbol_.end() ? 0.0 : it->second;
  }
  auto pos = [this](std::int64_t v) -> std::optional<std::size_t> {
    auto it = std::lower_bound(window_.begin(), window_.end(), v);
    if (it != window_.end() && *it == v) return std::size_t(it - window_.begin());
    return std::nullopt;
  };
  auto pj = pos(j), pk = pos(k);
  if (pj && pk) return q_(*pj, *pk);
  if (!default_diag_) throw DomainError("polynomial support outside the covariance window");
  return (j == k) ? *default_diag_ : 0.0;
}

Eigen::MatrixXd QuasiFreeState::covariance_block(const std::vector<std::int64_t>& indices) const {
  Eigen::MatrixXd m(indices.size(), indices.size());
  for (std::size_t r = 0; r < indices.size(); ++r)
    for (std::size_t c = 0; c < indices.size(); ++c) m(r, c) = covariance(indices[r], indices[c]);
  return m;
}

Complex QuasiFreeState::word_value(const Word& w) const {
  SplitWord s = split_normal_word(w);
  if (s.creators.size() != s.annihilators.size()) return 0.0;  // gauge invariance
  const std::size_t l = s.creators.size();
  if (l == 0) return 1.0;
  auto as_int = [](const Dyadic& d) {
    if (!d.is_integer()) throw DomainError("quasi-free evaluation requires integer support");
    return d.num();
  };
  Eigen::MatrixXd m(l, l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t h = 0; h < l; ++h) m(i, h) = covariance(as_int(s.creators[i]), as_int(s.annihilators[h]));
  if (l == 1) return m(0, 0);
  if (l == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return m.determinant();
}

nlohmann::ordered_json QuasiFreeState::descriptor() const {
  if (toeplitz_) {
    nlohmann::ordered_json q = nlohmann::ordered_json::object();
    for (const auto& [lag, v] : symbol_) {
      if (lag >= 0) q[std::to_string(lag)] = v;
    }
    return {{"type", "toeplitz"}, {"q", q}};
  }
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (Eigen::Index r = 0; r < q_.rows(); ++r) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (Eigen::Index c = 0; c < q_.cols(); ++c) row.push_back(q_(r, c));
    rows.push_back(row);
  }
  nlohmann::ordered_json d{{"type", "window"}, {"window", window_}, {"rows", rows}};
  if (default_diag_) d["default_diag"] = *default_diag_;
  return d;
}

// ---------------------------------------------------------------------------
// MixtureState

MixtureState::MixtureState(std::vector<std::pair<double, StatePtr>> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw DomainError("mixture needs at least one part");
  double total = 0.0;
  for (const auto& [w, s] : parts_) {
    if (w < 0.0) throw DomainError("mixture weights must be nonnegative");
    if (!s) throw DomainError("mixture part is null");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("mixture weights must sum to 1");
}

Complex MixtureState::word_value(const Word& w) const {
  Complex total = 0.0;
  for (const auto& [weight, s] : parts_) total += weight * s->word_value(w);
  return total;
}

nlohmann::ordered_json MixtureState::descriptor() const {
  nlohmann::ordered_json parts = nlohmann::ordered_json::array();
  for (const auto& [w, s] : parts_) parts.push_back(nlohmann::ordered_json::array({w, s->descriptor()}));
  return {{"type", "mixture"}, {"parts", parts}};
}

// ---------------------------------------------------------------------------
// PullbackState

PullbackState::PullbackState(StatePtr base, unsigned level) : base_(std::move(base)), level_(level) {
  if (!base_) throw DomainError("pullback base is null");
}

Complex PullbackState::word_value(const Word& w) const {
  Word doubled = w;
  for (Generator& g : doubled) {
    if (g.index.exp() > level_) throw DomainError("support lies outside Z/2^n for the pullback level");
    g.index = g.index.times_pow2(static_cast<int>(level_));
  }
  return base_->word_value(doubled);
}

nlohmann::ordered_json PullbackState::descriptor() const {
  return {{"type", "pullback"}, {"n", level_}, {"base", base_->descriptor()}};
}

// ---------------------------------------------------------------------------

StatePtr product_state(double mu) { return std::make_shared<ProductState>(mu); }
StatePtr vacuum_state() { return product_state(1.0); }
StatePtr mixture(std::vector<std::pair<double, StatePtr>> parts) {
  return std::make_shared<MixtureState>(std::move(parts));
}

StatePtr pullback(StatePtr base, unsigned n) {
  if (n == 0) return base;
  return std::make_shared<PullbackState>(std::move(base), n);
}

namespace {

class InjectedTermState final : public StateModel {
 public:
  InjectedTermState(StatePtr base, Word w, Complex v) : base_(std::move(base)), word_(std::move(w)), value_(v) {}
  Complex word_value(const Word& w) const override {
    Complex v = base_->word_value(w);
    if (w == word_) v += value_;
    return v;
  }
  nlohmann::ordered_json descriptor() const override {
    return {{"type", "injected"},
            {"base", base_->descriptor()},
            {"word", word_str(word_)},
            {"value", {{"re", value_.real()}, {"im", value_.imag()}}}};
  }

 private:
  StatePtr base_;
  Word word_;
  Complex value_;
};

}  // namespace

StatePtr with_injected_term(StatePtr base, Word w, Complex value) {
  return std::make_shared<InjectedTermState>(std::move(base), std::move(w), value);
}

double clustering_gap(const StateModel& s, const CarPolynomial& x, std::int64_t k) {
  if (!x.has_integer_support()) throw DomainError("clustering gap requires integer support");
  auto [even, odd] = x.even_odd();
  if (!odd.is_zero()) throw DomainError("clustering gap requires an even element");
  if (!x.almost_equal(x.adjoint(), CarPolynomial::zero_threshold)) {
    throw DomainError("clustering gap requires a self-adjoint element");
  }
  auto support = x.support();
  if (!support.empty()) {
    std::int64_t diameter = support.rbegin()->num() - support.begin()->num();
    if (k <= diameter) throw DomainError("separation must exceed the support diameter");
  }
  CarPolynomial shifted = act(SpreadingMap::tau(k), x);
  Complex pair = s.evaluate(x * shifted);
  Complex single = s.evaluate(x);
  return std::abs(pair - single * single);
}

}  // namespace carsym
