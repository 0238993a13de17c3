#include "carsym/actions.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace carsym {

// ---------------------------------------------------------------------------
// FinitePermutation

FinitePermutation::FinitePermutation(std::map<std::int64_t, std::int64_t> moved) : moved_(std::move(moved)) {
  for (auto it = moved_.begin(); it != moved_.end();) {
    it = (it->first == it->second) ? moved_.erase(it) : std::next(it);
  }
  std::set<std::int64_t> values;
  for (const auto& [k, v] : moved_) values.insert(v);
  if (values.size() != moved_.size()) throw DomainError("permutation is not injective");
  for (const auto& [k, v] : moved_) {
    if (!moved_.count(v)) throw DomainError("permutation is not bijective on its support");
  }
}

FinitePermutation FinitePermutation::transposition(std::int64_t i, std::int64_t j) {
  if (i == j) return {};
  return FinitePermutation({{i, j}, {j, i}});
}

std::int64_t FinitePermutation::operator()(std::int64_t k) const {
  auto it = moved_.find(k);
  return it == moved_.end() ? k : it->second;
}

FinitePermutation FinitePermutation::inverse() const {
  std::map<std::int64_t, std::int64_t> inv;
  for (const auto& [k, v] : moved_) inv[v] = k;
  return FinitePermutation(std::move(inv));
}

FinitePermutation compose(const FinitePermutation& f, const FinitePermutation& g) {
  std::map<std::int64_t, std::int64_t> out;
  for (const auto& [k, v] : g.moved_) out[k] = f(v);
  for (const auto& [k, v] : f.moved_) {
    if (!g.moved_.count(k)) out[k] = v;
  }
  return FinitePermutation(std::move(out));
}

// ---------------------------------------------------------------------------
// SpreadingMap

SpreadingMap::SpreadingMap(std::int64_t shift, std::vector<std::int64_t> skipped)
    : shift_(shift), skipped_(std::move(skipped)) {
  std::sort(skipped_.begin(), skipped_.end());
  skipped_.erase(std::unique(skipped_.begin(), skipped_.end()), skipped_.end());
}

SpreadingMap SpreadingMap::theta_power(std::int64_t h, std::int64_t e) {
  if (e < 0) throw DomainError("theta exponent must be nonnegative");
  std::vector<std::int64_t> skipped;
  skipped.reserve(e);
  for (std::int64_t i = 0; i < e; ++i) skipped.push_back(h + i);
  return SpreadingMap(0, std::move(skipped));
}

std::int64_t SpreadingMap::operator()(std::int64_t k) const {
  // Least fixpoint of v = k + shift + #{s in skipped : s <= v}; it is the
  // value of the unique order isomorphism onto ℤ \ skipped with offset
  // shift at -∞.
  std::int64_t v = k + shift_;
  for (;;) {
    auto it = std::upper_bound(skipped_.begin(), skipped_.end(), v);
    std::int64_t next = k + shift_ + (it - skipped_.begin());
    if (next == v) return v;
    v = next;
  }
}

SpreadingMap compose(const SpreadingMap& f, const SpreadingMap& g) {
  std::vector<std::int64_t> skipped = f.skipped_;
  skipped.reserve(skipped.size() + g.skipped_.size());
  for (std::int64_t s : g.skipped_) skipped.push_back(f(s));
  return SpreadingMap(f.shift_ + g.shift_, std::move(skipped));
}

SpreadingMap::GeneratorWord SpreadingMap::generator_word() const {
  // Maximal runs of the skipped set give theta blocks: a run starting at a
  // with length c becomes theta_{a - (sum of earlier lengths)}^c.
  std::vector<std::pair<std::int64_t, std::int64_t>> blocks;  // (theta index, exponent)
  std::int64_t consumed = 0;
  std::size_t i = 0;
  while (i < skipped_.size()) {
    std::size_t j = i;
    while (j + 1 < skipped_.size() && skipped_[j + 1] == skipped_[j] + 1) ++j;
    std::int64_t len = std::int64_t(j - i + 1);
    blocks.emplace_back(skipped_[i] - consumed, len);
    consumed += len;
    i = j + 1;
  }
  std::int64_t n = std::max<std::int64_t>(1, std::abs(shift_));
  for (const auto& [idx, e] : blocks) n = std::max(n, std::abs(idx));
  GeneratorWord word{n, std::vector<std::int64_t>(2 * n + 1, 0), shift_};
  for (const auto& [idx, e] : blocks) word.exponents[idx + n] = e;
  return word;
}

SpreadingMap folner_word_to_map(std::span<const std::int64_t> exponents, std::int64_t n, std::int64_t shift) {
  if (exponents.size() != std::size_t(2 * n + 1)) throw DomainError("exponent tuple must have size 2n+1");
  SpreadingMap acc = SpreadingMap::tau(shift);
  for (std::int64_t i = n; i >= -n; --i) {
    std::int64_t e = exponents[i + n];
    if (e == 0) continue;
    acc = compose(SpreadingMap::theta_power(i, e), acc);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// PLDyadicMap

namespace {

Dyadic apply_piece(const PLDyadicMap::Piece& p, const Dyadic& x) { return x.times_pow2(p.slope_exp) + p.offset; }

}  // namespace

PLDyadicMap::PLDyadicMap() : pieces_{Piece{}} {}

PLDyadicMap::PLDyadicMap(std::vector<Dyadic> breakpoints, std::vector<Piece> pieces)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (pieces_.size() != breakpoints_.size() + 1) throw DomainError("piece count must be breakpoints + 1");
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] < breakpoints_[i + 1])) throw DomainError("breakpoints must increase strictly");
  }
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (apply_piece(pieces_[i], breakpoints_[i]) != apply_piece(pieces_[i + 1], breakpoints_[i])) {
      throw DomainError("pieces disagree at a breakpoint");
    }
  }
  normalize();
  if (pieces_.front().slope_exp != 0 || pieces_.back().slope_exp != 0) {
    throw DomainError("unbounded pieces must have slope 1");
  }
}

void PLDyadicMap::normalize() {
  std::size_t out = 0;
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    if (pieces_[i] == pieces_[out]) continue;
    breakpoints_[out] = breakpoints_[i - 1];
    pieces_[++out] = pieces_[i];
  }
  breakpoints_.resize(out);
  pieces_.resize(out + 1);
}

PLDyadicMap PLDyadicMap::theta0_tilde() {
  return PLDyadicMap({Dyadic(-1), Dyadic(0)}, {Piece{0, Dyadic(0)}, Piece{1, Dyadic(1)}, Piece{0, Dyadic(1)}});
}

PLDyadicMap PLDyadicMap::dilated_theta0(unsigned k) {
  Dyadic step = Dyadic(1).times_pow2(-static_cast<int>(k));
  return PLDyadicMap({-step, Dyadic(0)}, {Piece{0, Dyadic(0)}, Piece{1, step}, Piece{0, step}});
}

PLDyadicMap PLDyadicMap::translation(Dyadic t) { return PLDyadicMap({}, {Piece{0, t}}); }

Dyadic PLDyadicMap::operator()(const Dyadic& d) const {
  std::size_t i = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), d) - breakpoints_.begin();
  return apply_piece(pieces_[i], d);
}

PLDyadicMap PLDyadicMap::inverse() const {
  std::vector<Dyadic> breakpoints;
  std::vector<Piece> pieces;
  breakpoints.reserve(breakpoints_.size());
  pieces.reserve(pieces_.size());
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const Piece& p = pieces_[i];
    pieces.push_back(Piece{-p.slope_exp, (-p.offset).times_pow2(-p.slope_exp)});
    if (i < breakpoints_.size()) breakpoints.push_back((*this)(breakpoints_[i]));
  }
  return PLDyadicMap(std::move(breakpoints), std::move(pieces));
}

PLDyadicMap compose(const PLDyadicMap& f, const PLDyadicMap& g) {
  PLDyadicMap ginv = g.inverse();
  std::vector<Dyadic> cuts = g.breakpoints_;
  for (const Dyadic& b : f.breakpoints_) cuts.push_back(ginv(b));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto piece_at = [](const PLDyadicMap& m, const Dyadic& sample) -> const PLDyadicMap::Piece& {
    std::size_t i = std::upper_bound(m.breakpoints_.begin(), m.breakpoints_.end(), sample) -
                    m.breakpoints_.begin();
    return m.pieces_[i];
  };
  std::vector<PLDyadicMap::Piece> pieces;
  for (std::size_t i = 0; i <= cuts.size(); ++i) {
    Dyadic sample;
    if (cuts.empty()) {
      sample = Dyadic(0);
    } else if (i == 0) {
      sample = cuts.front() - Dyadic(1);
    } else if (i == cuts.size()) {
      sample = cuts.back() + Dyadic(1);
    } else {
      sample = (cuts[i - 1] + cuts[i]).times_pow2(-1);
    }
    const auto& pg = piece_at(g, sample);
    const auto& pf = piece_at(f, apply_piece(pg, sample));
    // f(g(x)) = 2^{ef}(2^{eg} x + cg) + cf
    pieces.push_back(PLDyadicMap::Piece{pf.slope_exp + pg.slope_exp,
                                        pg.offset.times_pow2(pf.slope_exp) + pf.offset});
  }
  return PLDyadicMap(std::move(cuts), std::move(pieces));
}

bool PLDyadicMap::is_identity() const { return breakpoints_.empty() && pieces_.front() == Piece{}; }

// ---------------------------------------------------------------------------
// OrthogonalWindowMatrix

OrthogonalWindowMatrix::OrthogonalWindowMatrix(std::vector<std::int64_t> window, Eigen::MatrixXd entries)
    : window_(std::move(window)), entries_(std::move(entries)) {
  if (!std::is_sorted(window_.begin(), window_.end()) ||
      std::adjacent_find(window_.begin(), window_.end()) != window_.end()) {
    throw DomainError("window must be sorted and duplicate-free");
  }
  const auto n = Eigen::Index(window_.size());
  if (entries_.rows() != n || entries_.cols() != n) throw DomainError("matrix size does not match the window");
  double dev = (entries_.transpose() * entries_ - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (dev > 1e-12) throw DomainError("matrix is not orthogonal");
}

OrthogonalWindowMatrix OrthogonalWindowMatrix::identity(std::vector<std::int64_t> window) {
  auto n = Eigen::Index(window.size());
  return OrthogonalWindowMatrix(std::move(window), Eigen::MatrixXd::Identity(n, n));
}

OrthogonalWindowMatrix OrthogonalWindowMatrix::givens(std::vector<std::int64_t> window, std::int64_t i,
                                                      std::int64_t j, double angle) {
  OrthogonalWindowMatrix o = identity(std::move(window));
  auto pi = std::lower_bound(o.window_.begin(), o.window_.end(), i) - o.window_.begin();
  auto pj = std::lower_bound(o.window_.begin(), o.window_.end(), j) - o.window_.begin();
  if (pi >= Eigen::Index(o.window_.size()) || o.window_[pi] != i || pj >= Eigen::Index(o.window_.size()) ||
      o.window_[pj] != j || i == j) {
    throw DomainError("rotation plane must consist of two distinct window indices");
  }
  double c = std::cos(angle), s = std::sin(angle);
  o.entries_(pi, pi) = c;
  o.entries_(pj, pj) = c;
  o.entries_(pi, pj) = -s;
  o.entries_(pj, pi) = s;
  return OrthogonalWindowMatrix(std::move(o.window_), std::move(o.entries_));
}

OrthogonalWindowMatrix OrthogonalWindowMatrix::sign_flip(std::vector<std::int64_t> window, std::int64_t i) {
  OrthogonalWindowMatrix o = identity(std::move(window));
  auto pi = std::lower_bound(o.window_.begin(), o.window_.end(), i) - o.window_.begin();
  if (pi >= Eigen::Index(o.window_.size()) || o.window_[pi] != i) throw DomainError("index outside window");
  o.entries_(pi, pi) = -1.0;
  return OrthogonalWindowMatrix(std::move(o.window_), std::move(o.entries_));
}

OrthogonalWindowMatrix OrthogonalWindowMatrix::swap(std::vector<std::int64_t> window, std::int64_t i,
                                                    std::int64_t j) {
  OrthogonalWindowMatrix o = identity(std::move(window));
  auto pi = std::lower_bound(o.window_.begin(), o.window_.end(), i) - o.window_.begin();
  auto pj = std::lower_bound(o.window_.begin(), o.window_.end(), j) - o.window_.begin();
  if (pi >= Eigen::Index(o.window_.size()) || o.window_[pi] != i || pj >= Eigen::Index(o.window_.size()) ||
      o.window_[pj] != j || i == j) {
    throw DomainError("swap plane must consist of two distinct window indices");
  }
  o.entries_(pi, pi) = 0.0;
  o.entries_(pj, pj) = 0.0;
  o.entries_(pi, pj) = -1.0;
  o.entries_(pj, pi) = 1.0;
  return OrthogonalWindowMatrix(std::move(o.window_), std::move(o.entries_));
}

OrthogonalWindowMatrix operator*(const OrthogonalWindowMatrix& a, const OrthogonalWindowMatrix& b) {
  std::vector<std::int64_t> window = a.window_;
  window.insert(window.end(), b.window_.begin(), b.window_.end());
  std::sort(window.begin(), window.end());
  window.erase(std::unique(window.begin(), window.end()), window.end());
  const auto n = Eigen::Index(window.size());
  Eigen::MatrixXd ma = Eigen::MatrixXd::Identity(n, n), mb = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      ma(r, c) = a.entry(window[r], window[c]);
      mb(r, c) = b.entry(window[r], window[c]);
    }
  }
  return OrthogonalWindowMatrix(std::move(window), ma * mb);
}

double OrthogonalWindowMatrix::entry(std::int64_t row, std::int64_t col) const {
  auto pr = std::lower_bound(window_.begin(), window_.end(), row) - window_.begin();
  auto pc = std::lower_bound(window_.begin(), window_.end(), col) - window_.begin();
  bool in_r = pr < Eigen::Index(window_.size()) && window_[pr] == row;
  bool in_c = pc < Eigen::Index(window_.size()) && window_[pc] == col;
  if (in_r && in_c) return entries_(pr, pc);
  return row == col ? 1.0 : 0.0;
}

// ---------------------------------------------------------------------------
// Actions on polynomials

namespace {

template <typename IndexMap>
CarPolynomial relabel(const CarPolynomial& p, IndexMap&& f) {
  CarPolynomial out;
  for (const auto& [w, c] : p.terms()) {
    Word relabeled = w;
    for (Generator& g : relabeled) g.index = f(g.index);
    out.add_raw(std::move(relabeled), c);
  }
  return out;
}

}  // namespace

CarPolynomial act(const FinitePermutation& f, const CarPolynomial& p) {
  return relabel(p, [&f](const Dyadic& d) {
    if (!d.is_integer()) throw DomainError("permutation action requires integer support");
    return Dyadic(f(d.num()));
  });
}

CarPolynomial act(const SpreadingMap& f, const CarPolynomial& p) {
  return relabel(p, [&f](const Dyadic& d) {
    if (!d.is_integer()) throw DomainError("spreading action requires integer support");
    return Dyadic(f(d.num()));
  });
}

CarPolynomial act(const PLDyadicMap& f, const CarPolynomial& p) {
  return relabel(p, [&f](const Dyadic& d) { return f(d); });
}

CarPolynomial act(const OrthogonalWindowMatrix& o, const CarPolynomial& p) {
  CarPolynomial out;
  for (const auto& [w, c] : p.terms()) {
    CarPolynomial acc(c);
    for (const Generator& g : w) {
      bool in_window = g.index.is_integer() &&
                       std::binary_search(o.window().begin(), o.window().end(), g.index.num());
      if (!in_window) {
        acc *= CarPolynomial::generator(g);
        continue;
      }
      CarPolynomial image;
      for (std::int64_t k : o.window()) {
        double e = o.entry(k, g.index.num());
        if (e == 0.0) continue;
        image += Complex(e, 0.0) * CarPolynomial::generator(Generator{Dyadic(k), g.dagger});
      }
      acc *= image;
    }
    out += acc;
  }
  return out;
}

CarPolynomial rescale(unsigned n, const CarPolynomial& p) {
  return relabel(p, [n](const Dyadic& d) {
    if (d.exp() > n + 1) throw DomainError("support lies outside Z/2^(n+1)");
    return d.times_pow2(1);
  });
}

CarPolynomial rescale_inverse(unsigned n, const CarPolynomial& p) {
  return relabel(p, [n](const Dyadic& d) {
    if (d.exp() > n) throw DomainError("support lies outside Z/2^n");
    return d.times_pow2(-1);
  });
}

}  // namespace carsym
