#include "gmg/structured.hpp"

#include <cmath>
#include <stdexcept>

namespace gmg {

namespace {

// Coefficients of f wrapped modulo n: w[j] = sum_{k == j mod n} a_k.
Vec wrap_coeffs(const TrigPoly& f, std::size_t n) {
  Vec w(n, cplx(0.0));
  for (int j = -f.degree(); j <= f.degree(); ++j) {
    const long long m = ((j % static_cast<long long>(n)) + static_cast<long long>(n)) %
                        static_cast<long long>(n);
    w[static_cast<std::size_t>(m)] += f.coeff(j);
  }
  return w;
}

void check_dense_guard(std::size_t n) {
  if (n > dense_guard)
    throw std::invalid_argument("dense materialization refused: size exceeds guard");
}

}  // namespace

CirculantOp::CirculantOp(TrigPoly f, std::size_t n)
    : n_(n), symbol_(std::move(f)) {
  if (n_ < static_cast<std::size_t>(2 * symbol_.degree() + 1))
    throw std::invalid_argument(
        "CirculantOp: n too small for the symbol degree (need n >= 2*deg+1)");
  plan_ = std::make_shared<DftPlan>(n_);
  eigs_.resize(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    eigs_[j] = symbol_.eval(two_pi * static_cast<double>(j) / n_);
    if (symbol_.real_valued()) eigs_[j] = cplx(eigs_[j].real(), 0.0);
  }
}

void CirculantOp::apply(const Vec& x, Vec& y) const {
  if (x.size() != n_) throw std::invalid_argument("CirculantOp: length mismatch");
  Vec t(n_);
  plan_->inverse(x.data(), t.data());  // F^H x
  for (std::size_t j = 0; j < n_; ++j) t[j] *= eigs_[j];
  y.resize(n_);
  plan_->forward(t.data(), y.data());  // F (eigs .* F^H x)
}

Vec CirculantOp::apply(const Vec& x) const {
  Vec y;
  apply(x, y);
  return y;
}

void CirculantOp::solve(const Vec& b, Vec& x) const {
  if (b.size() != n_) throw std::invalid_argument("CirculantOp: length mismatch");
  double mx = 0.0;
  for (const cplx& e : eigs_) mx = std::max(mx, std::abs(e));
  const double cutoff = 1e-13 * mx;
  Vec t(n_);
  plan_->inverse(b.data(), t.data());
  for (std::size_t j = 0; j < n_; ++j)
    t[j] = std::abs(eigs_[j]) <= cutoff ? cplx(0.0) : t[j] / eigs_[j];
  x.resize(n_);
  plan_->forward(t.data(), x.data());
}

DenseMatrix CirculantOp::dense() const {
  check_dense_guard(n_);
  const Vec w = wrap_coeffs(symbol_, n_);
  DenseMatrix M(n_, n_);
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t s = 0; s < n_; ++s)
      M(r, s) = w[(r + n_ - s % n_) % n_];
  return M;
}

ToeplitzOp::ToeplitzOp(std::size_t n, Vec diagonal_table)
    : n_(n), table_(std::move(diagonal_table)) {
  if (n_ == 0) throw std::invalid_argument("ToeplitzOp: empty matrix");
  if (table_.size() != 2 * n_ - 1)
    throw std::invalid_argument("ToeplitzOp: diagonal table must have length 2n-1");
  embed_n_ = next_smooth_235(2 * n_ - 1);
  plan_ = std::make_shared<DftPlan>(embed_n_);
  Vec c(embed_n_, cplx(0.0));
  for (std::size_t j = 0; j < n_; ++j) c[j] = coeff(static_cast<std::int64_t>(j));
  for (std::size_t j = 1; j < n_; ++j)
    c[embed_n_ - j] = coeff(-static_cast<std::int64_t>(j));
  embed_spec_.resize(embed_n_);
  plan_->forward_raw(c.data(), embed_spec_.data());
}

ToeplitzOp ToeplitzOp::from_symbol(const TrigPoly& f, std::size_t n) {
  Vec table(2 * n - 1, cplx(0.0));
  for (std::int64_t k = -(static_cast<std::int64_t>(n) - 1);
       k <= static_cast<std::int64_t>(n) - 1; ++k)
    table[static_cast<std::size_t>(k + static_cast<std::int64_t>(n) - 1)] =
        f.coeff(static_cast<int>(k));
  return ToeplitzOp(n, std::move(table));
}

ToeplitzOp ToeplitzOp::from_rule(const std::function<cplx(std::int64_t)>& a,
                                 std::size_t n) {
  Vec table(2 * n - 1);
  for (std::int64_t k = -(static_cast<std::int64_t>(n) - 1);
       k <= static_cast<std::int64_t>(n) - 1; ++k)
    table[static_cast<std::size_t>(k + static_cast<std::int64_t>(n) - 1)] = a(k);
  return ToeplitzOp(n, std::move(table));
}

cplx ToeplitzOp::coeff(std::int64_t k) const {
  const std::int64_t nn = static_cast<std::int64_t>(n_);
  if (k <= -nn || k >= nn) return cplx(0.0);
  return table_[static_cast<std::size_t>(k + nn - 1)];
}

void ToeplitzOp::apply(const Vec& x, Vec& y) const {
  if (x.size() != n_) throw std::invalid_argument("ToeplitzOp: length mismatch");
  Vec xt(embed_n_, cplx(0.0)), X(embed_n_), t(embed_n_);
  for (std::size_t i = 0; i < n_; ++i) xt[i] = x[i];
  plan_->forward_raw(xt.data(), X.data());
  for (std::size_t i = 0; i < embed_n_; ++i) X[i] *= embed_spec_[i];
  plan_->inverse_raw(X.data(), t.data());
  const double inv = 1.0 / static_cast<double>(embed_n_);
  y.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) y[i] = t[i] * inv;
}

Vec ToeplitzOp::apply(const Vec& x) const {
  Vec y;
  apply(x, y);
  return y;
}

DenseMatrix ToeplitzOp::dense() const {
  check_dense_guard(n_);
  DenseMatrix M(n_, n_);
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t s = 0; s < n_; ++s)
      M(r, s) = coeff(static_cast<std::int64_t>(r) - static_cast<std::int64_t>(s));
  return M;
}

GCirculantOp::GCirculantOp(const TrigPoly& f, std::size_t n, std::size_t g)
    : n_(n), g_(g) {
  if (n_ == 0) throw std::invalid_argument("GCirculantOp: empty matrix");
  if (g_ == 0) throw std::invalid_argument("GCirculantOp: g must be >= 1");
  wrapped_ = wrap_coeffs(f, n_);
}

void GCirculantOp::apply(const Vec& x, Vec& y) const {
  if (x.size() != n_) throw std::invalid_argument("GCirculantOp: length mismatch");
  y.assign(n_, cplx(0.0));
  for (std::size_t r = 0; r < n_; ++r) {
    cplx acc = 0.0;
    for (std::size_t s = 0; s < n_; ++s)
      acc += wrapped_[(r + g_ * n_ - (g_ * s) % n_) % n_] * x[s];
    y[r] = acc;
  }
}

Vec GCirculantOp::apply(const Vec& x) const {
  Vec y;
  apply(x, y);
  return y;
}

DenseMatrix GCirculantOp::dense() const {
  check_dense_guard(n_);
  DenseMatrix M(n_, n_);
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t s = 0; s < n_; ++s)
      M(r, s) = wrapped_[(r + g_ * n_ - (g_ * s) % n_) % n_];
  return M;
}

CuttingOp::CuttingOp(std::size_t n, std::size_t g, std::size_t zeta,
                     std::size_t k)
    : n_(n), g_(g), zeta_(zeta), k_(k) {}

CuttingOp CuttingOp::circulant(std::size_t n, std::size_t g) {
  if (g < 2) throw std::invalid_argument("CuttingOp: g must be >= 2");
  if (n % g != 0)
    throw std::invalid_argument("CuttingOp: circulant cutting needs g | n");
  return CuttingOp(n, g, 0, n / g);
}

CuttingOp CuttingOp::toeplitz(std::size_t n, std::size_t g, std::size_t zeta) {
  if (g < 2) throw std::invalid_argument("CuttingOp: g must be >= 2");
  if (n < 2 * zeta + 1)
    throw std::invalid_argument("CuttingOp: n too small for the border width");
  const std::size_t k = (n - 2 * zeta - 1) / g + 1;
  return CuttingOp(n, g, zeta, k);
}

Vec CuttingOp::cut(const Vec& x) const {
  if (x.size() != n_) throw std::invalid_argument("CuttingOp: length mismatch");
  Vec y(k_);
  for (std::size_t j = 0; j < k_; ++j) y[j] = x[zeta_ + g_ * j];
  return y;
}

Vec CuttingOp::extend(const Vec& y) const {
  if (y.size() != k_) throw std::invalid_argument("CuttingOp: length mismatch");
  Vec x(n_, cplx(0.0));
  for (std::size_t j = 0; j < k_; ++j) x[zeta_ + g_ * j] = y[j];
  return x;
}

DenseMatrix CuttingOp::dense() const {
  check_dense_guard(n_);
  DenseMatrix M = DenseMatrix::Zero(n_, k_);
  for (std::size_t j = 0; j < k_; ++j) M(zeta_ + g_ * j, j) = 1.0;
  return M;
}

std::pair<CirculantOp, TrigPoly> galerkin_coarse(const CirculantOp& A,
                                                 const TrigPoly& p,
                                                 std::size_t g) {
  const CuttingOp cut = CuttingOp::circulant(A.size(), g);  // validates g | n
  TrigPoly fhat = coarse_symbol(A.symbol(), p, static_cast<int>(g));
  CirculantOp coarse(fhat, cut.coarse_size());
  return {std::move(coarse), std::move(fhat)};
}

ToeplitzOp galerkin_coarse(const ToeplitzOp& A, const TrigPoly& p,
                           std::size_t g) {
  const std::size_t zeta = static_cast<std::size_t>(p.degree());
  const CuttingOp cut = CuttingOp::toeplitz(A.size(), g, zeta);
  const std::size_t k = cut.coarse_size();
  const TrigPoly q2 = p.mod_square();
  Vec table(2 * k - 1, cplx(0.0));
  for (std::int64_t j = -(static_cast<std::int64_t>(k) - 1);
       j <= static_cast<std::int64_t>(k) - 1; ++j) {
    cplx acc = 0.0;
    for (int t = -q2.degree(); t <= q2.degree(); ++t)
      acc += q2.coeff(t) * A.coeff(static_cast<std::int64_t>(g) * j - t);
    table[static_cast<std::size_t>(j + static_cast<std::int64_t>(k) - 1)] = acc;
  }
  return ToeplitzOp(k, std::move(table));
}

std::size_t op_size(const StructuredOp& op) {
  return std::visit([](const auto& a) { return a.size(); }, op);
}

void op_apply(const StructuredOp& op, const Vec& x, Vec& y) {
  std::visit([&](const auto& a) { a.apply(x, y); }, op);
}

Vec op_apply(const StructuredOp& op, const Vec& x) {
  Vec y;
  op_apply(op, x, y);
  return y;
}

DenseMatrix op_dense(const StructuredOp& op) {
  return std::visit([](const auto& a) { return a.dense(); }, op);
}

}  // namespace gmg
