#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <memory>
#include <variant>

#include "gmg/dft.hpp"
#include "gmg/trigpoly.hpp"

namespace gmg {

using DenseMatrix = Eigen::MatrixXcd;

// Largest size materialize() will build densely.
inline constexpr std::size_t dense_guard = 4096;

// Circulant matrix C_n(f) = [a_{(r-s) mod n}] generated by a trigonometric
// polynomial f. Diagonalized by the unitary DFT: C = F diag(f(2 pi j / n)) F^H,
// so matvec and direct solve run through two transforms.
class CirculantOp {
 public:
  CirculantOp(TrigPoly f, std::size_t n);  // requires n >= 2*deg(f)+1

  std::size_t size() const { return n_; }
  const TrigPoly& symbol() const { return symbol_; }
  const Vec& eigenvalues() const { return eigs_; }

  void apply(const Vec& x, Vec& y) const;
  Vec apply(const Vec& x) const;

  // Spectral solve; eigenvalues with |lambda| <= 1e-13 * max|lambda| are
  // treated as zero (pseudo-inverse), so singular systems with consistent
  // right-hand sides are solved in the range of the matrix.
  void solve(const Vec& b, Vec& x) const;

  DenseMatrix dense() const;

 private:
  std::size_t n_;
  TrigPoly symbol_;
  Vec eigs_;
  std::shared_ptr<DftPlan> plan_;
};

// Toeplitz matrix T_n = [a_{r-s}] from an explicit diagonal table
// a_{-(n-1)}..a_{n-1}. Matvec runs through a circulant embedding of smooth
// length >= 2n-1.
class ToeplitzOp {
 public:
  ToeplitzOp(std::size_t n, Vec diagonal_table);  // table size 2n-1

  // Table from symbol coefficients (entries beyond the degree are zero).
  static ToeplitzOp from_symbol(const TrigPoly& f, std::size_t n);
  // Table from an arbitrary coefficient rule a(k), k in [-(n-1), n-1].
  static ToeplitzOp from_rule(const std::function<cplx(std::int64_t)>& a,
                              std::size_t n);

  std::size_t size() const { return n_; }
  cplx coeff(std::int64_t k) const;  // 0 outside the band

  void apply(const Vec& x, Vec& y) const;
  Vec apply(const Vec& x) const;

  DenseMatrix dense() const;

 private:
  std::size_t n_;
  Vec table_;  // table_[k + n - 1] = a_k
  std::size_t embed_n_;
  std::shared_ptr<DftPlan> plan_;
  Vec embed_spec_;  // forward_raw of the embedded generator
};

// g-circulant matrix C_{n,g} = [a_{(r - g s) mod n}]; g = 1 reduces to the
// plain circulant. Kept dense-friendly: it is an analysis/verification type.
class GCirculantOp {
 public:
  GCirculantOp(const TrigPoly& f, std::size_t n, std::size_t g);

  std::size_t size() const { return n_; }
  std::size_t shift() const { return g_; }

  void apply(const Vec& x, Vec& y) const;
  Vec apply(const Vec& x) const;

  DenseMatrix dense() const;

 private:
  std::size_t n_, g_;
  Vec wrapped_;  // wrapped_[j] = sum_{k == j mod n} a_k
};

// Row-selection operator: picks entries zeta + g*j, j = 0..k-1, from a length-n
// vector. zeta = 0 with g | n is the circulant cutting (k = n/g); zeta = beta
// (projector half-bandwidth) is the Toeplitz cutting, where the selected rows
// keep the Galerkin coarse matrix exactly Toeplitz.
class CuttingOp {
 public:
  static CuttingOp circulant(std::size_t n, std::size_t g);
  static CuttingOp toeplitz(std::size_t n, std::size_t g, std::size_t zeta);

  std::size_t fine_size() const { return n_; }
  std::size_t coarse_size() const { return k_; }
  std::size_t factor() const { return g_; }
  std::size_t zeta() const { return zeta_; }

  Vec cut(const Vec& x) const;     // y_j = x_{zeta + g j}
  Vec extend(const Vec& y) const;  // adjoint: scatter back, zeros elsewhere

  DenseMatrix dense() const;  // n x k

 private:
  CuttingOp(std::size_t n, std::size_t g, std::size_t zeta, std::size_t k);
  std::size_t n_, g_, zeta_, k_;
};

// Galerkin coarse operators. The circulant version returns C_{n/g}(fhat) with
// fhat = coarse_symbol(f, p, g); the Toeplitz version returns T_k(b) with
// b_j = (f*|p|^2)_{g j} and k from the Toeplitz cutting rule with
// zeta = deg(p).
std::pair<CirculantOp, TrigPoly> galerkin_coarse(const CirculantOp& A,
                                                 const TrigPoly& p,
                                                 std::size_t g);
ToeplitzOp galerkin_coarse(const ToeplitzOp& A, const TrigPoly& p,
                           std::size_t g);

// Variant used where a level can hold either matrix kind.
using StructuredOp = std::variant<CirculantOp, ToeplitzOp>;

std::size_t op_size(const StructuredOp& op);
void op_apply(const StructuredOp& op, const Vec& x, Vec& y);
Vec op_apply(const StructuredOp& op, const Vec& x);
DenseMatrix op_dense(const StructuredOp& op);

}  // namespace gmg
