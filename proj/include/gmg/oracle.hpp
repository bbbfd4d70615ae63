#pragma once

#include "gmg/multigrid.hpp"
#include "gmg/structured.hpp"

namespace gmg::oracle {

using gmg::DenseMatrix;
using DenseVec = Eigen::VectorXcd;

// max|A - A^H| relative to max|A| within tol.
bool is_hermitian(const DenseMatrix& A, double tol = 1e-12);

// Dense Hermitian positive-definite solve (pivoted LDLT plus one refinement
// step). Throws std::invalid_argument on a non-Hermitian input and
// std::runtime_error when the factorization exposes a non-positive pivot.
DenseVec dense_solve(const DenseMatrix& A, const DenseVec& b);

// (min, max) eigenvalue of a dense Hermitian matrix.
std::pair<double, double> extreme_eigs(const DenseMatrix& A);

// Unitary DFT matrix F_n, entries (1/sqrt n) e^{-2 pi i j k / n}.
DenseMatrix fourier_matrix(std::size_t n);

// max-abs deviation in the Fourier/cutting commutation identity
//   F_n^H Z_{n,g} = (1/sqrt g) [I; I; ...; I] F_{n/g}^H        (g | n)
double verify_fourier_cutting(std::size_t n, std::size_t g);

// max-abs deviation between the dense Galerkin triple product
// (P Z)^H A (P Z) and the synthesized coarse operator, for either kind.
double verify_galerkin(MatrixKind kind, const TrigPoly& f, const TrigPoly& p,
                       std::size_t g, std::size_t n);
// Same for an explicit Toeplitz operator (dense symbols).
double verify_galerkin_toeplitz(const ToeplitzOp& A, const TrigPoly& p,
                                std::size_t g);

// Approximation-property witness: smallest eigenvalue of
//   (gamma/a0) C_n(f) - W_n,  W_n = I - Q Q^H,  Q = orthonormal basis of
// range(C_n(p) Z). The inequality holds iff min_eig >= 0 (up to roundoff).
// rank_ok reports whether P Z had full column rank (it loses rank exactly when
// the orbit-sum condition fails on the grid).
struct ApproxCheck {
  bool rank_ok = false;
  std::size_t rank = 0;
  double min_eig = 0.0;
};
ApproxCheck verify_approx_inequality(const TrigPoly& f, const TrigPoly& p,
                                     std::size_t g, std::size_t n,
                                     double gamma);

// Dense two-grid error propagator  V^{nu_post} (I - P (P^H A P)^+ P^H A)
// with P the n x k prolongation matrix and V the dense smoother iteration
// matrix. Pseudo-inversion tolerates singular coarse operators.
DenseMatrix dense_tgm_iteration(const DenseMatrix& A, const DenseMatrix& P,
                                const DenseMatrix& V, int nu_post);

// ||A^{1/2} M A^{+1/2}||_2: the operator norm of M in the A-(semi)norm.
double a_seminorm(const DenseMatrix& A, const DenseMatrix& M);

// Moore-Penrose pseudo-inverse of a Hermitian matrix (eigen cutoff
// 1e-12 * max|lambda|).
DenseMatrix hermitian_pinv(const DenseMatrix& A);

}  // namespace gmg::oracle
