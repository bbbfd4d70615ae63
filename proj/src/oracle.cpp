#include "gmg/oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gmg::oracle {

bool is_hermitian(const DenseMatrix& A, double tol) {
  if (A.rows() != A.cols()) return false;
  const double scale = A.cwiseAbs().maxCoeff();
  return (A - A.adjoint()).cwiseAbs().maxCoeff() <= tol * std::max(scale, 1.0);
}

DenseVec dense_solve(const DenseMatrix& A, const DenseVec& b) {
  if (!is_hermitian(A))
    throw std::invalid_argument("dense_solve: matrix is not Hermitian");
  Eigen::LDLT<DenseMatrix> fac(A);
  if (fac.info() != Eigen::Success)
    throw std::runtime_error("dense_solve: factorization failed");
  if (fac.vectorD().real().minCoeff() <= 0.0)
    throw std::runtime_error("dense_solve: matrix is not positive definite");
  DenseVec x = fac.solve(b);
  x += fac.solve(b - A * x);  // one refinement step
  return x;
}

std::pair<double, double> extreme_eigs(const DenseMatrix& A) {
  if (!is_hermitian(A))
    throw std::invalid_argument("extreme_eigs: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(A, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("extreme_eigs: eigen decomposition failed");
  const auto& ev = es.eigenvalues();
  return {ev.minCoeff(), ev.maxCoeff()};
}

DenseMatrix fourier_matrix(std::size_t n) {
  DenseMatrix F(n, n);
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      // exact reduction of j*k mod n keeps the angles clean for large n
      const std::size_t t = (j * k) % n;
      F(j, k) = s * std::polar(1.0, -two_pi * static_cast<double>(t) /
                                        static_cast<double>(n));
    }
  return F;
}

double verify_fourier_cutting(std::size_t n, std::size_t g) {
  if (g < 2 || n % g != 0)
    throw std::invalid_argument("verify_fourier_cutting: need g >= 2 and g | n");
  const std::size_t k = n / g;
  const DenseMatrix Fn = fourier_matrix(n);
  const DenseMatrix Fk = fourier_matrix(k);
  const DenseMatrix Z = CuttingOp::circulant(n, g).dense();
  DenseMatrix stacked(n, k);  // [I; I; ...; I] * Fk^H
  const DenseMatrix FkH = Fk.adjoint();
  for (std::size_t b = 0; b < g; ++b)
    stacked.block(b * k, 0, k, k) = FkH;
  const DenseMatrix lhs = Fn.adjoint() * Z;
  const DenseMatrix rhs = stacked / std::sqrt(static_cast<double>(g));
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

double verify_galerkin(MatrixKind kind, const TrigPoly& f, const TrigPoly& p,
                       std::size_t g, std::size_t n) {
  if (kind == MatrixKind::circulant) {
    const CirculantOp A(f, n);
    const DenseMatrix PZ =
        CirculantOp(p, n).dense() * CuttingOp::circulant(n, g).dense();
    const DenseMatrix triple = PZ.adjoint() * A.dense() * PZ;
    auto [coarse, fhat] = galerkin_coarse(A, p, g);
    return (triple - coarse.dense()).cwiseAbs().maxCoeff();
  }
  return verify_galerkin_toeplitz(ToeplitzOp::from_symbol(f, n), p, g);
}

double verify_galerkin_toeplitz(const ToeplitzOp& A, const TrigPoly& p,
                                std::size_t g) {
  const std::size_t n = A.size();
  const CuttingOp cut =
      CuttingOp::toeplitz(n, g, static_cast<std::size_t>(p.degree()));
  const DenseMatrix PZ = ToeplitzOp::from_symbol(p, n).dense() * cut.dense();
  const DenseMatrix triple = PZ.adjoint() * A.dense() * PZ;
  const ToeplitzOp coarse = galerkin_coarse(A, p, g);
  return (triple - coarse.dense()).cwiseAbs().maxCoeff();
}

ApproxCheck verify_approx_inequality(const TrigPoly& f, const TrigPoly& p,
                                     std::size_t g, std::size_t n,
                                     double gamma) {
  ApproxCheck out;
  const CirculantOp A(f, n);
  const DenseMatrix PZ =
      CirculantOp(p, n).dense() * CuttingOp::circulant(n, g).dense();
  const std::size_t k = n / g;

  Eigen::ColPivHouseholderQR<DenseMatrix> rankqr(PZ);
  rankqr.setThreshold(1e-10);
  out.rank = static_cast<std::size_t>(rankqr.rank());
  out.rank_ok = out.rank == k;
  if (!out.rank_ok) {
    out.min_eig = std::numeric_limits<double>::quiet_NaN();
    return out;
  }

  Eigen::HouseholderQR<DenseMatrix> qr(PZ);
  const DenseMatrix Q =
      qr.householderQ() * DenseMatrix::Identity(n, static_cast<Eigen::Index>(k));
  const DenseMatrix W = DenseMatrix::Identity(n, n) - Q * Q.adjoint();
  const double a0 = f.mean_coefficient();
  DenseMatrix M = (gamma / a0) * A.dense() - W;
  M = 0.5 * (M + M.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(M, Eigen::EigenvaluesOnly);
  out.min_eig = es.eigenvalues().minCoeff();
  return out;
}

DenseMatrix hermitian_pinv(const DenseMatrix& A) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(A);
  const auto& ev = es.eigenvalues();
  const double cutoff = 1e-12 * std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  Eigen::VectorXd inv(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    inv[i] = std::abs(ev[i]) <= cutoff ? 0.0 : 1.0 / ev[i];
  return es.eigenvectors() * inv.asDiagonal() *
         es.eigenvectors().adjoint();
}

DenseMatrix dense_tgm_iteration(const DenseMatrix& A, const DenseMatrix& P,
                                const DenseMatrix& V, int nu_post) {
  const DenseMatrix Ac = P.adjoint() * A * P;
  const DenseMatrix cgc =
      DenseMatrix::Identity(A.rows(), A.cols()) -
      P * hermitian_pinv(Ac) * P.adjoint() * A;
  DenseMatrix M = cgc;
  for (int s = 0; s < nu_post; ++s) M = V * M;
  return M;
}

double a_seminorm(const DenseMatrix& A, const DenseMatrix& M) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(A);
  const auto& ev = es.eigenvalues();
  const double cutoff = 1e-12 * std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  Eigen::VectorXd sq(ev.size()), isq(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double lam = std::max(ev[i], 0.0);
    sq[i] = std::sqrt(lam);
    isq[i] = lam <= cutoff ? 0.0 : 1.0 / std::sqrt(lam);
  }
  const DenseMatrix U = es.eigenvectors();
  const DenseMatrix S = U * sq.asDiagonal() * U.adjoint();
  const DenseMatrix Sp = U * isq.asDiagonal() * U.adjoint();
  const DenseMatrix G = S * M * Sp;
  Eigen::JacobiSVD<DenseMatrix> svd(G);
  return svd.singularValues().maxCoeff();
}

}  // namespace gmg::oracle
