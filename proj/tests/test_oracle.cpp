#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "gmg/oracle.hpp"

using namespace gmg;
using oracle::DenseVec;

namespace {

constexpr double pi = std::numbers::pi;

DenseMatrix hpd_example(std::size_t n) {
  return CirculantOp(TrigPoly(1, {cplx(1.0), cplx(4.0), cplx(1.0)}), n).dense();
}

}  // namespace

TEST_CASE("hermitian detection") {
  DenseMatrix A = hpd_example(6);
  CHECK(oracle::is_hermitian(A));
  A(1, 2) += cplx(0.0, 1e-3);
  CHECK_FALSE(oracle::is_hermitian(A));
}

TEST_CASE("dense positive-definite solve") {
  std::mt19937_64 eng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const DenseMatrix A = hpd_example(9);
  DenseVec x(9);
  for (int i = 0; i < 9; ++i) x[i] = cplx(u(eng), u(eng));
  const DenseVec b = A * x;
  const DenseVec got = oracle::dense_solve(A, b);
  CHECK((got - x).cwiseAbs().maxCoeff() < 1e-11);

  DenseMatrix skew = A;
  skew(0, 1) += 0.5;
  CHECK_THROWS_AS(oracle::dense_solve(skew, b), std::invalid_argument);
  CHECK_THROWS_AS(oracle::dense_solve(-A, b), std::runtime_error);
}

TEST_CASE("extreme eigenvalues") {
  DenseMatrix D = DenseMatrix::Zero(3, 3);
  D(0, 0) = 1.0;
  D(1, 1) = 2.0;
  D(2, 2) = 3.0;
  const auto [lo, hi] = oracle::extreme_eigs(D);
  CHECK(lo == doctest::Approx(1.0));
  CHECK(hi == doctest::Approx(3.0));

  const CirculantOp A(TrigPoly::cosine_factor(0.0), 3);
  const auto [alo, ahi] = oracle::extreme_eigs(A.dense());
  CHECK(std::abs(alo) < 1e-12);
  CHECK(ahi == doctest::Approx(3.0));
}

TEST_CASE("fourier matrix is unitary and symmetric") {
  const DenseMatrix F = oracle::fourier_matrix(16);
  const DenseMatrix I = DenseMatrix::Identity(16, 16);
  CHECK((F.adjoint() * F - I).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((F - F.transpose()).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("fourier cutting commutation") {
  for (auto [n, g] : std::vector<std::pair<std::size_t, std::size_t>>{
           {6, 2}, {9, 3}, {12, 2}, {12, 3}, {27, 3}, {81, 3}}) {
    INFO("n = ", n, ", g = ", g);
    CHECK(oracle::verify_fourier_cutting(n, g) < 1e-12);
  }
  CHECK_THROWS_AS(oracle::verify_fourier_cutting(10, 3), std::invalid_argument);
  CHECK_THROWS_AS(oracle::verify_fourier_cutting(9, 1), std::invalid_argument);
}

TEST_CASE("synthesized galerkin operators match the dense triple product") {
  const TrigPoly low = TrigPoly::cosine_factor(0.0);
  const TrigPoly p1 = projector_symbol({make_zero(0.0, 2)}, 3);
  CHECK(oracle::verify_galerkin(MatrixKind::circulant, low, p1, 3, 27) < 1e-10);

  const TrigPoly pair = low * TrigPoly::cosine_factor(pi);
  const TrigPoly p2 =
      projector_symbol({make_zero(0.0, 2), make_zero(pi, 2)}, 3);
  CHECK(oracle::verify_galerkin(MatrixKind::circulant, pair, p2, 3, 27) < 1e-10);
  CHECK(oracle::verify_galerkin(MatrixKind::toeplitz, pair, p2, 3, 78) < 1e-10);

  // Arbitrary banded coefficient rule, same decimation table.
  const auto rule = [](std::int64_t k) -> cplx {
    if (std::abs(k) > 2) return cplx(0.0);
    return k == 0 ? cplx(5.0) : cplx(-1.0 / static_cast<double>(k), 0.4);
  };
  const ToeplitzOp T = ToeplitzOp::from_rule(rule, 60);
  CHECK(oracle::verify_galerkin_toeplitz(T, p1, 3) < 1e-10);
}

TEST_CASE("approximation-property witness") {
  const TrigPoly f = TrigPoly::cosine_factor(0.0);
  const std::vector<SymbolZero> zeros = {make_zero(0.0, 2)};
  const TrigPoly p = projector_symbol(zeros, 3);
  const TgmBound bound = tgm_bound(f, zeros, p, 3, 0.25);
  REQUIRE(bound.defined);

  const oracle::ApproxCheck ok =
      oracle::verify_approx_inequality(f, p, 3, 27, bound.gamma);
  CHECK(ok.rank_ok);
  CHECK(ok.rank == 9);
  CHECK(ok.min_eig >= -1e-8);

  // gamma far below the true constant must flip the sign of the witness.
  const oracle::ApproxCheck bad =
      oracle::verify_approx_inequality(f, p, 3, 27, 1e-6);
  CHECK(bad.min_eig < 0.0);

  // Degenerate g = 2 pairing loses column rank on the grid.
  const TrigPoly fp = f * TrigPoly::cosine_factor(pi);
  const TrigPoly p2 =
      projector_symbol({make_zero(0.0, 2), make_zero(pi, 2)}, 2);
  const oracle::ApproxCheck degen =
      oracle::verify_approx_inequality(fp, p2, 2, 16, 10.0);
  CHECK_FALSE(degen.rank_ok);
}

TEST_CASE("dense two-grid propagator in the energy norm") {
  const TrigPoly f = TrigPoly::cosine_factor(0.0);
  const std::vector<SymbolZero> zeros = {make_zero(0.0, 2)};
  const TrigPoly p = projector_symbol(zeros, 3);
  const TgmBound bound = tgm_bound(f, zeros, p, 3, 0.25);
  REQUIRE(bound.defined);

  for (std::size_t n : {27u, 81u}) {
    const DenseMatrix A = CirculantOp(f, n).dense();
    const DenseMatrix Pt =
        CirculantOp(p, n).dense() * CuttingOp::circulant(n, 3).dense();
    const DenseMatrix I = DenseMatrix::Identity(n, n);

    // Exact coarse correction without smoothing: an A-orthogonal projector.
    const DenseMatrix cgc = oracle::dense_tgm_iteration(A, Pt, I, 0);
    CHECK(oracle::a_seminorm(A, cgc) == doctest::Approx(1.0).epsilon(1e-8));

    const DenseMatrix V = I - 0.25 * A;
    const DenseMatrix tgm = oracle::dense_tgm_iteration(A, Pt, V, 1);
    const double norm = oracle::a_seminorm(A, tgm);
    INFO("n = ", n);
    CHECK(norm < 1.0);
    CHECK(norm <= bound.rho + 1e-8);
  }
}

TEST_CASE("a-seminorm and pseudo-inverse basics") {
  DenseMatrix M = DenseMatrix::Zero(2, 2);
  M(0, 0) = 0.5;
  M(1, 1) = 2.0;
  CHECK(oracle::a_seminorm(DenseMatrix::Identity(2, 2), M) ==
        doctest::Approx(2.0));

  DenseMatrix D = DenseMatrix::Zero(3, 3);
  D(0, 0) = 2.0;
  D(2, 2) = 5.0;
  const DenseMatrix Dp = oracle::hermitian_pinv(D);
  CHECK(std::abs(Dp(0, 0) - cplx(0.5)) < 1e-13);
  CHECK(std::abs(Dp(1, 1)) < 1e-13);
  CHECK(std::abs(Dp(2, 2) - cplx(0.2)) < 1e-13);

  const DenseMatrix A = CirculantOp(TrigPoly::cosine_factor(0.0), 27).dense();
  const DenseMatrix Ap = oracle::hermitian_pinv(A);
  CHECK((A * Ap * A - A).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((Ap * A * Ap - Ap).cwiseAbs().maxCoeff() < 1e-10);
}
