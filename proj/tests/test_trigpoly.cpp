#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "gmg/trigpoly.hpp"

using namespace gmg;

namespace {

constexpr double pi = std::numbers::pi;

TrigPoly random_poly(std::mt19937_64& eng, int degree, bool real_symbol) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> c(2 * degree + 1);
  for (int j = 0; j <= degree; ++j) {
    const cplx a(u(eng), j == 0 && real_symbol ? 0.0 : u(eng));
    c[degree + j] = a;
    c[degree - j] = real_symbol ? std::conj(a) : cplx(u(eng), u(eng));
  }
  return TrigPoly(degree, c);
}

}  // namespace

TEST_CASE("band polynomial basics") {
  const TrigPoly f(1, {cplx(-1.0), cplx(2.0), cplx(-1.0)});  // 2 - 2cos x
  CHECK(f.degree() == 1);
  CHECK(f.real_valued());
  CHECK(f.coeff(0) == cplx(2.0));
  CHECK(f.coeff(-1) == cplx(-1.0));
  CHECK(f.coeff(5) == cplx(0.0));
  CHECK(f.eval_real(0.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(f.eval_real(pi) == doctest::Approx(4.0));
  CHECK(f.eval_real(pi / 2) == doctest::Approx(2.0));
  CHECK(f.sup_norm() == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(f.mean_coefficient() == doctest::Approx(2.0));
  CHECK(f.coeff_l1() == doctest::Approx(4.0));
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(TrigPoly(2, {cplx(1.0), cplx(2.0), cplx(3.0)}),
                  std::invalid_argument);
  const TrigPoly z;
  CHECK(z.degree() == 0);
  CHECK(z.eval(1.3) == cplx(0.0));
  CHECK(TrigPoly::constant(3.5).eval_real(0.7) == doctest::Approx(3.5));
}

TEST_CASE("cosine factor") {
  for (double xhat : {0.0, pi / 3, pi, 4.2}) {
    const TrigPoly f = TrigPoly::cosine_factor(xhat);
    CHECK(f.degree() == 1);
    CHECK(f.real_valued());
    CHECK(f.coeff(0) == cplx(2.0));
    const cplx want = -std::exp(cplx(0.0, -xhat));
    CHECK(std::abs(f.coeff(1) - want) < 1e-15);
    CHECK(std::abs(f.eval(xhat)) < 1e-14);
    CHECK(f.eval_real(xhat + pi) == doctest::Approx(4.0));
  }
}

TEST_CASE("real-valuedness detection") {
  // 2 sin x = i e^{-ix} - i e^{ix}: Hermitian coefficients, real values.
  const TrigPoly s(1, {cplx(0.0, 1.0), cplx(0.0), cplx(0.0, -1.0)});
  CHECK(s.real_valued());
  CHECK(s.eval_real(pi / 2) == doctest::Approx(2.0));
  // Same top coefficient without the mirrored conjugate: complex-valued.
  const TrigPoly t(1, {cplx(0.0, 1.0), cplx(0.0), cplx(0.0, 1.0)});
  CHECK_FALSE(t.real_valued());
}

TEST_CASE("product evaluates pointwise") {
  std::mt19937_64 eng(7);
  for (int trial = 0; trial < 8; ++trial) {
    const TrigPoly a = random_poly(eng, 3 + trial % 6, trial % 2 == 0);
    const TrigPoly b = random_poly(eng, 1 + trial % 8, trial % 3 == 0);
    const TrigPoly ab = a * b;
    CHECK(ab.degree() == a.degree() + b.degree());
    for (int i = 0; i < 128; ++i) {
      const double x = two_pi * i / 128.0;
      CHECK(std::abs(ab.eval(x) - a.eval(x) * b.eval(x)) < 1e-12);
    }
  }
}

TEST_CASE("conjugate and modulus squared") {
  std::mt19937_64 eng(11);
  const TrigPoly a = random_poly(eng, 5, false);
  const TrigPoly ac = a.conjugate();
  const TrigPoly m = a.mod_square();
  CHECK(m.real_valued());
  for (int i = 0; i < 64; ++i) {
    const double x = two_pi * i / 64.0;
    CHECK(std::abs(ac.eval(x) - std::conj(a.eval(x))) < 1e-13);
    CHECK(m.eval_real(x) == doctest::Approx(std::norm(a.eval(x))).epsilon(1e-11));
  }
}

TEST_CASE("powers") {
  const TrigPoly f = TrigPoly::cosine_factor(0.0);
  CHECK(f.pow(0).degree() == 0);
  CHECK(f.pow(0).eval_real(2.1) == doctest::Approx(1.0));
  const TrigPoly f3 = f.pow(3);
  CHECK(f3.degree() == 3);
  for (int i = 0; i < 32; ++i) {
    const double x = two_pi * i / 32.0;
    CHECK(f3.eval_real(x) ==
          doctest::Approx(std::pow(f.eval_real(x), 3)).epsilon(1e-11));
  }
  CHECK_THROWS_AS(f.pow(-1), std::invalid_argument);
}

TEST_CASE("zero descriptors and point sets") {
  const SymbolZero z = make_zero(-pi / 3, 4);
  CHECK(z.location == doctest::Approx(2 * pi - pi / 3));
  CHECK(z.order == 4);
  CHECK(z.beta == 2);
  CHECK_THROWS_AS(make_zero(0.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(make_zero(0.0, 0), std::invalid_argument);

  CHECK_THROWS_AS(PointSet({0.0, two_pi}), std::invalid_argument);
  const PointSet ps({0.0, pi, 1.0});
  CHECK(ps.points.size() == 3);
}

TEST_CASE("corner and mirror sets") {
  const auto [omega, mirror] = omega_set(pi, 3);
  REQUIRE(omega.points.size() == 3);
  REQUIRE(mirror.points.size() == 2);
  CHECK(omega.points[0] == doctest::Approx(pi));
  CHECK(omega.points[1] == doctest::Approx(5 * pi / 3));
  CHECK(omega.points[2] == doctest::Approx(pi / 3));
  CHECK(mirror.points[0] == doctest::Approx(5 * pi / 3));
  CHECK(mirror.points[1] == doctest::Approx(pi / 3));
  CHECK_THROWS_AS(omega_set(0.0, 1), std::invalid_argument);
}

TEST_CASE("canonical projector for one order-2 zero at the origin") {
  const TrigPoly p = projector_symbol({make_zero(0.0, 2)}, 3);
  CHECK(p.degree() == 2);
  CHECK(p.real_valued());
  // (2-2cos(x-2pi/3))(2-2cos(x-4pi/3)) = 3 + 4cos x + 2cos 2x.
  CHECK(std::abs(p.coeff(0) - cplx(3.0)) < 1e-13);
  CHECK(std::abs(p.coeff(1) - cplx(2.0)) < 1e-13);
  CHECK(std::abs(p.coeff(2) - cplx(1.0)) < 1e-13);
  CHECK(p.eval_real(0.0) == doctest::Approx(9.0));
  CHECK(std::abs(p.eval_real(2 * pi / 3)) < 1e-12);
  CHECK(std::abs(p.eval_real(4 * pi / 3)) < 1e-12);
}

TEST_CASE("projector exponents follow the zero order") {
  const TrigPoly p = projector_symbol({make_zero(0.0, 4)}, 3);
  CHECK(p.degree() == 4);
  CHECK(p.eval_real(0.0) == doctest::Approx(81.0));
  CHECK(std::abs(p.eval_real(2 * pi / 3)) < 1e-11);
}

TEST_CASE("projector for the zero pair 0 and pi") {
  const TrigPoly p =
      projector_symbol({make_zero(0.0, 2), make_zero(pi, 2)}, 3);
  CHECK(p.degree() == 4);
  const std::vector<double> want = {1, 0, 2, 0, 3, 0, 2, 0, 1};
  for (int j = -4; j <= 4; ++j)
    CHECK(std::abs(p.coeff(j) - cplx(want[j + 4])) < 1e-12);
  for (double m : {pi / 3, 2 * pi / 3, 4 * pi / 3, 5 * pi / 3})
    CHECK(std::abs(p.eval_real(m)) < 1e-11);
  CHECK_THROWS_AS(projector_symbol({}, 3), std::invalid_argument);
}

TEST_CASE("coarse symbol decimation identity") {
  std::mt19937_64 eng(23);
  for (std::size_t g : {2u, 3u, 4u}) {
    for (int trial = 0; trial < 4; ++trial) {
      const TrigPoly f = random_poly(eng, 2 + trial, true);
      const TrigPoly p = random_poly(eng, 1 + trial % 3, true);
      const TrigPoly q = f * p.mod_square();
      const TrigPoly fhat = coarse_symbol(f, p, static_cast<int>(g));
      CHECK(fhat.degree() == q.degree() / static_cast<int>(g));
      const double tol = 1e-10 * (1.0 + q.coeff_l1());
      for (int i = 0; i < 64; ++i) {
        const double u = two_pi * i / 64.0;
        cplx orbit = 0.0;
        for (std::size_t k = 0; k < g; ++k)
          orbit += q.eval(u + two_pi * static_cast<double>(k) / g);
        CHECK(std::abs(static_cast<double>(g) * fhat.eval(g * u) - orbit) < tol);
      }
    }
  }
}

TEST_CASE("coarse symbol relocates the zero") {
  // Zero at pi/3 moves to g*pi/3 = pi on the coarse grid.
  const TrigPoly f = TrigPoly::cosine_factor(pi / 3);
  const std::vector<SymbolZero> zeros = {make_zero(pi / 3, 2)};
  const TrigPoly p = projector_symbol(zeros, 3);
  const TrigPoly fhat = coarse_symbol(f, p, 3);
  CHECK(fhat.real_valued());
  CHECK(std::abs(fhat.eval_real(pi)) < 1e-11 * fhat.coeff_l1());
  CHECK(fhat.eval_real(0.0) > 1e-2);
  CHECK(fhat.eval_real(pi / 2) > 1e-2);
}

TEST_CASE("zero relocation map") {
  const auto moved = relocate_zeros({make_zero(pi / 3, 2)}, 3);
  REQUIRE(moved.size() == 1);
  CHECK(moved[0].location == doctest::Approx(pi));
  CHECK(moved[0].order == 2);

  // 2pi/3 and 4pi/3 both land on 0; the larger order survives the merge.
  const auto merged =
      relocate_zeros({make_zero(2 * pi / 3, 2), make_zero(4 * pi / 3, 4)}, 3);
  REQUIRE(merged.size() == 1);
  CHECK(merged[0].location == doctest::Approx(0.0));
  CHECK(merged[0].order == 4);
}

TEST_CASE("grid-transfer conditions accept the canonical pairing") {
  const TrigPoly f = TrigPoly::cosine_factor(0.0);
  const std::vector<SymbolZero> zeros = {make_zero(0.0, 2)};
  const TrigPoly p = projector_symbol(zeros, 3);
  const ConditionReport rep = check_tgm_conditions(f, zeros, p, 3);
  CHECK(rep.all_ok());
  REQUIRE(rep.limit_ok.size() == 1);
  CHECK(rep.limit_ok[0]);
  CHECK(rep.orbit_sum_ok);
  CHECK(rep.orbit_sum_min > 0.0);
  CHECK(rep.violations.empty());

  const ConditionReport fn_rep = check_tgm_conditions_fn(
      [&](double x) { return f.eval_real(x); }, f.coeff_l1(), zeros, p, 3);
  CHECK(fn_rep.all_ok());
}

TEST_CASE("limit condition rejects a flat transfer symbol") {
  const TrigPoly f = TrigPoly::cosine_factor(0.0);
  const std::vector<SymbolZero> zeros = {make_zero(0.0, 2)};
  const ConditionReport rep =
      check_tgm_conditions(f, zeros, TrigPoly::constant(1.0), 3);
  CHECK_FALSE(rep.all_ok());
  REQUIRE(rep.limit_ok.size() == 1);
  CHECK_FALSE(rep.limit_ok[0]);
  CHECK(rep.orbit_sum_ok);  // constant 1 keeps every orbit sum at 3
  CHECK_FALSE(rep.violations.empty());
}

TEST_CASE("orbit sum degenerates for g = 2 on the 0/pi zero pair") {
  const TrigPoly f =
      TrigPoly::cosine_factor(0.0) * TrigPoly::cosine_factor(pi);
  const std::vector<SymbolZero> zeros = {make_zero(0.0, 2), make_zero(pi, 2)};
  const TrigPoly p = projector_symbol(zeros, 2);
  // Each zero's only mirror is the other zero, so p vanishes on the whole
  // orbit {0, pi} and the sum of squares has a zero.
  const ConditionReport rep = check_tgm_conditions(f, zeros, p, 2);
  CHECK_FALSE(rep.orbit_sum_ok);
  CHECK_FALSE(rep.all_ok());
  // The same pairing is fine for g = 3.
  const TrigPoly p3 = projector_symbol(zeros, 3);
  CHECK(check_tgm_conditions(f, zeros, p3, 3).all_ok());
}

TEST_CASE("numeric zero-order fit") {
  const TrigPoly f = TrigPoly::cosine_factor(0.0);
  const auto f1 = [&](double x) { return f.eval_real(x); };
  const auto f2 = [&](double x) { return std::pow(f.eval_real(x), 2); };
  CHECK(fit_zero_order(f1, 0.0, f.coeff_l1()) == doctest::Approx(2.0).epsilon(0.05));
  CHECK(fit_zero_order(f2, 0.0, 16.0) == doctest::Approx(4.0).epsilon(0.05));

  CHECK_NOTHROW(verify_zero_claims(f1, f.sup_norm(), f.coeff_l1(),
                                   {make_zero(0.0, 2)}));
  CHECK_THROWS_AS(verify_zero_claims(f1, f.sup_norm(), f.coeff_l1(),
                                     {make_zero(0.0, 4)}),
                  std::runtime_error);
  CHECK_THROWS_AS(verify_zero_claims(f1, f.sup_norm(), f.coeff_l1(),
                                     {make_zero(1.0, 2)}),
                  std::runtime_error);
}

TEST_CASE("sup norm of a plain evaluator") {
  CHECK(sup_norm_fn([](double x) { return std::sin(x); }) ==
        doctest::Approx(1.0).epsilon(1e-8));
  CHECK(sup_norm_fn([](double x) { return x * (two_pi - x); }) ==
        doctest::Approx(pi * pi).epsilon(1e-8));
}
