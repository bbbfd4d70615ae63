#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "gmg/common.hpp"

namespace gmg {

// Trigonometric polynomial f(x) = sum_{j=-c}^{c} a_j e^{i j x}.
// A polynomial is "real-valued" when its coefficients are Hermitian
// (a_{-j} = conj(a_j)); the flag is detected at construction and preserved by
// the algebra below.
class TrigPoly {
 public:
  TrigPoly();  // zero polynomial of degree 0
  TrigPoly(int degree, std::vector<cplx> coeffs);  // coeffs[j+degree] = a_j

  static TrigPoly constant(double c);
  // 2 - 2cos(x - xhat): the elementary nonnegative factor with an order-2 zero
  // at xhat.
  static TrigPoly cosine_factor(double xhat);

  int degree() const { return degree_; }
  cplx coeff(int j) const;  // 0 outside [-degree, degree]
  bool real_valued() const { return real_valued_; }

  cplx eval(double x) const;
  double eval_real(double x) const;  // real part; meaningful when real_valued()

  TrigPoly multiply(const TrigPoly& other) const;
  TrigPoly conjugate() const;   // coefficients of conj(f)
  TrigPoly mod_square() const;  // |f|^2, always real-valued
  TrigPoly pow(int e) const;    // e >= 0

  // max over [0, 2*pi) of |f|, via dense scan plus local golden-section refine.
  double sup_norm() const;
  // a_0; requires real_valued().
  double mean_coefficient() const;
  // sum_j |a_j|; scale used for evaluation-noise estimates.
  double coeff_l1() const;

 private:
  int degree_;
  std::vector<cplx> coeffs_;
  bool real_valued_;

  void detect_real();
};

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);

// A zero x0 of a symbol, of even order 2r; beta = ceil(order/2) = r is the
// exponent the canonical projector uses for the factors at the mirror points.
struct SymbolZero {
  double location = 0.0;  // in [0, 2*pi)
  int order = 2;
  int beta = 1;
};

// Validates (even order >= 2), wraps the location, fills beta.
SymbolZero make_zero(double location, int order);

// Finite set of angles, pairwise distinct modulo 2*pi (tolerance 1e-12).
struct PointSet {
  std::vector<double> points;
  explicit PointSet(std::vector<double> pts);
};

// Corner set Omega_g(x0) = {x0 + 2*pi*k/g mod 2*pi : k = 0..g-1} and the
// mirror set M_g(x0) = Omega_g(x0) \ {x0}, in that order.
std::pair<PointSet, PointSet> omega_set(double x0, int g);

// Canonical projector symbol: product over all zeros z and all mirror points
// xhat in M_g(z.location) of (2 - 2cos(x - xhat))^{z.beta}.
TrigPoly projector_symbol(const std::vector<SymbolZero>& zeros, int g);

// Coarse symbol fhat(x) with coefficients b_j = (f*|p|^2)_{g j}; the returned
// degree is floor(deg(f*|p|^2)/g).
TrigPoly coarse_symbol(const TrigPoly& f, const TrigPoly& p, int g);

// Zero motion under coarsening: x0 -> g*x0 mod 2*pi, orders preserved,
// coincident images merged (max order wins).
std::vector<SymbolZero> relocate_zeros(const std::vector<SymbolZero>& zeros, int g);

// Report of the two grid-transfer admissibility conditions:
//  - per zero, the limit condition: p^2(y)/f(x) stays bounded as x -> x0 for
//    every mirror image y of x;
//  - globally, min over x of sum_{y in Omega_g(x)} p^2(y) > 0.
struct ConditionReport {
  struct Violation {
    SymbolZero zero;
    double mirror_point = 0.0;  // limit point of the offending branch
    double measured = 0.0;      // last reliable ratio sample
  };
  std::vector<bool> limit_ok;  // one entry per zero
  double orbit_sum_min = 0.0;
  double orbit_sum_max = 0.0;
  bool orbit_sum_ok = false;
  std::vector<Violation> violations;

  bool all_ok() const;
};

ConditionReport check_tgm_conditions(const TrigPoly& f,
                                     const std::vector<SymbolZero>& zeros,
                                     const TrigPoly& p, int g);

// Evaluator-based variant for symbols that are not trigonometric polynomials.
// `scale` calibrates the evaluation-noise floor (coefficient l1 norm or
// sup-norm).
ConditionReport check_tgm_conditions_fn(const std::function<double(double)>& f,
                                        double scale,
                                        const std::vector<SymbolZero>& zeros,
                                        const TrigPoly& p, int g);

// Sup-norm of |fn| over [0, 2*pi) by dense scan + golden-section refinement.
double sup_norm_fn(const std::function<double(double)>& fn, int samples = 8192);

// Least-squares log-log slope of fn near x0 over deltas {1e-1, 1e-2, 1e-3};
// approximates the order of the zero. Samples below the noise floor
// (100*eps*scale) are skipped; returns NaN if fewer than two remain.
double fit_zero_order(const std::function<double(double)>& fn, double x0,
                      double scale);

// Checks that each claimed zero is an actual zero of fn (|fn(x0)| <= 1e-10*sup)
// with the claimed order (fitted slope within 0.2); throws std::runtime_error
// naming the offending zero otherwise.
void verify_zero_claims(const std::function<double(double)>& fn, double sup,
                        double scale, const std::vector<SymbolZero>& zeros);

}  // namespace gmg
