#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "gmg/structured.hpp"

namespace gmg {

enum class MatrixKind { circulant, toeplitz };

enum class SmootherKind { richardson, jacobi, cg };

// Per-level smoother recipe. The damping parameter is resolved per level:
//   richardson: omega_i = scale / sup|f_i|        (requires 0 < scale < 2)
//   jacobi:     omega_i = scale * a0_i / sup|f_i| (requires 0 < scale <= 2)
//   cg:         scale unused; fresh Krylov state on every smoothing call
struct SmootherRule {
  SmootherKind kind = SmootherKind::richardson;
  double scale = 1.0;
};
SmootherRule make_richardson_rule(double scale);
SmootherRule make_jacobi_rule(double scale);
SmootherRule make_cg_rule();

// Resolved smoother at one level.
struct SmootherSpec {
  SmootherKind kind = SmootherKind::richardson;
  double omega = 0.0;  // absolute damping, already divided by sup|f_i|
};

// nu steps of the given smoother applied to A x = b in place. a0 is the
// constant diagonal entry of A (Jacobi scaling).
void smooth(const StructuredOp& A, Vec& x, const Vec& b,
            const SmootherSpec& spec, int nu, double a0);

struct CycleSpec {
  int theta = 1;  // recursive coarse solves per visit: 1 = V-cycle, 2 = W-cycle
  int nu_pre = 1;
  int nu_post = 1;
  std::size_t coarsest_threshold = 27;  // consumed by hierarchy construction
};

// Level-0 symbol: either a trigonometric polynomial or a general (dense)
// Toeplitz symbol given by a coefficient rule plus an evaluator.
struct SymbolSpec {
  bool is_polynomial = true;
  TrigPoly poly;
  std::function<cplx(std::int64_t)> coeff_rule;  // dense kind only
  std::function<double(double)> eval;            // dense kind only
  static SymbolSpec polynomial(TrigPoly f);
  static SymbolSpec dense(std::function<cplx(std::int64_t)> rule,
                          std::function<double(double)> eval);
};

struct HierarchyConfig {
  MatrixKind kind = MatrixKind::circulant;
  std::size_t g = 3;
  std::size_t n0 = 0;
  std::size_t coarsest_threshold = 27;
  std::size_t max_levels = SIZE_MAX;  // 2 = two-grid
  SymbolSpec f0;
  std::vector<SymbolZero> zeros;
  // When set, used as the grid-transfer symbol at every level instead of
  // projector_symbol of the level's zeros.
  std::optional<TrigPoly> fixed_projector;
  SmootherRule pre = make_richardson_rule(1.0);
  SmootherRule post = make_cg_rule();
};

struct Level {
  std::size_t n = 0;
  StructuredOp A;
  bool f_is_polynomial = true;
  TrigPoly f_poly;                      // valid when f_is_polynomial
  std::function<double(double)> f_eval; // always valid
  std::vector<SymbolZero> zeros;
  double sup_f = 0.0;
  double a0 = 0.0;
  SmootherSpec pre, post;

  // Transfer toward the next (coarser) level; absent on the coarsest.
  std::optional<TrigPoly> p;
  std::optional<CuttingOp> zcut;
  std::optional<StructuredOp> P;  // C_n(p) / T_n(p) on this level's grid
  ConditionReport conditions;    // filled when p is present

  // Coarsest-level direct solver (Toeplitz kind): dense factorization, built
  // once at hierarchy construction.
  std::shared_ptr<const Eigen::LDLT<DenseMatrix>> dense_factor;

  Level() : A(CirculantOp(TrigPoly::constant(1.0), 1)) {}
};

class Hierarchy {
 public:
  std::size_t num_levels() const { return levels_.size(); }
  const Level& level(std::size_t i) const { return levels_.at(i); }
  const std::vector<Level>& levels() const { return levels_; }
  MatrixKind kind() const { return kind_; }
  std::size_t g() const { return g_; }

  // Direct solve at the coarsest level.
  void coarsest_solve(const Vec& b, Vec& x) const;

 private:
  std::vector<Level> levels_;
  MatrixKind kind_ = MatrixKind::circulant;
  std::size_t g_ = 3;
  friend Hierarchy build_hierarchy(const HierarchyConfig&);
};

// Builds all levels down to coarsest_threshold (or max_levels), synthesizing
// projector symbols, cutting geometry, Galerkin coarse operators, relocated
// zeros, and per-level smoother damping. Verifies each level's claimed zeros
// and the grid-transfer admissibility conditions; throws std::runtime_error
// with a diagnostic naming the level and the violated condition otherwise.
Hierarchy build_hierarchy(const HierarchyConfig& cfg);

struct CycleStats {
  std::uint64_t work_units = 0;   // in units of one fine-row sweep (see below)
  std::uint64_t coarse_solves = 0;
};

// One multigrid cycle on level i, recursing theta times per coarse visit
// (theta = 1: V-cycle, theta = 2: W-cycle; a two-level hierarchy reduces to
// the two-grid method for every theta). Work accounting: n_i per smoothing
// step, n_i per restrict/prolong pair, n_coarsest per direct solve.
void mgm_cycle(const Hierarchy& h, std::size_t level, Vec& x, const Vec& b,
               const CycleSpec& cycle, CycleStats& stats);

struct SolveReport {
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> rel_residual_history;  // leading 1.0, then one per cycle
  double final_rel_residual = 0.0;
  std::uint64_t work_units = 0;
  std::uint64_t coarse_solves = 0;
  Vec solution;
};

// Full solve: cycles from initial guess x0 until ||r_q||/||r_0|| <= tol or
// max_iter cycles. The per-cycle stopping-test residual is not counted as
// work. A zero right-hand side with zero guess converges in 0 iterations.
SolveReport solve(const Hierarchy& h, const Vec& b, const CycleSpec& cycle,
                  double tol, std::size_t max_iter, const Vec& x0);
SolveReport solve(const Hierarchy& h, const Vec& b, const CycleSpec& cycle,
                  double tol, std::size_t max_iter);  // zero initial guess

// Two-grid convergence bound from the smoothing and approximation properties:
//   alpha_post = a0 * omega * (2 - omega * sup|f|)
//   gamma      = g*(g-1) * a0 * h * z
//     z = sup_x max_{y mirror of x} p^2(y)/f(x)  (x outside 1e-6 neighborhoods
//         of the zeros of f), h = 1 / min_x sum_{y in Omega_g(x)} p^2(y)
//   rho        = sqrt(1 - alpha_post/gamma)
struct TgmBound {
  bool defined = false;  // false when the admissibility conditions fail
  double alpha_post = 0.0;
  double gamma = 0.0;
  double rho = 0.0;
  std::string note;
};

TgmBound tgm_bound(const TrigPoly& f, const std::vector<SymbolZero>& zeros,
                   const TrigPoly& p, std::size_t g, double omega);
TgmBound tgm_bound_fn(const std::function<double(double)>& f, double a0,
                      double sup_f, double scale,
                      const std::vector<SymbolZero>& zeros, const TrigPoly& p,
                      std::size_t g, double omega);

// Cost model for one cycle, in units of c*n work at the finest level:
// theta < g gives the geometric-series bound g/(g-theta); theta = g makes the
// cycle cost O(n log n) instead (flagged). finite_per_n truncates the series
// at the given number of levels.
struct WorkModel {
  double asymptotic_per_n = 0.0;
  double finite_per_n = 0.0;
  bool nlogn = false;
};
WorkModel work_model(std::size_t g, int theta, std::size_t levels, double c);

}  // namespace gmg
