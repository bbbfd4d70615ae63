#include "gmg/multigrid.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace gmg {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

[[noreturn]] void level_error(std::size_t level, const std::string& what) {
  std::ostringstream msg;
  msg << "hierarchy construction failed at level " << level << ": " << what;
  throw std::runtime_error(msg.str());
}

void cg_steps(const StructuredOp& A, Vec& x, const Vec& b, int nu) {
  const std::size_t n = op_size(A);
  Vec r = op_apply(A, x);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
  double rr = 0.0;
  for (const cplx& z : r) rr += std::norm(z);
  if (rr == 0.0) return;
  Vec p = r, Ap(n);
  for (int s = 0; s < nu; ++s) {
    op_apply(A, p, Ap);
    const double pAp = dot(p, Ap).real();
    if (!(pAp > 0.0) || !std::isfinite(pAp)) break;  // left the positive cone
    const double alpha = rr / pAp;
    axpy(alpha, p, x);
    axpy(-alpha, Ap, r);
    double rr_new = 0.0;
    for (const cplx& z : r) rr_new += std::norm(z);
    if (rr_new == 0.0) break;
    const double beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
  }
}

}  // namespace

SmootherRule make_richardson_rule(double scale) {
  if (!(scale > 0.0) || !(scale < 2.0))
    throw std::invalid_argument(
        "richardson smoother: scale must lie in (0, 2) for admissibility");
  return {SmootherKind::richardson, scale};
}

SmootherRule make_jacobi_rule(double scale) {
  if (!(scale > 0.0) || !(scale <= 2.0))
    throw std::invalid_argument("jacobi smoother: scale must lie in (0, 2]");
  return {SmootherKind::jacobi, scale};
}

SmootherRule make_cg_rule() { return {SmootherKind::cg, 0.0}; }

void smooth(const StructuredOp& A, Vec& x, const Vec& b,
            const SmootherSpec& spec, int nu, double a0) {
  if (nu <= 0) return;
  if (spec.kind == SmootherKind::cg) {
    cg_steps(A, x, b, nu);
    return;
  }
  const std::size_t n = op_size(A);
  const double step =
      spec.kind == SmootherKind::richardson ? spec.omega : spec.omega / a0;
  Vec r(n);
  for (int s = 0; s < nu; ++s) {
    op_apply(A, x, r);
    for (std::size_t i = 0; i < n; ++i) x[i] += step * (b[i] - r[i]);
  }
}

SymbolSpec SymbolSpec::polynomial(TrigPoly f) {
  SymbolSpec s;
  s.is_polynomial = true;
  s.poly = std::move(f);
  return s;
}

SymbolSpec SymbolSpec::dense(std::function<cplx(std::int64_t)> rule,
                             std::function<double(double)> eval) {
  SymbolSpec s;
  s.is_polynomial = false;
  s.coeff_rule = std::move(rule);
  s.eval = std::move(eval);
  return s;
}

namespace {

SmootherSpec resolve_smoother(const SmootherRule& rule, double sup_f,
                              double a0) {
  SmootherSpec spec;
  spec.kind = rule.kind;
  switch (rule.kind) {
    case SmootherKind::richardson:
      spec.omega = rule.scale / sup_f;
      break;
    case SmootherKind::jacobi:
      spec.omega = rule.scale * a0 / sup_f;
      break;
    case SmootherKind::cg:
      spec.omega = 0.0;
      break;
  }
  return spec;
}

std::string describe_conditions(const ConditionReport& rep) {
  std::ostringstream msg;
  if (!rep.orbit_sum_ok)
    msg << "orbit-sum positivity fails (min " << rep.orbit_sum_min << "); ";
  for (const auto& v : rep.violations)
    msg << "mirror-limit condition fails for zero at x0=" << v.zero.location
        << " toward mirror point " << v.mirror_point << " (last ratio "
        << v.measured << "); ";
  return msg.str();
}

}  // namespace

void Hierarchy::coarsest_solve(const Vec& b, Vec& x) const {
  const Level& L = levels_.back();
  if (const auto* c = std::get_if<CirculantOp>(&L.A)) {
    c->solve(b, x);
    return;
  }
  Eigen::Map<const Eigen::VectorXcd> bv(b.data(), static_cast<Eigen::Index>(b.size()));
  Eigen::VectorXcd xv = L.dense_factor->solve(bv);
  x.assign(xv.data(), xv.data() + xv.size());
}

Hierarchy build_hierarchy(const HierarchyConfig& cfg) {
  if (cfg.n0 == 0) throw std::invalid_argument("build_hierarchy: n0 must be > 0");
  if (cfg.g < 2) throw std::invalid_argument("build_hierarchy: g must be >= 2");
  if (cfg.max_levels < 1)
    throw std::invalid_argument("build_hierarchy: need at least one level");
  if (cfg.kind == MatrixKind::circulant && !cfg.f0.is_polynomial)
    throw std::invalid_argument(
        "build_hierarchy: circulant hierarchies need a polynomial symbol");

  Hierarchy h;
  h.kind_ = cfg.kind;
  h.g_ = cfg.g;

  // Rolling level state.
  std::size_t n = cfg.n0;
  bool poly = cfg.f0.is_polynomial;
  TrigPoly f = cfg.f0.poly;
  std::function<double(double)> f_eval =
      poly ? std::function<double(double)>(
                 [fp = f](double x) { return fp.eval(x).real(); })
           : cfg.f0.eval;
  std::vector<SymbolZero> zeros = cfg.zeros;
  // Toeplitz levels carry the exact diagonal table forward via the operator.
  std::optional<ToeplitzOp> toep;
  std::function<cplx(std::int64_t)> rule = cfg.f0.coeff_rule;

  for (std::size_t li = 0;; ++li) {
    Level L;
    L.n = n;
    L.f_is_polynomial = poly;
    if (poly) L.f_poly = f;
    L.f_eval = f_eval;
    L.zeros = zeros;

    if (cfg.kind == MatrixKind::circulant) {
      if (!poly) level_error(li, "circulant level lost polynomial symbol");
      try {
        L.A = CirculantOp(f, n);
      } catch (const std::exception& e) {
        level_error(li, e.what());
      }
    } else {
      if (li == 0)
        toep = poly ? ToeplitzOp::from_symbol(f, n) : ToeplitzOp::from_rule(rule, n);
      // (coarse levels: toep is the Galerkin operator built below)
      L.A = *toep;
    }

    const double scale = poly ? f.coeff_l1() : 0.0;
    L.sup_f = sup_norm_fn(f_eval);
    const double noise_scale = poly ? scale : L.sup_f;
    if (cfg.kind == MatrixKind::circulant) {
      L.a0 = f.mean_coefficient();
    } else {
      L.a0 = std::get<ToeplitzOp>(L.A).coeff(0).real();
    }

    try {
      verify_zero_claims(f_eval, L.sup_f, noise_scale, zeros);
    } catch (const std::exception& e) {
      level_error(li, e.what());
    }

    L.pre = resolve_smoother(cfg.pre, L.sup_f, L.a0);
    L.post = resolve_smoother(cfg.post, L.sup_f, L.a0);

    const bool coarsen =
        h.levels_.size() + 1 < cfg.max_levels && n > cfg.coarsest_threshold;
    if (!coarsen) {
      if (cfg.kind == MatrixKind::toeplitz) {
        if (n > dense_guard)
          level_error(li, "coarsest level too large for a dense factorization");
        auto dense = std::get<ToeplitzOp>(L.A).dense();
        auto fac = std::make_shared<Eigen::LDLT<DenseMatrix>>(dense);
        if (fac->info() != Eigen::Success)
          level_error(li, "dense factorization of the coarsest level failed");
        L.dense_factor = std::move(fac);
      }
      h.levels_.push_back(std::move(L));
      break;
    }

    // Grid transfer.
    TrigPoly p = cfg.fixed_projector ? *cfg.fixed_projector
                                     : projector_symbol(zeros, static_cast<int>(cfg.g));
    if (!p.real_valued())
      level_error(li, "transfer symbol is not real-valued");
    const ConditionReport rep =
        check_tgm_conditions_fn(f_eval, noise_scale, zeros, p, static_cast<int>(cfg.g));
    if (!rep.all_ok()) level_error(li, describe_conditions(rep));
    L.conditions = rep;
    L.p = p;

    try {
      if (cfg.kind == MatrixKind::circulant) {
        L.zcut = CuttingOp::circulant(n, cfg.g);
        L.P = StructuredOp(CirculantOp(p, n));
      } else {
        L.zcut = CuttingOp::toeplitz(n, cfg.g, static_cast<std::size_t>(p.degree()));
        L.P = StructuredOp(ToeplitzOp::from_symbol(p, n));
      }
    } catch (const std::exception& e) {
      level_error(li, e.what());
    }

    // Galerkin coarse level.
    std::size_t next_n = 0;
    if (cfg.kind == MatrixKind::circulant) {
      auto [coarse, fhat] = galerkin_coarse(std::get<CirculantOp>(L.A), p, cfg.g);
      next_n = coarse.size();
      f = fhat;
    } else {
      ToeplitzOp coarse = galerkin_coarse(std::get<ToeplitzOp>(L.A), p, cfg.g);
      next_n = coarse.size();
      if (next_n < 1) level_error(li, "cutting produced an empty coarse level");
      toep = std::move(coarse);
      if (poly) f = coarse_symbol(f, p, static_cast<int>(cfg.g));
    }

    if (poly) {
      f_eval = [fp = f](double x) { return fp.eval(x).real(); };
    } else {
      // Exact recursive evaluation of the coarse symbol:
      // fhat(x) = (1/g) sum_{k} (f p^2)((x + 2 pi k)/g).
      f_eval = [parent = f_eval, p, g = cfg.g](double x) {
        double s = 0.0;
        for (std::size_t k = 0; k < g; ++k) {
          const double y = wrap_angle((x + two_pi * static_cast<double>(k)) /
                                      static_cast<double>(g));
          s += parent(y) * std::norm(p.eval(y));
        }
        return s / static_cast<double>(g);
      };
    }
    zeros = relocate_zeros(zeros, static_cast<int>(cfg.g));

    h.levels_.push_back(std::move(L));
    n = next_n;
  }

  return h;
}

void mgm_cycle(const Hierarchy& h, std::size_t level, Vec& x, const Vec& b,
               const CycleSpec& cycle, CycleStats& stats) {
  if (cycle.theta < 1)
    throw std::invalid_argument("mgm_cycle: theta must be >= 1");
  const Level& L = h.level(level);
  if (x.size() != L.n || b.size() != L.n)
    throw std::invalid_argument("mgm_cycle: vector length mismatch");

  if (level + 1 == h.num_levels()) {
    h.coarsest_solve(b, x);
    stats.work_units += L.n;
    ++stats.coarse_solves;
    return;
  }

  smooth(L.A, x, b, L.pre, cycle.nu_pre, L.a0);
  stats.work_units += static_cast<std::uint64_t>(cycle.nu_pre) * L.n;

  Vec d = op_apply(L.A, x);
  for (std::size_t i = 0; i < L.n; ++i) d[i] -= b[i];  // d = A x - b
  Vec dc = L.zcut->cut(op_apply(*L.P, d));

  Vec y(dc.size(), cplx(0.0));
  for (int s = 0; s < cycle.theta; ++s) mgm_cycle(h, level + 1, y, dc, cycle, stats);

  const Vec py = op_apply(*L.P, L.zcut->extend(y));
  for (std::size_t i = 0; i < L.n; ++i) x[i] -= py[i];
  stats.work_units += L.n;  // one restrict/prolong pair

  smooth(L.A, x, b, L.post, cycle.nu_post, L.a0);
  stats.work_units += static_cast<std::uint64_t>(cycle.nu_post) * L.n;
}

SolveReport solve(const Hierarchy& h, const Vec& b, const CycleSpec& cycle,
                  double tol, std::size_t max_iter, const Vec& x0) {
  if (!(tol > 0.0)) throw std::invalid_argument("solve: tol must be > 0");
  const Level& L0 = h.level(0);
  if (b.size() != L0.n || x0.size() != L0.n)
    throw std::invalid_argument("solve: vector length mismatch");

  SolveReport rep;
  Vec x = x0;
  Vec r = op_apply(L0.A, x);
  for (std::size_t i = 0; i < L0.n; ++i) r[i] = b[i] - r[i];
  const double r0 = norm2(r);
  if (r0 == 0.0) {
    rep.converged = true;
    rep.rel_residual_history = {0.0};
    rep.final_rel_residual = 0.0;
    rep.solution = std::move(x);
    return rep;
  }

  rep.rel_residual_history.push_back(1.0);
  rep.final_rel_residual = 1.0;
  CycleStats stats;
  for (std::size_t q = 1; q <= max_iter; ++q) {
    mgm_cycle(h, 0, x, b, cycle, stats);
    op_apply(L0.A, x, r);
    for (std::size_t i = 0; i < L0.n; ++i) r[i] = b[i] - r[i];
    const double rel = norm2(r) / r0;
    rep.iterations = q;
    rep.final_rel_residual = rel;
    rep.rel_residual_history.push_back(rel);
    if (rel <= tol) {
      rep.converged = true;
      break;
    }
    if (!(rel < 1e6)) break;  // diverged
  }
  rep.work_units = stats.work_units;
  rep.coarse_solves = stats.coarse_solves;
  rep.solution = std::move(x);
  return rep;
}

SolveReport solve(const Hierarchy& h, const Vec& b, const CycleSpec& cycle,
                  double tol, std::size_t max_iter) {
  return solve(h, b, cycle, tol, max_iter, Vec(h.level(0).n, cplx(0.0)));
}

TgmBound tgm_bound_fn(const std::function<double(double)>& f, double a0,
                      double sup_f, double scale,
                      const std::vector<SymbolZero>& zeros, const TrigPoly& p,
                      std::size_t g, double omega) {
  TgmBound out;
  const ConditionReport rep =
      check_tgm_conditions_fn(f, scale, zeros, p, static_cast<int>(g));
  if (!rep.all_ok()) {
    out.note = "bound undefined: " + describe_conditions(rep);
    return out;
  }
  if (!(omega > 0.0) || !(omega < 2.0 / sup_f)) {
    out.note = "bound undefined: omega outside (0, 2/sup|f|)";
    return out;
  }

  const double noise_floor = 100.0 * eps * std::max(scale, 1.0);
  auto near_zero = [&zeros](double x) {
    for (const SymbolZero& z : zeros)
      if (angle_distance(x, z.location) <= 1e-6) return true;
    return false;
  };
  double z_sup = 0.0;
  auto update = [&](double x) {
    if (near_zero(x)) return;
    const double fx = f(wrap_angle(x));
    if (fx <= noise_floor) return;
    for (std::size_t k = 1; k < g; ++k) {
      const double y = wrap_angle(x + two_pi * static_cast<double>(k) /
                                          static_cast<double>(g));
      z_sup = std::max(z_sup, std::norm(p.eval(y)) / fx);
    }
  };
  const int N = 4096;
  for (int i = 0; i < N; ++i) update(two_pi * i / N);
  // Probe toward each zero: the ratio has a finite limit there and may attain
  // its sup in the excluded-neighborhood frontier.
  for (const SymbolZero& z : zeros)
    for (double delta : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 2e-6}) {
      update(z.location + delta);
      update(z.location - delta);
    }

  out.alpha_post = a0 * omega * (2.0 - omega * sup_f);
  const double h = 1.0 / rep.orbit_sum_min;
  out.gamma = static_cast<double>(g) * static_cast<double>(g - 1) * a0 * h * z_sup;
  out.defined = true;
  if (out.gamma < out.alpha_post) {
    out.note = "sampled gamma fell below alpha_post; rho clamped to 0";
    out.rho = 0.0;
  } else {
    out.rho = std::sqrt(1.0 - out.alpha_post / out.gamma);
  }
  return out;
}

TgmBound tgm_bound(const TrigPoly& f, const std::vector<SymbolZero>& zeros,
                   const TrigPoly& p, std::size_t g, double omega) {
  return tgm_bound_fn([&f](double x) { return f.eval(x).real(); },
                      f.mean_coefficient(), f.sup_norm(), f.coeff_l1(), zeros,
                      p, g, omega);
}

WorkModel work_model(std::size_t g, int theta, std::size_t levels, double c) {
  if (g < 2) throw std::invalid_argument("work_model: g must be >= 2");
  if (theta < 1 || static_cast<std::size_t>(theta) > g)
    throw std::invalid_argument("work_model: theta must lie in [1, g]");
  WorkModel m;
  if (static_cast<std::size_t>(theta) == g) {
    m.nlogn = true;
    m.asymptotic_per_n = 0.0;  // not O(n): every level costs c*n
    m.finite_per_n = c * static_cast<double>(levels);
    return m;
  }
  const double ratio = static_cast<double>(theta) / static_cast<double>(g);
  m.asymptotic_per_n = c / (1.0 - ratio);
  m.finite_per_n = c * (1.0 - std::pow(ratio, static_cast<double>(levels))) /
                   (1.0 - ratio);
  return m;
}

}  // namespace gmg
