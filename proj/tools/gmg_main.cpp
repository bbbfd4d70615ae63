#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gmg/harness.hpp"
#include "gmg/oracle.hpp"

using namespace gmg;

namespace {

constexpr double pi = std::numbers::pi;

int run_command(const std::string& experiment, const harness::RunOverrides& ov,
                const std::string& out_dir) {
  std::vector<const harness::ExperimentSpec*> specs;
  if (experiment == "all") {
    for (const auto& e : harness::builtin_registry()) specs.push_back(&e);
  } else {
    specs.push_back(&harness::find_experiment(experiment));
  }

  int failures = 0;
  for (const auto* spec : specs) {
    std::printf("%s: %s\n", spec->id.c_str(), spec->description.c_str());
    const harness::ExperimentResult res = harness::run_experiment(*spec, ov);
    std::printf("  %-6s %6s %-6s %7s %10s %14s %12s\n", "cycle", "n", "nu",
                "iters", "converged", "final_rel_res", "work");
    for (const harness::ResultRow& r : res.rows) {
      if (!r.error.empty()) {
        std::printf("  %-6s %6zu        construction failed: %s\n",
                    r.cycle.c_str(), r.n, r.error.c_str());
        ++failures;
        continue;
      }
      std::printf("  %-6s %6zu %d/%-4d %7zu %10s %14.3e %12llu\n",
                  r.cycle.c_str(), r.n, r.nu_pre, r.nu_post, r.iterations,
                  r.converged ? "yes" : "NO", r.final_rel_res,
                  static_cast<unsigned long long>(r.work_units));
      if (!r.converged) ++failures;
    }
    const std::string csv = harness::emit_files(res, spec->id, out_dir);
    std::printf("  wrote %s\n", csv.c_str());
  }
  return failures == 0 ? 0 : 1;
}

int check_cutting() {
  int fails = 0;
  const std::vector<std::pair<std::size_t, std::size_t>> cases = {
      {6, 2}, {9, 3}, {12, 2}, {12, 3}, {27, 3}, {81, 3}, {243, 3}};
  for (auto [n, g] : cases) {
    const double dev = oracle::verify_fourier_cutting(n, g);
    const bool ok = dev <= 1e-12;
    if (!ok) ++fails;
    std::printf("fourier-cutting   n=%-4zu g=%zu  dev=%9.2e  %s\n", n, g, dev,
                ok ? "ok" : "FAIL");
  }
  return fails;
}

int check_galerkin() {
  int fails = 0;
  const TrigPoly low = TrigPoly::cosine_factor(0.0);
  const TrigPoly pair = low * TrigPoly::cosine_factor(pi);
  const TrigPoly p1 = projector_symbol({make_zero(0.0, 2)}, 3);
  const TrigPoly p2 =
      projector_symbol({make_zero(0.0, 2), make_zero(pi, 2)}, 3);

  struct Case {
    const char* name;
    double dev;
  };
  const auto banded_rule = [](std::int64_t k) -> cplx {
    if (std::abs(k) > 2) return cplx(0.0);
    return k == 0 ? cplx(5.0) : cplx(-1.0 / static_cast<double>(k), 0.4);
  };
  const std::vector<Case> cases = {
      {"circulant n=27 single zero",
       oracle::verify_galerkin(MatrixKind::circulant, low, p1, 3, 27)},
      {"circulant n=27 zero pair",
       oracle::verify_galerkin(MatrixKind::circulant, pair, p2, 3, 27)},
      {"toeplitz  n=78 zero pair",
       oracle::verify_galerkin(MatrixKind::toeplitz, pair, p2, 3, 78)},
      {"toeplitz  n=60 banded rule",
       oracle::verify_galerkin_toeplitz(
           ToeplitzOp::from_rule(banded_rule, 60), p1, 3)},
  };
  for (const Case& c : cases) {
    const bool ok = c.dev <= 1e-10;
    if (!ok) ++fails;
    std::printf("galerkin  %-28s dev=%9.2e  %s\n", c.name, c.dev,
                ok ? "ok" : "FAIL");
  }

  const TrigPoly fhat = coarse_symbol(low, p1, 3);
  const int want = (low.degree() + 2 * p1.degree()) / 3;
  const bool deg_ok = fhat.degree() == want;
  if (!deg_ok) ++fails;
  std::printf("galerkin  coarse degree %d (expected %d)  %s\n", fhat.degree(),
              want, deg_ok ? "ok" : "FAIL");
  return fails;
}

int check_approx() {
  int fails = 0;
  const TrigPoly f = TrigPoly::cosine_factor(0.0);
  const std::vector<SymbolZero> zeros = {make_zero(0.0, 2)};
  const TrigPoly p = projector_symbol(zeros, 3);
  const TgmBound bound = tgm_bound(f, zeros, p, 3, 1.0 / f.sup_norm());
  if (!bound.defined) {
    std::printf("approx    bound undefined  FAIL\n");
    return 1;
  }
  for (std::size_t n : {27u, 81u}) {
    const oracle::ApproxCheck chk =
        oracle::verify_approx_inequality(f, p, 3, n, bound.gamma);
    const bool ok = chk.rank_ok && chk.min_eig >= -1e-8;
    if (!ok) ++fails;
    std::printf("approx    n=%-4zu rank=%zu min_eig=%10.2e  %s\n", n, chk.rank,
                chk.min_eig, ok ? "ok" : "FAIL");
  }
  return fails;
}

int check_smoothing() {
  int fails = 0;
  const TrigPoly low = TrigPoly::cosine_factor(0.0);
  const TrigPoly pair = low * TrigPoly::cosine_factor(pi);
  std::mt19937_64 eng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  for (const TrigPoly& f : {low, pair}) {
    const std::size_t n = 81;
    const CirculantOp A(f, n);
    const double sup = f.sup_norm();
    const double a0 = f.mean_coefficient();
    const double omega = 1.0 / sup;
    const double alpha = a0 * omega * (2.0 - omega * sup);

    double worst = 0.0;
    for (int trial = 0; trial < 25; ++trial) {
      Vec x(n);
      for (cplx& z : x) z = cplx(u(eng), u(eng));
      const Vec ax = A.apply(x);
      Vec vx = x;
      for (std::size_t i = 0; i < n; ++i) vx[i] -= omega * ax[i];
      const Vec avx = A.apply(vx);
      const double xa = dot(x, ax).real();
      const double va = dot(vx, avx).real();
      const double ax2 = dot(ax, ax).real();
      const double slack = xa - (alpha / a0) * ax2 - va;
      worst = std::min(worst, slack / std::max(1.0, xa));
    }
    const bool ok = worst >= -1e-10;
    if (!ok) ++fails;
    std::printf("smoothing deg=%d sup=%.2f  worst slack=%10.2e  %s\n",
                f.degree(), sup, worst, ok ? "ok" : "FAIL");
  }
  return fails;
}

int check_command(const std::string& suite) {
  int fails = 0;
  if (suite == "cutting" || suite == "all") fails += check_cutting();
  if (suite == "galerkin" || suite == "all") fails += check_galerkin();
  if (suite == "approx" || suite == "all") fails += check_approx();
  if (suite == "smoothing" || suite == "all") fails += check_smoothing();
  if (fails > 0) std::printf("%d check(s) FAILED\n", fails);
  return fails == 0 ? 0 : 1;
}

int bound_command(const std::string& experiment) {
  std::vector<const harness::ExperimentSpec*> specs;
  if (experiment == "all") {
    for (const auto& e : harness::builtin_registry()) specs.push_back(&e);
  } else {
    specs.push_back(&harness::find_experiment(experiment));
  }

  int undefined = 0;
  for (const auto* spec : specs) {
    const TrigPoly p = spec->fixed_projector
                           ? *spec->fixed_projector
                           : projector_symbol(spec->zeros,
                                              static_cast<int>(spec->g));
    TgmBound b;
    double omega = 0.0;
    if (spec->f0.is_polynomial) {
      const TrigPoly& f = spec->f0.poly;
      const double sup = f.sup_norm();
      // Jacobi normalizes its step by the mean coefficient, so both
      // stationary smoothers act as Richardson with step scale/sup; CG gets
      // the 1/sup reference step.
      omega = spec->pre.kind == SmootherKind::cg ? 1.0 / sup
                                                 : spec->pre.scale / sup;
      b = tgm_bound(f, spec->zeros, p, spec->g, omega);
    } else {
      const double sup = sup_norm_fn(spec->f0.eval);
      const double a0 = spec->f0.coeff_rule(0).real();
      omega = 1.0 / sup;
      b = tgm_bound_fn(spec->f0.eval, a0, sup, sup, spec->zeros, p, spec->g,
                       omega);
    }
    if (!b.defined) {
      ++undefined;
      std::printf("%s: %s\n", spec->id.c_str(), b.note.c_str());
      continue;
    }
    const WorkModel wm = work_model(spec->g, 2, 10, 1.0);
    std::printf(
        "%s: omega=%.6g alpha_post=%.6g gamma=%.6g rho=%.6g  "
        "(W-cycle work ~ %.2f c n)\n",
        spec->id.c_str(), omega, b.alpha_post, b.gamma, b.rho,
        wm.asymptotic_per_n);
  }
  return undefined == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbol-driven multigrid for circulant and Toeplitz systems"};
  app.set_config("--config", "", "Read options from a key=value file");
  app.require_subcommand(1);

  std::string experiment = "all";
  std::vector<std::size_t> sizes;
  std::optional<std::size_t> g_opt;
  std::optional<int> theta_opt, nu_opt;
  std::optional<double> tol_opt;
  std::optional<std::uint64_t> seed_opt;
  std::optional<std::size_t> max_iter_opt;
  std::string out_dir = ".";
  std::string format = "csv";

  CLI::App* run = app.add_subcommand("run", "Run experiments, emit tables");
  run->add_option("--experiment", experiment,
                  "Experiment id (EX1..EX7) or 'all'")
      ->capture_default_str();
  run->add_option("--sizes", sizes, "Comma-separated size override")
      ->delimiter(',');
  run->add_option("--g", g_opt, "Coarsening factor override");
  run->add_option("--theta", theta_opt,
                  "Single custom cycle: recursive coarse solves per visit");
  run->add_option("--nu", nu_opt, "Smoothing steps for the custom cycle");
  run->add_option("--tol", tol_opt, "Relative residual stopping tolerance");
  run->add_option("--seed", seed_opt, "Base seed for the start vectors");
  run->add_option("--max-iter", max_iter_opt, "Cycle cap per solve");
  run->add_option("--out", out_dir, "Output directory for CSV/history files")
      ->capture_default_str();
  run->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv"}))
      ->capture_default_str();

  std::string suite = "all";
  CLI::App* check = app.add_subcommand("check", "Run verification suites");
  check
      ->add_option("--suite", suite,
                   "cutting | galerkin | approx | smoothing | all")
      ->check(CLI::IsMember({"cutting", "galerkin", "approx", "smoothing", "all"}))
      ->capture_default_str();

  std::string bound_exp = "all";
  CLI::App* bound = app.add_subcommand(
      "bound", "Print two-grid convergence bounds from the symbols");
  bound
      ->add_option("--experiment", bound_exp,
                   "Experiment id (EX1..EX7) or 'all'")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      harness::RunOverrides ov;
      ov.g = g_opt;
      ov.theta = theta_opt;
      ov.nu = nu_opt;
      if (!sizes.empty()) ov.sizes = sizes;
      ov.tol = tol_opt;
      ov.seed = seed_opt;
      ov.max_iter = max_iter_opt;
      return run_command(experiment, ov, out_dir);
    }
    if (check->parsed()) return check_command(suite);
    if (bound->parsed()) return bound_command(bound_exp);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
