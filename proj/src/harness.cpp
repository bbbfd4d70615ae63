#include "gmg/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gmg::harness {

std::string mode_name(CycleMode m) {
  switch (m) {
    case CycleMode::tgm:
      return "TGM";
    case CycleMode::vcycle:
      return "V";
    case CycleMode::wcycle:
      return "W";
  }
  return "?";
}

namespace {

std::string fmt_sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15e", v);
  return buf;
}

std::vector<CycleConfig> standard_cycles(bool with_tgm, bool both_nu) {
  std::vector<CycleConfig> out;
  std::vector<CycleMode> modes;
  if (with_tgm) modes.push_back(CycleMode::tgm);
  modes.push_back(CycleMode::vcycle);
  modes.push_back(CycleMode::wcycle);
  for (CycleMode m : modes) {
    out.push_back({m, 1, 1});
    if (both_nu) out.push_back({m, 2, 2});
  }
  return out;
}

std::vector<ExperimentSpec> make_registry() {
  using std::numbers::pi;
  std::vector<ExperimentSpec> reg;

  const TrigPoly low = TrigPoly::cosine_factor(0.0);   // 2 - 2cos x
  const TrigPoly high = TrigPoly::cosine_factor(pi);   // 2 + 2cos x
  const TrigPoly band_pair = low * high;               // zeros at 0 and pi, order 2
  const std::vector<SymbolZero> pair_zeros = {make_zero(0.0, 2),
                                              make_zero(pi, 2)};
  // Transfer symbol with order-2 zeros at all four mirror images of {0, pi}.
  const TrigPoly mirror_projector = projector_symbol(pair_zeros, 3);

  {
    ExperimentSpec e;
    e.id = "EX1";
    e.description =
        "circulant, symbol (2-2cos x)(2+2cos x), zeros of order 2 at 0 and pi";
    e.kind = MatrixKind::circulant;
    e.f0 = SymbolSpec::polynomial(band_pair);
    e.zeros = pair_zeros;
    e.sizes = {81, 243, 729, 2187};
    e.cycles = standard_cycles(true, true);
    e.pre = make_richardson_rule(1.0);
    e.post = make_cg_rule();
    e.tol = 1e-7;
    e.coarsest_threshold = 27;
    reg.push_back(std::move(e));
  }
  {
    ExperimentSpec e;
    e.id = "EX2";
    e.description =
        "Toeplitz, symbol (2-2cos x)(2+2cos x), zeros of order 2 at 0 and pi";
    e.kind = MatrixKind::toeplitz;
    e.f0 = SymbolSpec::polynomial(band_pair);
    e.zeros = pair_zeros;
    e.sizes = {78, 240, 726, 2184};
    e.cycles = standard_cycles(true, true);
    e.pre = make_richardson_rule(1.0);
    e.post = make_cg_rule();
    e.tol = 1e-7;
    e.coarsest_threshold = 27;
    reg.push_back(std::move(e));
  }
  {
    ExperimentSpec e;
    e.id = "EX3";
    e.description =
        "circulant, symbol (2-2cos x)(2+2cos x)^2, order-4 zero at pi, "
        "undersized transfer exponents";
    e.kind = MatrixKind::circulant;
    e.f0 = SymbolSpec::polynomial(band_pair * high);
    e.zeros = {make_zero(0.0, 2), make_zero(pi, 4)};
    e.sizes = {81, 243, 729, 2187};
    e.cycles = standard_cycles(true, true);
    e.pre = make_richardson_rule(1.0);
    e.post = make_cg_rule();
    e.tol = 1e-3;
    e.coarsest_threshold = 27;
    e.fixed_projector = mirror_projector;
    reg.push_back(std::move(e));
  }
  {
    ExperimentSpec e;
    e.id = "EX4";
    e.description =
        "Toeplitz, symbol (2-2cos x)(2+2cos x)^2, order-4 zero at pi, "
        "undersized transfer exponents";
    e.kind = MatrixKind::toeplitz;
    e.f0 = SymbolSpec::polynomial(band_pair * high);
    e.zeros = {make_zero(0.0, 2), make_zero(pi, 4)};
    e.sizes = {78, 240, 726, 2184};
    e.cycles = standard_cycles(true, true);
    e.pre = make_richardson_rule(1.0);
    e.post = make_cg_rule();
    e.tol = 1e-3;
    e.coarsest_threshold = 27;
    e.fixed_projector = mirror_projector;
    reg.push_back(std::move(e));
  }
  {
    ExperimentSpec e;
    e.id = "EX5";
    e.description =
        "Toeplitz, symbol 6-4cos(2x)-2cos(4x), zeros of order 2 at 0 and pi, "
        "Jacobi smoothing, deep coarsening";
    e.kind = MatrixKind::toeplitz;
    e.f0 = SymbolSpec::polynomial(
        TrigPoly(4, {cplx(-1), cplx(0), cplx(-2), cplx(0), cplx(6), cplx(0),
                     cplx(-2), cplx(0), cplx(-1)}));
    e.zeros = pair_zeros;
    e.sizes = {78, 240, 726, 2184};
    e.cycles = standard_cycles(true, false);
    e.pre = make_jacobi_rule(1.0);
    e.post = make_jacobi_rule(2.0);
    e.tol = 1e-7;
    e.coarsest_threshold = 6;
    e.guess = GuessRule::random_uniform;
    reg.push_back(std::move(e));
  }
  {
    ExperimentSpec e;
    e.id = "EX6";
    e.description =
        "Toeplitz (complex Hermitian), symbol 2-2cos(x-pi/3), order-2 zero "
        "away from the origin";
    e.kind = MatrixKind::toeplitz;
    e.f0 = SymbolSpec::polynomial(TrigPoly::cosine_factor(pi / 3));
    e.zeros = {make_zero(pi / 3, 2)};
    e.sizes = {80, 242, 728, 2186};
    e.cycles = standard_cycles(false, true);
    e.pre = make_richardson_rule(1.0);
    e.post = make_cg_rule();
    e.tol = 1e-7;
    e.coarsest_threshold = 27;
    e.solution = SolutionRule::random_uniform;
    reg.push_back(std::move(e));
  }
  {
    ExperimentSpec e;
    e.id = "EX7";
    e.description =
        "dense-symbol Toeplitz, f(x) = min(x, 2pi-x)^2, order-2 zero at 0";
    e.kind = MatrixKind::toeplitz;
    e.f0 = SymbolSpec::dense(
        [](std::int64_t k) -> cplx {
          if (k == 0) return cplx(std::numbers::pi * std::numbers::pi / 3.0);
          const double sign = (k % 2 == 0) ? 1.0 : -1.0;
          return cplx(2.0 * sign / (static_cast<double>(k) * static_cast<double>(k)));
        },
        [](double x) {
          const double d = std::min(wrap_angle(x), two_pi - wrap_angle(x));
          return d * d;
        });
    e.zeros = {make_zero(0.0, 2)};
    e.sizes = {80, 242, 728, 2186};
    e.cycles = standard_cycles(false, true);
    e.pre = make_richardson_rule(1.0);
    e.post = make_cg_rule();
    e.tol = 1e-7;
    e.coarsest_threshold = 27;
    reg.push_back(std::move(e));
  }
  return reg;
}

}  // namespace

const std::vector<ExperimentSpec>& builtin_registry() {
  static const std::vector<ExperimentSpec> reg = make_registry();
  return reg;
}

const ExperimentSpec& find_experiment(const std::string& id) {
  for (const ExperimentSpec& e : builtin_registry())
    if (e.id == id) return e;
  throw std::invalid_argument("unknown experiment id: " + id);
}

Vec make_solution(SolutionRule rule, std::size_t n, std::uint64_t seed) {
  Vec x(n);
  if (rule == SolutionRule::linear_ramp) {
    for (std::size_t i = 0; i < n; ++i)
      x[i] = cplx(static_cast<double>(i + 1) / static_cast<double>(n));
  } else {
    UniformRng rng(seed);
    for (std::size_t i = 0; i < n; ++i) x[i] = cplx(rng.next());
  }
  return x;
}

Vec make_guess(GuessRule rule, std::size_t n, std::uint64_t seed) {
  if (rule == GuessRule::zero) return Vec(n, cplx(0.0));
  Vec x(n);
  UniformRng rng(seed);
  for (std::size_t i = 0; i < n; ++i) x[i] = cplx(rng.next());
  return x;
}

std::string history_key(const std::string& id, std::size_t n,
                        const std::string& cycle, int nu_pre, int nu_post) {
  std::ostringstream key;
  key << id << "_n" << n << "_" << cycle << "_nu" << nu_pre << "-" << nu_post;
  return key.str();
}

ExperimentResult run_experiment(const ExperimentSpec& spec,
                                const RunOverrides& ov) {
  const std::size_t g = ov.g.value_or(spec.g);
  const std::vector<std::size_t> sizes = ov.sizes.value_or(spec.sizes);
  const double tol = ov.tol.value_or(spec.tol);
  const std::uint64_t seed = ov.seed.value_or(spec.seed);
  const std::size_t max_iter = ov.max_iter.value_or(spec.max_iter);

  struct RunCycle {
    std::string name;
    int theta;
    int nu_pre, nu_post;
    bool two_level;
  };
  std::vector<RunCycle> cycles;
  if (ov.theta) {
    const int nu = ov.nu.value_or(1);
    std::string name = *ov.theta == 1   ? "V"
                       : *ov.theta == 2 ? "W"
                                        : "theta" + std::to_string(*ov.theta);
    cycles.push_back({name, *ov.theta, nu, nu, false});
  } else {
    for (const CycleConfig& c : spec.cycles)
      cycles.push_back({mode_name(c.mode), c.theta(), c.nu_pre, c.nu_post,
                        c.mode == CycleMode::tgm});
  }

  HierarchyConfig base;
  base.kind = spec.kind;
  base.g = g;
  base.coarsest_threshold = spec.coarsest_threshold;
  base.f0 = spec.f0;
  base.zeros = spec.zeros;
  base.fixed_projector = spec.fixed_projector;
  base.pre = spec.pre;
  base.post = spec.post;

  ExperimentResult result;
  for (std::size_t n : sizes) {
    std::optional<Hierarchy> full, two_level;
    std::string full_err, two_err;
    auto get_hier = [&](bool two) -> Hierarchy* {
      auto& slot = two ? two_level : full;
      auto& err = two ? two_err : full_err;
      if (!slot && err.empty()) {
        HierarchyConfig cfg = base;
        cfg.n0 = n;
        cfg.max_levels = two ? 2 : SIZE_MAX;
        try {
          slot = build_hierarchy(cfg);
        } catch (const std::exception& e) {
          err = e.what();
        }
      }
      return slot ? &*slot : nullptr;
    };

    const Vec x_true =
        make_solution(spec.solution, n, mix_seed(seed, 2 * n));

    for (const RunCycle& rc : cycles) {
      ResultRow row;
      row.experiment = spec.id;
      row.n = n;
      row.cycle = rc.name;
      row.nu_pre = rc.nu_pre;
      row.nu_post = rc.nu_post;

      Hierarchy* h = get_hier(rc.two_level);
      if (h == nullptr) {
        row.error = rc.two_level ? two_err : full_err;
        result.rows.push_back(std::move(row));
        continue;
      }

      const Vec b = op_apply(h->level(0).A, x_true);
      const Vec x0 = make_guess(spec.guess, n, mix_seed(seed, 2 * n + 1));
      CycleSpec cyc;
      cyc.theta = rc.theta;
      cyc.nu_pre = rc.nu_pre;
      cyc.nu_post = rc.nu_post;
      cyc.coarsest_threshold = spec.coarsest_threshold;

      try {
        SolveReport rep = solve(*h, b, cyc, tol, max_iter, x0);
        row.iterations = rep.iterations;
        row.converged = rep.converged;
        row.final_rel_res = rep.final_rel_residual;
        row.work_units = rep.work_units;
        result.histories[history_key(spec.id, n, rc.name, rc.nu_pre,
                                     rc.nu_post)] =
            std::move(rep.rel_residual_history);
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

void emit_csv(const std::vector<ResultRow>& rows, std::ostream& os) {
  os << "experiment,n,cycle,nu_pre,nu_post,iterations,converged,final_rel_res,"
        "work_units\n";
  for (const ResultRow& r : rows) {
    os << r.experiment << ',' << r.n << ',' << r.cycle << ',' << r.nu_pre
       << ',' << r.nu_post << ',' << r.iterations << ','
       << (r.converged ? 1 : 0) << ',' << fmt_sci(r.final_rel_res) << ','
       << r.work_units << '\n';
  }
}

void emit_history(const std::vector<double>& history, std::ostream& os) {
  for (double v : history) os << fmt_sci(v) << '\n';
}

std::string emit_files(const ExperimentResult& result, const std::string& id,
                       const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const std::string csv_path = (fs::path(out_dir) / (id + ".csv")).string();
  {
    std::ofstream os(csv_path);
    if (!os) throw std::runtime_error("cannot open " + csv_path);
    emit_csv(result.rows, os);
  }
  for (const auto& [key, hist] : result.histories) {
    const std::string hist_path = (fs::path(out_dir) / (key + ".hist")).string();
    std::ofstream os(hist_path);
    if (!os) throw std::runtime_error("cannot open " + hist_path);
    emit_history(hist, os);
  }
  return csv_path;
}

}  // namespace gmg::harness
