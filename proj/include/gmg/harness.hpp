#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "gmg/multigrid.hpp"

namespace gmg::harness {

enum class CycleMode { tgm, vcycle, wcycle };
std::string mode_name(CycleMode m);

struct CycleConfig {
  CycleMode mode = CycleMode::vcycle;
  int nu_pre = 1;
  int nu_post = 1;
  int theta() const { return mode == CycleMode::wcycle ? 2 : 1; }
};

enum class SolutionRule { linear_ramp, random_uniform };
enum class GuessRule { zero, random_uniform };

struct ExperimentSpec {
  std::string id;
  std::string description;
  MatrixKind kind = MatrixKind::circulant;
  SymbolSpec f0;
  std::vector<SymbolZero> zeros;
  std::size_t g = 3;
  std::vector<std::size_t> sizes;
  std::vector<CycleConfig> cycles;
  SmootherRule pre, post;
  double tol = 1e-7;
  std::size_t max_iter = 1000;
  std::size_t coarsest_threshold = 27;
  std::optional<TrigPoly> fixed_projector;
  SolutionRule solution = SolutionRule::linear_ramp;
  GuessRule guess = GuessRule::zero;
  std::uint64_t seed = 42;
};

// The built-in experiment set (EX1..EX7).
const std::vector<ExperimentSpec>& builtin_registry();
const ExperimentSpec& find_experiment(const std::string& id);

struct ResultRow {
  std::string experiment;
  std::size_t n = 0;
  std::string cycle;
  int nu_pre = 0;
  int nu_post = 0;
  std::size_t iterations = 0;
  bool converged = false;
  double final_rel_res = 0.0;
  std::uint64_t work_units = 0;
  std::string error;  // construction/solve failure note; not emitted to CSV
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  // key: "<id>_n<k>_<mode>_nu<pre>-<post>"
  std::map<std::string, std::vector<double>> histories;
};

struct RunOverrides {
  std::optional<std::size_t> g;
  std::optional<int> theta;  // replaces the cycle list with one custom cycle
  std::optional<int> nu;     // used with theta (default 1)
  std::optional<std::vector<std::size_t>> sizes;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_iter;
};

// Runs every (size, cycle) pair of the spec. Hierarchy-construction failures
// are recorded on the affected row (converged = false, error set) and the run
// continues.
ExperimentResult run_experiment(const ExperimentSpec& spec,
                                const RunOverrides& ov = {});

// Deterministic vectors used by the experiments.
Vec make_solution(SolutionRule rule, std::size_t n, std::uint64_t seed);
Vec make_guess(GuessRule rule, std::size_t n, std::uint64_t seed);

// CSV with the pinned header
// experiment,n,cycle,nu_pre,nu_post,iterations,converged,final_rel_res,work_units
void emit_csv(const std::vector<ResultRow>& rows, std::ostream& os);
// One relative residual per line, scientific, 16 significant digits.
void emit_history(const std::vector<double>& history, std::ostream& os);
// Writes <out_dir>/<id>.csv plus one .hist file per row; returns the CSV path.
std::string emit_files(const ExperimentResult& result, const std::string& id,
                       const std::string& out_dir);

std::string history_key(const std::string& id, std::size_t n,
                        const std::string& cycle, int nu_pre, int nu_post);

}  // namespace gmg::harness
