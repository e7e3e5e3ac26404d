// Command-line driver: scheme validation, order diagnostics, single
// trajectories, work-precision benchmarks, the equal-cost amplitude sweep,
// long-run drift logging, split-step Schroedinger propagation, and the exact
// commutator checks.
//
// Exit codes: 0 success, 1 invalid request (bad flags/values), 2 scheme
// validation or file-load failure, 3 every requested run diverged.

#include <cmath>
#include <cstdio>
#include <exception>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <polysplit/polysplit.hpp>

namespace {

using namespace polysplit;

struct all_diverged_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Literature comparators referenced by the experiment set but whose
// coefficients are not bundled; they must arrive via --scheme-file.
const std::vector<std::string> kKnownComparators = {"NA14_6",  "NB18_8", "SS19_8",
                                                    "SS35_10", "CA6_6",  "RKN17_12"};

bool is_known_comparator(const std::string& name) {
  for (const auto& c : kKnownComparators)
    if (c == name) return true;
  return false;
}

std::vector<SplittingScheme> resolve_schemes(std::vector<std::string> names,
                                             const std::vector<std::string>& files,
                                             bool default_builtins) {
  if (names.empty() && files.empty() && default_builtins) names = builtin_scheme_names();

  std::vector<SplittingScheme> out;
  std::vector<std::string> absent;
  for (const auto& n : names) {
    if (is_known_comparator(n)) {
      absent.push_back(n);
      continue;
    }
    out.push_back(builtin_scheme(n));  // throws validation_error if unknown
  }
  for (const auto& f : files) out.push_back(load_scheme_file(f));

  if (!absent.empty()) {
    std::string list;
    for (std::size_t i = 0; i < absent.size(); ++i) list += (i ? ", " : "") + absent[i];
    std::fprintf(stderr,
                 "notice: coefficients for %s are not bundled; supply them with "
                 "--scheme-file to include these comparators\n",
                 list.c_str());
  }
  if (out.empty())
    throw std::invalid_argument("no usable schemes requested (--scheme/--scheme-file)");
  return out;
}

std::vector<double> parse_range(const std::string& text, bool geometric) {
  // MIN:MAX:COUNT
  double lo = 0.0, hi = 0.0;
  int count = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d", &lo, &hi, &count) != 3)
    throw std::invalid_argument("range '" + text + "' is not MIN:MAX:COUNT");
  if (count < 1) throw std::invalid_argument("range count must be >= 1");
  if (count == 1) return {lo};
  if (geometric && !(lo > 0.0 && hi > 0.0))
    throw std::invalid_argument("geometric range needs positive endpoints");
  std::vector<double> v;
  for (int i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / (count - 1);
    v.push_back(geometric ? lo * std::pow(hi / lo, f) : lo + f * (hi - lo));
  }
  return v;
}

ProblemSpec make_problem_spec(const std::string& problem, int dim, std::uint64_t seed,
                              double alpha) {
  ProblemSpec ps;
  ps.kind = parse_problem(problem);  // throws invalid_argument
  ps.dim = dim;
  ps.seed = seed;
  ps.alpha = alpha;
  return ps;
}

void warn_design_mismatch(const std::vector<SplittingScheme>& schemes,
                          const SeparableSystem& sys) {
  for (const auto& sc : schemes) {
    const GuardResult g = design_class_guard(sc, sys);
    if (!g.ok) std::fprintf(stderr, "warning: %s\n", g.message.c_str());
  }
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty())
    std::fputs(text.c_str(), stdout);
  else
    write_text_file(path, text);
}

// ---- validate -------------------------------------------------------------------

struct ValidateOpts {
  std::vector<std::string> schemes, files;
  std::string save_path;
};

int cmd_validate(const ValidateOpts& o) {
  std::vector<SplittingScheme> list = resolve_schemes(o.schemes, o.files, true);
  bool all_ok = true;
  for (const auto& sc : list) {
    const SchemeValidationReport rep = validate(sc);
    std::printf("%-10s kind=%s order=%d stages=%d  sum_a=%.17g sum_b=%.17g  l1=%.17g",
                sc.name.c_str(), to_string(sc.kind).c_str(), sc.order, sc.stages, rep.sum_a,
                rep.sum_b, rep.l1_computed);
    if (sc.l1_declared) std::printf(" (declared %.6g)", *sc.l1_declared);
    std::printf("  %s\n", rep.accepted() ? "OK" : "FAIL");
    for (const auto& m : rep.messages) std::printf("    %s\n", m.c_str());
    all_ok = all_ok && rep.accepted();
  }
  if (!o.save_path.empty()) {
    if (list.size() != 1)
      throw std::invalid_argument("--save expects exactly one scheme");
    save_scheme_file(list.front(), o.save_path);
    std::printf("wrote %s\n", o.save_path.c_str());
  }
  if (!all_ok) throw validation_error("one or more schemes failed validation");
  return 0;
}

// ---- order ----------------------------------------------------------------------

struct OrderOpts {
  std::vector<std::string> schemes, files;
  std::string problem = "henon_heiles";
  int dim = 2;
  std::uint64_t seed = 0;
  double alpha = 0.5;
  double tf = 10.0;
  std::string h_range;
  std::vector<double> h_list;
  bool tables = false;
};

void print_reference_tables() {
  std::printf("independent commutators per grade (symmetric kernel composition, general,\n"
              "second-order-structure, cubic-force, quartic-force design classes):\n");
  std::printf("%6s %6s %8s %6s %6s %8s\n", "grade", "sym", "general", "rkn", "cubic", "quartic");
  for (const auto& r : kIndependentCommutators)
    std::printf("%6d %6d %8d %6d %6d %8d\n", r.order, r.sym_composition, r.general, r.rkn,
                r.cubic, r.quartic);
  std::printf("minimum stages to reach a given order:\n");
  std::printf("%6s %6s %8s %6s %6s %8s\n", "order", "sym", "general", "rkn", "cubic", "quartic");
  for (const auto& r : kMinimumStages)
    std::printf("%6d %6d %8d %6d %6d %8d\n", r.order, r.sym_composition, r.general, r.rkn,
                r.cubic, r.quartic);
}

int cmd_order(const OrderOpts& o) {
  if (o.tables) print_reference_tables();
  std::vector<SplittingScheme> list = resolve_schemes(o.schemes, o.files, true);

  std::vector<double> hs = o.h_list;
  if (!o.h_range.empty()) hs = parse_range(o.h_range, true);

  ProblemSpec ps = make_problem_spec(o.problem, o.dim, o.seed, o.alpha);
  auto [sys, x0] = make_problem(ps);
  warn_design_mismatch(list, sys);

  std::printf("%-10s %5s %6s  %12s %12s %12s %12s %12s", "scheme", "order", "stages", "w11",
              "w12", "w21", "w31", "w32");
  if (!hs.empty()) std::printf("  %8s", "slope");
  std::printf("\n");
  for (const auto& sc : list) {
    const OmegaReport w = omega(sc);
    std::printf("%-10s %5d %6d  %12.3e %12.3e %12.3e %12.3e %12.3e", sc.name.c_str(), sc.order,
                sc.stages, w.w11 - 1.0, w.w12 - 1.0, w.w21, w.w31, w.w32);
    if (!hs.empty()) {
      const EmpiricalOrderResult r = empirical_order(sc, sys, x0, hs, o.tf);
      std::printf("  %8.3f", r.slope);
    }
    std::printf("\n");
  }
  std::printf("(w11 and w12 shown as offsets from 1; w31/w32 vanish only for order >= 6)\n");
  return 0;
}

// ---- run ------------------------------------------------------------------------

struct RunOpts {
  std::vector<std::string> schemes, files;
  std::string problem = "henon_heiles";
  int dim = 2;
  std::uint64_t seed = 0;
  double alpha = 0.5;
  double h = 0.05;
  double tf = 1000.0;
  long long sample_every = 1;
  std::string output;
};

int cmd_run(const RunOpts& o) {
  std::vector<SplittingScheme> list = resolve_schemes(o.schemes, o.files, false);
  if (list.size() != 1) throw std::invalid_argument("run expects exactly one scheme");
  const SplittingScheme& sc = list.front();

  ProblemSpec ps = make_problem_spec(o.problem, o.dim, o.seed, o.alpha);
  auto [sys, x0] = make_problem(ps);
  warn_design_mismatch(list, sys);

  StepCounter counter;
  std::vector<double> times, energies;
  PhaseState x = x0;
  double ha = 0.0;
  try {
    ha = integrate_observe(sc, sys, x, o.h, o.tf, o.sample_every, counter,
                           [&](const PhaseState& s, double e) {
                             times.push_back(s.t);
                             energies.push_back(e);
                           });
  } catch (const divergence_error& e) {
    std::fprintf(stderr, "error: %s after %lld steps\n", e.what(), e.steps_completed());
    throw all_diverged_error("the requested run diverged");
  }

  const double e0 = energies.front();
  double worst = 0.0;
  for (double e : energies) worst = std::max(worst, std::abs((e - e0) / e0));

  if (!o.output.empty()) {
    std::string csv = "t,energy,rel_energy_error\n";
    for (std::size_t i = 0; i < times.size(); ++i)
      csv += detail::g17(times[i]) + "," + detail::g17(energies[i]) + "," +
             detail::g17(std::abs((energies[i] - e0) / e0)) + "\n";
    write_text_file(o.output, csv);
    std::string meta = "{\n  \"scheme\": " + detail::json_quote(sc.name) +
                       ",\n  \"problem\": " + detail::json_quote(sys.label) +
                       ",\n  \"h_actual\": " + detail::g17(ha) +
                       ",\n  \"steps\": " + std::to_string(counter.steps) +
                       ",\n  \"force_evals\": " + std::to_string(counter.force_evals) +
                       ",\n  \"max_rel_energy_error\": " + detail::g17(worst) + "\n}\n";
    write_text_file(o.output + ".meta.json", meta);
  }
  std::printf("%s on %s: h=%.17g steps=%lld force_evals=%lld max|dE/E0|=%.3e\n", sc.name.c_str(),
              sys.label.c_str(), ha, counter.steps, counter.force_evals, worst);
  return 0;
}

// ---- bench ------------------------------------------------------------------------

struct BenchOpts {
  std::vector<std::string> schemes, files;
  std::string problem = "henon_heiles";
  int dim = 2;
  std::vector<std::uint64_t> seeds;
  double alpha = 0.5;
  std::vector<double> h_list;
  std::string h_range;
  double tf = 1000.0;
  std::string metric = "max_rel_energy_error";
  std::string format = "csv";
  std::string output;
  int jobs = 1;
};

int cmd_bench(const BenchOpts& o) {
  ExperimentSpec spec;
  spec.schemes = resolve_schemes(o.schemes, o.files, true);
  spec.problem = make_problem_spec(o.problem, o.dim, o.seeds.empty() ? 0 : o.seeds.front(),
                                   o.alpha);
  spec.h_grid = o.h_list;
  if (!o.h_range.empty()) {
    auto r = parse_range(o.h_range, true);
    spec.h_grid.insert(spec.h_grid.end(), r.begin(), r.end());
  }
  spec.t_final = o.tf;
  spec.seeds = o.seeds;
  spec.metric = parse_metric(o.metric);
  spec.jobs = o.jobs;
  if (o.format != "csv" && o.format != "json")
    throw std::invalid_argument("--format must be csv or json");

  {
    auto [sys, x0] = make_problem(spec.problem);
    warn_design_mismatch(spec.schemes, sys);
  }

  const std::vector<ExperimentResult> rows = run_efficiency(spec);
  if (!o.output.empty())
    write_text_file(o.output, o.format == "csv" ? results_to_csv(rows) : results_to_json(rows));

  // Per-(scheme, h) ensemble summary: wall-clock free, so byte-stable.
  const std::vector<EnsembleSummary> summary = summarize_ensemble(spec, rows);
  std::fputs(ensemble_to_csv(summary).c_str(), stdout);

  if (all_diverged(rows)) throw all_diverged_error("every requested run diverged");
  return 0;
}

// ---- sweep-alpha ---------------------------------------------------------------------

struct SweepOpts {
  std::vector<std::string> schemes, files;
  std::vector<double> alphas;
  std::string alpha_range;
  double tf = 1000.0;
  double cost_rate = 0.0;
  std::string format = "csv";
  std::string output;
  int jobs = 1;
};

int cmd_sweep_alpha(const SweepOpts& o) {
  std::vector<SplittingScheme> schemes = resolve_schemes(o.schemes, o.files, true);
  std::vector<double> alphas = o.alphas;
  if (!o.alpha_range.empty()) {
    auto r = parse_range(o.alpha_range, false);
    alphas.insert(alphas.end(), r.begin(), r.end());
  }
  if (o.format != "csv" && o.format != "json")
    throw std::invalid_argument("--format must be csv or json");

  const AlphaSweepResult res = run_alpha_sweep(schemes, alphas, o.tf, o.cost_rate, o.jobs);

  std::string text;
  if (o.format == "csv") {
    text = alpha_sweep_to_csv(res);
  } else {
    text = "{\n  \"cost_rate\": " + detail::g17(res.cost_rate) +
           ",\n  \"t_final\": " + detail::g17(res.t_final) +
           ",\n  \"alpha_threshold_inner\": " + detail::g17(res.threshold_inner) +
           ",\n  \"alpha_threshold_outer\": " + detail::g17(res.threshold_outer) +
           ",\n  \"rows\": [\n";
    for (std::size_t i = 0; i < res.rows.size(); ++i) {
      const auto& r = res.rows[i];
      text += "    {\"scheme\": " + detail::json_quote(r.scheme) +
              ", \"alpha\": " + detail::g17(r.alpha) + ", \"h\": " + detail::g17(r.h) +
              ", \"steps\": " + std::to_string(r.steps) +
              ", \"force_evals\": " + std::to_string(r.force_evals) +
              ", \"max_rel_energy_error\": " +
              (std::isfinite(r.max_rel_energy_error) ? detail::g17(r.max_rel_energy_error)
                                                     : detail::json_quote("inf")) +
              ", \"wall_time_s\": " + detail::g17(r.wall_time_s) + "}" +
              (i + 1 < res.rows.size() ? ",\n" : "\n");
    }
    text += "  ]\n}\n";
  }
  emit(o.output, text);

  bool any_ok = false;
  for (const auto& r : res.rows) any_ok = any_ok || !r.diverged;
  if (!any_ok) throw all_diverged_error("every requested run diverged");
  return 0;
}

// ---- longrun ---------------------------------------------------------------------------

struct LongrunOpts {
  std::vector<std::string> schemes, files;
  std::string problem = "henon_heiles";
  int dim = 2;
  std::uint64_t seed = 0;
  double alpha = 0.5;
  double h = 0.0;
  double cost_rate = 0.0;
  double tf = 1e5;
  long long sample_every = 1;
  std::string output;
};

int cmd_longrun(const LongrunOpts& o) {
  std::vector<SplittingScheme> list = resolve_schemes(o.schemes, o.files, false);
  if (list.size() != 1) throw std::invalid_argument("longrun expects exactly one scheme");
  const SplittingScheme& sc = list.front();
  double h = o.h;
  if (h <= 0.0) {
    const double rate = o.cost_rate > 0.0 ? o.cost_rate : default_sweep_cost_rate();
    h = static_cast<double>(sc.stages) / rate;
  }
  ProblemSpec ps = make_problem_spec(o.problem, o.dim, o.seed, o.alpha);
  {
    auto [sys, x0] = make_problem(ps);
    warn_design_mismatch(list, sys);
  }
  LongrunResult res;
  try {
    res = run_longrun(sc, ps, h, o.tf, o.sample_every);
  } catch (const divergence_error& e) {
    std::fprintf(stderr, "error: %s after %lld steps\n", e.what(), e.steps_completed());
    throw all_diverged_error("the requested run diverged");
  }
  if (!o.output.empty()) write_text_file(o.output, longrun_to_csv(res));
  std::printf("%s on %s: h=%.17g steps=%lld force_evals=%lld\n", res.scheme.c_str(),
              res.problem.c_str(), res.h_actual, res.steps, res.force_evals);
  std::printf("max|dE/E0|=%.3e  first_half=%.3e  second_half=%.3e  drift_statistic=%.6f\n",
              res.max_rel_overall, res.first_half_max, res.second_half_max, res.drift_statistic);
  return 0;
}

// ---- schrodinger ------------------------------------------------------------------------

struct SchrodingerOpts {
  std::vector<std::string> schemes, files;
  std::size_t n_points = 256;
  double xmin = -10.0, xmax = 10.0;
  double h = 0.01;
  double tf = 100.0;
  long long sample_every = 0;
  bool swap_roles = false;
  std::string output;
};

int cmd_schrodinger(const SchrodingerOpts& o) {
  std::vector<SplittingScheme> list = resolve_schemes(o.schemes, o.files, false);
  if (list.size() != 1) throw std::invalid_argument("schrodinger expects exactly one scheme");
  const SplittingScheme& sc = list.front();

  const SpectralGrid grid = build_grid(o.n_points, o.xmin, o.xmax);
  const WaveState psi0 = gaussian_initial(grid);
  PropagationResult res;
  try {
    res = propagate(sc, grid, psi0, o.h, o.tf, o.sample_every, o.swap_roles);
  } catch (const divergence_error& e) {
    std::fprintf(stderr, "error: %s after %lld steps\n", e.what(), e.steps_completed());
    throw all_diverged_error("the requested run diverged");
  }

  if (!o.output.empty()) {
    std::string csv = "t,energy,norm\n";
    for (std::size_t i = 0; i < res.times.size(); ++i)
      csv += detail::g17(res.times[i]) + "," + detail::g17(res.energies[i]) + "," +
             detail::g17(res.norms[i]) + "\n";
    write_text_file(o.output, csv);
  }

  double norm_drift = 0.0;
  for (double n : res.norms) norm_drift = std::max(norm_drift, std::abs(n - res.norms.front()));
  std::printf("%s: h=%.17g steps=%lld ffts=%lld potential_phases=%lld\n", sc.name.c_str(),
              res.h_actual, res.steps, res.fft_count, res.potential_applications);
  std::printf("energy(0)=%.12f energy(tf)=%.12f |dE|=%.3e norm_drift=%.3e\n",
              res.energies.front(), res.energies.back(),
              std::abs(res.energies.back() - res.energies.front()), norm_drift);
  return 0;
}

// ---- lie-check ---------------------------------------------------------------------------

struct LieOpts {
  std::vector<int> degrees = {1, 2, 3};
  std::vector<int> dims = {1, 2};
  int trials = 10;
  std::uint64_t seed = 1234;
  bool show_example = false;
};

int cmd_lie_check(const LieOpts& o) {
  if (o.show_example) {
    // d=1, g = y^2: the standard worked example.
    std::vector<Poly> g{Poly(2)};
    Poly::Monomial m{2, 0};
    g[0].add_term(m, Rational(1));
    std::printf("d=1, g = y^2\n[A,B]:\n%s\n[A,[A,B]]:\n%s\n[B,[A,B]]:\n%s\n\n",
                nested("AB", g).str().c_str(), nested("AAB", g).str().c_str(),
                nested("BAB", g).str().c_str());
  }
  bool all_ok = true;
  std::printf("%6s %4s %6s  %12s %10s %9s %6s %9s\n", "deg(g)", "dim", "trial", "closed-form",
              "vanishing", "witness", "BBAB", "BAB-form");
  for (int n : o.degrees) {
    for (int d : o.dims) {
      const VanishingReport rep = verify_vanishing(n, d, o.trials, o.seed);
      for (const auto& t : rep.trials) {
        std::printf("%6d %4d %6d  %12s %10s %9s %6s %9s\n", n, d, t.trial,
                    t.closed_form_ok ? "pass" : "FAIL", t.vanishing_ok ? "pass" : "FAIL",
                    t.witness_nonzero ? "pass" : "FAIL", t.bbab_zero ? "pass" : "FAIL",
                    t.bab_form_ok ? "pass" : "FAIL");
      }
      all_ok = all_ok && rep.all_ok();
    }
  }
  if (!all_ok) throw validation_error("commutator verification failed");
  std::printf("all commutator checks passed\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "High-order palindromic splitting integrators for separable Hamiltonians\n"
      "with polynomial potentials: validation, order diagnostics, benchmarks,\n"
      "and a split-step Fourier Schroedinger propagator."};
  app.require_subcommand(1);
  // --h is a real option below, so the help flag must not claim the short -h.
  app.set_help_flag("--help", "print this help message and exit");

  ValidateOpts vo;
  auto* validate_cmd = app.add_subcommand("validate", "check coefficient sets and l1 norms");
  validate_cmd->set_help_flag("--help", "print this help message and exit");
  validate_cmd->add_option("--scheme", vo.schemes, "built-in scheme name (repeatable)");
  validate_cmd->add_option("--scheme-file", vo.files, "coefficient JSON file (repeatable)");
  validate_cmd->add_option("--save", vo.save_path, "write the (single) scheme back as JSON");

  OrderOpts oo;
  auto* order_cmd = app.add_subcommand("order", "order conditions and empirical convergence");
  order_cmd->set_help_flag("--help", "print this help message and exit");
  order_cmd->add_option("--scheme", oo.schemes, "built-in scheme name (repeatable)");
  order_cmd->add_option("--scheme-file", oo.files, "coefficient JSON file (repeatable)");
  order_cmd->add_option("--problem", oo.problem,
                        "henon_heiles | random_cubic | random_quartic | harmonic");
  order_cmd->add_option("--dim", oo.dim, "problem dimension (random/harmonic)");
  order_cmd->add_option("--seed", oo.seed, "seed for random problems");
  order_cmd->add_option("--alpha", oo.alpha, "amplitude of the baseline orbit");
  order_cmd->add_option("--tf", oo.tf, "probe time for the slope fit");
  order_cmd->add_option("--h-range", oo.h_range, "geometric step grid MIN:MAX:COUNT");
  order_cmd->add_option("--h", oo.h_list, "explicit step size (repeatable)");
  order_cmd->add_flag("--tables", oo.tables, "print the commutator/stage count tables");

  RunOpts ro;
  auto* run_cmd = app.add_subcommand("run", "integrate one trajectory and log the energy");
  run_cmd->set_help_flag("--help", "print this help message and exit");
  run_cmd->add_option("--scheme", ro.schemes, "built-in scheme name");
  run_cmd->add_option("--scheme-file", ro.files, "coefficient JSON file");
  run_cmd->add_option("--problem", ro.problem,
                      "henon_heiles | random_cubic | random_quartic | harmonic");
  run_cmd->add_option("--dim", ro.dim, "problem dimension");
  run_cmd->add_option("--seed", ro.seed, "seed for random problems");
  run_cmd->add_option("--alpha", ro.alpha, "amplitude of the baseline orbit");
  run_cmd->add_option("--h", ro.h, "step size");
  run_cmd->add_option("--tf", ro.tf, "final time");
  run_cmd->add_option("--sample-every", ro.sample_every, "record every k-th step (0: ends only)");
  run_cmd->add_option("--output", ro.output, "trajectory CSV path (t,energy,rel_energy_error)");

  BenchOpts bo;
  auto* bench_cmd = app.add_subcommand("bench", "work-precision grid over schemes/steps/seeds");
  bench_cmd->set_help_flag("--help", "print this help message and exit");
  bench_cmd->add_option("--scheme", bo.schemes, "built-in scheme name (repeatable)");
  bench_cmd->add_option("--scheme-file", bo.files, "coefficient JSON file (repeatable)");
  bench_cmd->add_option("--problem", bo.problem,
                        "henon_heiles | random_cubic | random_quartic | harmonic");
  bench_cmd->add_option("--dim", bo.dim, "problem dimension");
  bench_cmd->add_option("--seed", bo.seeds, "ensemble seed (repeatable)");
  bench_cmd->add_option("--alpha", bo.alpha, "amplitude of the baseline orbit");
  bench_cmd->add_option("--h", bo.h_list, "step size (repeatable)");
  bench_cmd->add_option("--h-range", bo.h_range, "geometric step grid MIN:MAX:COUNT");
  bench_cmd->add_option("--tf", bo.tf, "final time");
  bench_cmd->add_option("--metric", bo.metric,
                        "max_rel_energy_error | mean_log10_energy_error | final_state_error");
  bench_cmd->add_option("--format", bo.format, "csv | json");
  bench_cmd->add_option("--output", bo.output, "result rows path");
  bench_cmd->add_option("--jobs", bo.jobs, "worker threads");

  SweepOpts so;
  auto* sweep_cmd =
      app.add_subcommand("sweep-alpha", "equal-cost error sweep over orbit amplitudes");
  sweep_cmd->set_help_flag("--help", "print this help message and exit");
  sweep_cmd->add_option("--scheme", so.schemes, "built-in scheme name (repeatable)");
  sweep_cmd->add_option("--scheme-file", so.files, "coefficient JSON file (repeatable)");
  sweep_cmd->add_option("--alpha", so.alphas, "amplitude (repeatable)");
  sweep_cmd->add_option("--alpha-range", so.alpha_range, "linear amplitude grid MIN:MAX:COUNT");
  sweep_cmd->add_option("--tf", so.tf, "final time");
  sweep_cmd->add_option("--cost-rate", so.cost_rate,
                        "force evaluations per unit time (default 10^1.25)");
  sweep_cmd->add_option("--format", so.format, "csv | json");
  sweep_cmd->add_option("--output", so.output, "output path (default stdout)");
  sweep_cmd->add_option("--jobs", so.jobs, "worker threads");

  LongrunOpts lo;
  auto* long_cmd = app.add_subcommand("longrun", "long integration with per-decade error log");
  long_cmd->set_help_flag("--help", "print this help message and exit");
  long_cmd->add_option("--scheme", lo.schemes, "built-in scheme name");
  long_cmd->add_option("--scheme-file", lo.files, "coefficient JSON file");
  long_cmd->add_option("--problem", lo.problem,
                       "henon_heiles | random_cubic | random_quartic | harmonic");
  long_cmd->add_option("--dim", lo.dim, "problem dimension");
  long_cmd->add_option("--seed", lo.seed, "seed for random problems");
  long_cmd->add_option("--alpha", lo.alpha, "amplitude of the baseline orbit");
  long_cmd->add_option("--h", lo.h, "step size (overrides --cost-rate)");
  long_cmd->add_option("--cost-rate", lo.cost_rate,
                       "force evaluations per unit time used to pick h = stages/rate");
  long_cmd->add_option("--tf", lo.tf, "final time (>= 1e4)");
  long_cmd->add_option("--sample-every", lo.sample_every, "energy sampling cadence in steps");
  long_cmd->add_option("--output", lo.output, "per-decade CSV path");

  SchrodingerOpts qo;
  auto* schro_cmd = app.add_subcommand("schrodinger", "split-step Fourier propagation");
  schro_cmd->set_help_flag("--help", "print this help message and exit");
  schro_cmd->add_option("--scheme", qo.schemes, "built-in scheme name");
  schro_cmd->add_option("--scheme-file", qo.files, "coefficient JSON file");
  schro_cmd->add_option("--n-points", qo.n_points, "grid points (power of two)");
  schro_cmd->add_option("--xmin", qo.xmin, "left end of the periodic box");
  schro_cmd->add_option("--xmax", qo.xmax, "right end of the periodic box");
  schro_cmd->add_option("--h", qo.h, "step size");
  schro_cmd->add_option("--tf", qo.tf, "final time");
  schro_cmd->add_option("--sample-every", qo.sample_every,
                        "record every k-th step (0: ends only)");
  schro_cmd->add_flag("--swap-roles", qo.swap_roles,
                      "assign drift coefficients to the potential instead of the kinetic part");
  schro_cmd->add_option("--output", qo.output, "CSV path (t,energy,norm)");

  LieOpts eo;
  auto* lie_cmd = app.add_subcommand("lie-check", "exact commutator vanishing verification");
  lie_cmd->set_help_flag("--help", "print this help message and exit");
  lie_cmd->add_option("--degree", eo.degrees, "force polynomial degree n (repeatable, 1..3)");
  lie_cmd->add_option("--dim", eo.dims, "dimension (repeatable, 1..3)");
  lie_cmd->add_option("--trials", eo.trials, "random polynomials per (degree, dim)");
  lie_cmd->add_option("--seed", eo.seed, "base seed");
  lie_cmd->add_flag("--example", eo.show_example, "print the worked d=1, g=y^2 brackets");

  try {
    app.parse(argc, argv);
    if (validate_cmd->parsed()) return cmd_validate(vo);
    if (order_cmd->parsed()) return cmd_order(oo);
    if (run_cmd->parsed()) return cmd_run(ro);
    if (bench_cmd->parsed()) return cmd_bench(bo);
    if (sweep_cmd->parsed()) return cmd_sweep_alpha(so);
    if (long_cmd->parsed()) return cmd_longrun(lo);
    if (schro_cmd->parsed()) return cmd_schrodinger(qo);
    if (lie_cmd->parsed()) return cmd_lie_check(eo);
    return 1;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // help/version exit cleanly; bad flags are spec errors
  } catch (const all_diverged_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const validation_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const load_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
