#pragma once

// Desk-scale benchmark harness: work-precision grids (error vs force
// evaluations), the equal-cost amplitude sweep, long-run drift logging, and
// seed ensembles with the mean-log10 error summary.  All outputs are
// deterministic for a fixed spec: tasks may run on any number of threads, but
// rows land in preallocated slots and are sorted by (scheme, h, seed) before
// writing, and wall-clock time is the only nondeterministic column.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "errors.hpp"
#include "integrator.hpp"
#include "scheme.hpp"
#include "scheme_io.hpp"
#include "systems.hpp"

namespace polysplit {

// --- metrics -----------------------------------------------------------------

enum class Metric {
  max_rel_energy_error,     // max_t |(E(t)-E(0))/E(0)| over sampled times
  mean_log10_energy_error,  // log10 of the above (ensemble rows average these)
  final_state_error         // max-norm error at t_final vs reference
};

inline std::string to_string(Metric m) {
  switch (m) {
    case Metric::max_rel_energy_error: return "max_rel_energy_error";
    case Metric::mean_log10_energy_error: return "mean_log10_energy_error";
    case Metric::final_state_error: return "final_state_error";
  }
  return "?";
}

inline Metric parse_metric(const std::string& s) {
  if (s == "max_rel_energy_error") return Metric::max_rel_energy_error;
  if (s == "mean_log10_energy_error") return Metric::mean_log10_energy_error;
  if (s == "final_state_error") return Metric::final_state_error;
  throw std::invalid_argument("unknown metric '" + s + "'");
}

// --- experiment plumbing --------------------------------------------------------

struct ExperimentSpec {
  std::vector<SplittingScheme> schemes;
  ProblemSpec problem;
  std::vector<double> h_grid;
  double t_final = 1000.0;
  std::vector<std::uint64_t> seeds;  // required non-empty for random problems
  Metric metric = Metric::max_rel_energy_error;
  int jobs = 1;
};

struct ExperimentResult {
  std::string scheme;
  std::string problem;
  std::uint64_t seed = 0;
  double h_requested = 0.0;
  double h_actual = 0.0;
  long long steps = 0;
  long long force_evals = 0;
  std::string metric;
  double value = 0.0;  // +inf marks a divergent run
  double wall_time_s = 0.0;
  bool diverged = false;
};

inline bool problem_needs_seeds(ProblemKind k) {
  return k == ProblemKind::random_cubic || k == ProblemKind::random_quartic;
}

inline void validate_experiment_spec(const ExperimentSpec& spec) {
  if (spec.schemes.empty()) throw std::invalid_argument("experiment: no schemes given");
  if (spec.h_grid.empty()) throw std::invalid_argument("experiment: empty step-size grid");
  for (double h : spec.h_grid)
    if (!(h > 0.0)) throw std::invalid_argument("experiment: step sizes must be positive");
  if (!(spec.t_final > 0.0)) throw std::invalid_argument("experiment: t_final must be positive");
  if (spec.seeds.empty() && problem_needs_seeds(spec.problem.kind))
    throw std::invalid_argument("experiment: random problems need at least one seed");
  if (spec.jobs < 1) throw std::invalid_argument("experiment: jobs must be >= 1");
}

// Runs fn(0..n-1) on up to `jobs` threads; each index runs exactly once.
template <class Fn>
inline void parallel_for(std::size_t n, int jobs, Fn&& fn) {
  if (n == 0) return;
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, jobs)), n);
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&]() {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  for (auto& t : pool) t.join();
}

namespace detail {

inline double planned_step(double h, double t_final) {
  long long n = std::llround(t_final / h);
  if (n < 1) n = 1;
  return t_final / static_cast<double>(n);
}

inline double state_distance(const PhaseState& a, const PhaseState& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.q.size(); ++i) m = std::max(m, std::abs(a.q[i] - b.q[i]));
  for (std::size_t i = 0; i < a.p.size(); ++i) m = std::max(m, std::abs(a.p[i] - b.p[i]));
  return m;
}

}  // namespace detail

// Max relative energy error along a run, sampling every step.  Divergence is
// reported via divergence_error, counters already advanced.
inline double max_rel_energy_error_run(const SplittingScheme& sc, const SeparableSystem& sys,
                                       const PhaseState& x0, double h, double t_final,
                                       StepCounter& counter, double* h_actual_out = nullptr) {
  double e0 = 0.0;
  bool have_e0 = false;
  double worst = 0.0;
  PhaseState x = x0;
  const double ha =
      integrate_observe(sc, sys, x, h, t_final, 1, counter, [&](const PhaseState&, double e) {
        if (!have_e0) {
          e0 = e;
          have_e0 = true;
          if (e0 == 0.0)
            throw std::domain_error("max_rel_energy_error: E(0) = 0, metric undefined");
          return;
        }
        worst = std::max(worst, std::abs((e - e0) / e0));
      });
  if (h_actual_out) *h_actual_out = ha;
  return worst;
}

// One benchmark grid point.  Divergent runs are kept: value = +inf, counters
// reflect the work done before blow-up.
inline ExperimentResult run_one(const SplittingScheme& sc, const ProblemSpec& ps, double h,
                                std::uint64_t seed, double t_final, Metric metric) {
  ProblemSpec local = ps;
  local.seed = seed;
  auto [sys, x0] = make_problem(local);

  ExperimentResult row;
  row.scheme = sc.name;
  row.problem = sys.label;
  row.seed = seed;
  row.h_requested = h;
  row.h_actual = detail::planned_step(h, t_final);
  row.metric = to_string(metric);

  const auto tic = std::chrono::steady_clock::now();
  StepCounter counter;
  try {
    switch (metric) {
      case Metric::max_rel_energy_error:
      case Metric::mean_log10_energy_error: {
        const double worst = max_rel_energy_error_run(sc, sys, x0, h, t_final, counter);
        row.value = (metric == Metric::max_rel_energy_error) ? worst : std::log10(worst);
        break;
      }
      case Metric::final_state_error: {
        PhaseState x = x0;
        StepCounter dummy;
        integrate_observe(sc, sys, x, h, t_final, 0, counter, [](const PhaseState&, double) {});
        PhaseState ref;
        if (local.kind == ProblemKind::harmonic) {
          ref = harmonic_exact(x0, t_final);
        } else {
          PhaseState r = x0;
          integrate_observe(sc, sys, r, row.h_actual / 8.0, t_final, 0, dummy,
                            [](const PhaseState&, double) {});
          ref = r;
        }
        row.value = detail::state_distance(x, ref);
        break;
      }
    }
    row.steps = counter.steps;
    row.force_evals = counter.force_evals;
  } catch (const divergence_error& e) {
    row.diverged = true;
    row.value = std::numeric_limits<double>::infinity();
    row.steps = e.steps_completed();
    row.force_evals = e.force_evals();
  }
  row.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - tic).count();
  return row;
}

// Full (scheme x h x seed) grid, parallel up to spec.jobs, deterministically
// sorted by (scheme, h, seed).
inline std::vector<ExperimentResult> run_efficiency(const ExperimentSpec& spec) {
  validate_experiment_spec(spec);
  std::vector<std::uint64_t> seeds = spec.seeds;
  if (seeds.empty()) seeds.push_back(spec.problem.seed);

  struct Task {
    const SplittingScheme* sc;
    double h;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (const auto& sc : spec.schemes)
    for (double h : spec.h_grid)
      for (std::uint64_t seed : seeds) tasks.push_back({&sc, h, seed});

  std::vector<ExperimentResult> rows(tasks.size());
  parallel_for(tasks.size(), spec.jobs, [&](std::size_t i) {
    rows[i] = run_one(*tasks[i].sc, spec.problem, tasks[i].h, tasks[i].seed, spec.t_final,
                      spec.metric);
  });
  std::sort(rows.begin(), rows.end(), [](const ExperimentResult& a, const ExperimentResult& b) {
    if (a.scheme != b.scheme) return a.scheme < b.scheme;
    if (a.h_requested != b.h_requested) return a.h_requested < b.h_requested;
    return a.seed < b.seed;
  });
  return rows;
}

inline bool all_diverged(const std::vector<ExperimentResult>& rows) {
  if (rows.empty()) return false;
  for (const auto& r : rows)
    if (!r.diverged) return false;
  return true;
}

// --- ensemble summary -------------------------------------------------------------

// mean over simulations of log10(max relative energy error)
inline double mean_error(const std::vector<double>& max_rel_errors) {
  if (max_rel_errors.empty()) throw std::domain_error("mean_error: empty ensemble");
  double acc = 0.0;
  for (double e : max_rel_errors) {
    if (!(e > 0.0) || !std::isfinite(e))
      throw std::domain_error("mean_error: per-run errors must be finite and positive");
    acc += std::log10(e);
  }
  return acc / static_cast<double>(max_rel_errors.size());
}

struct EnsembleSummary {
  std::string scheme;
  std::string problem;
  std::size_t n_sims = 0;
  double h_requested = 0.0;
  double t_final = 0.0;
  double mean_log10_error = 0.0;
};

// Per-seed rows (metric max_rel_energy_error) plus the per-(scheme, h) summary.
// The summary holds no wall-clock data, so its serialized form is byte-stable.
inline std::vector<EnsembleSummary> summarize_ensemble(const ExperimentSpec& spec,
                                                       const std::vector<ExperimentResult>& rows) {
  std::vector<EnsembleSummary> out;
  for (const auto& sc : spec.schemes) {
    for (double h : spec.h_grid) {
      std::vector<double> errs;
      for (const auto& r : rows)
        if (r.scheme == sc.name && r.h_requested == h && !r.diverged) errs.push_back(r.value);
      if (errs.empty()) continue;
      EnsembleSummary s;
      s.scheme = sc.name;
      s.problem = rows.front().problem;
      s.n_sims = errs.size();
      s.h_requested = h;
      s.t_final = spec.t_final;
      s.mean_log10_error = mean_error(errs);
      out.push_back(s);
    }
  }
  return out;
}

// --- equal-cost amplitude sweep -----------------------------------------------------

inline constexpr double kAlphaThresholdInner = 0.7303;  // bounded-motion marker
inline constexpr double kAlphaThresholdOuter = 1.0328;  // escape-energy marker

// Force evaluations per unit time shared by all schemes: h = stages / cost_rate.
inline double default_sweep_cost_rate() { return std::pow(10.0, 1.25); }

struct AlphaSweepRow {
  std::string scheme;
  double alpha = 0.0;
  double h = 0.0;
  long long steps = 0;
  long long force_evals = 0;
  double max_rel_energy_error = 0.0;
  double wall_time_s = 0.0;
  bool diverged = false;
};

struct AlphaSweepResult {
  double cost_rate = 0.0;
  double t_final = 0.0;
  double threshold_inner = kAlphaThresholdInner;
  double threshold_outer = kAlphaThresholdOuter;
  std::vector<AlphaSweepRow> rows;
};

inline AlphaSweepResult run_alpha_sweep(const std::vector<SplittingScheme>& schemes,
                                        const std::vector<double>& alphas, double t_final,
                                        double cost_rate = 0.0, int jobs = 1) {
  if (schemes.empty()) throw std::invalid_argument("alpha sweep: no schemes given");
  if (alphas.empty()) throw std::invalid_argument("alpha sweep: empty alpha grid");
  for (double a : alphas)
    if (!(a > 0.0) || a > 1.2)
      throw std::invalid_argument("alpha sweep: amplitudes must lie in (0, 1.2]");
  if (!(t_final > 0.0)) throw std::invalid_argument("alpha sweep: t_final must be positive");
  if (cost_rate <= 0.0) cost_rate = default_sweep_cost_rate();

  AlphaSweepResult out;
  out.cost_rate = cost_rate;
  out.t_final = t_final;

  struct Task {
    const SplittingScheme* sc;
    double alpha;
  };
  std::vector<Task> tasks;
  for (const auto& sc : schemes)
    for (double a : alphas) tasks.push_back({&sc, a});
  out.rows.resize(tasks.size());

  const SeparableSystem sys = henon_heiles();
  parallel_for(tasks.size(), jobs, [&](std::size_t i) {
    const auto& [sc, alpha] = tasks[i];
    AlphaSweepRow row;
    row.scheme = sc->name;
    row.alpha = alpha;
    row.h = static_cast<double>(sc->stages) / cost_rate;
    const auto tic = std::chrono::steady_clock::now();
    StepCounter counter;
    try {
      row.max_rel_energy_error =
          max_rel_energy_error_run(*sc, sys, hh_initial(alpha), row.h, t_final, counter, &row.h);
    } catch (const divergence_error& e) {
      row.diverged = true;
      row.max_rel_energy_error = std::numeric_limits<double>::infinity();
    }
    row.steps = counter.steps;
    row.force_evals = counter.force_evals;
    row.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - tic).count();
    out.rows[i] = row;
  });
  std::sort(out.rows.begin(), out.rows.end(), [](const AlphaSweepRow& a, const AlphaSweepRow& b) {
    if (a.scheme != b.scheme) return a.scheme < b.scheme;
    return a.alpha < b.alpha;
  });
  return out;
}

// --- long-run drift ------------------------------------------------------------------

struct LongrunResult {
  std::string scheme;
  std::string problem;
  double h_actual = 0.0;
  long long steps = 0;
  long long force_evals = 0;
  double e0 = 0.0;
  std::vector<double> decade_t;        // 1, 10, 100, ... up to >= t_final
  std::vector<double> decade_max_rel;  // max rel energy error within each decade
  double first_half_max = 0.0;
  double second_half_max = 0.0;
  double drift_statistic = 0.0;  // second-half / first-half max ratio
  double max_rel_overall = 0.0;
  double wall_time_s = 0.0;
};

// Long integration logging the max relative energy error per decade of time
// ((0,1], (1,10], ...).  The drift statistic compares the two halves of the
// run: a value near 1 means the error stays bounded instead of accumulating.
inline LongrunResult run_longrun(const SplittingScheme& sc, const ProblemSpec& ps, double h,
                                 double t_final, long long sample_every = 1) {
  if (!(t_final >= 1e4))
    throw std::invalid_argument("longrun: t_final must be >= 1e4 (use run/bench for short runs)");
  auto [sys, x0] = make_problem(ps);

  LongrunResult res;
  res.scheme = sc.name;
  res.problem = sys.label;

  int n_decades = 0;
  while (std::pow(10.0, n_decades) < t_final) ++n_decades;
  ++n_decades;  // include the boundary decade
  res.decade_t.resize(static_cast<std::size_t>(n_decades));
  res.decade_max_rel.assign(static_cast<std::size_t>(n_decades), 0.0);
  for (int m = 0; m < n_decades; ++m) res.decade_t[static_cast<std::size_t>(m)] = std::pow(10.0, m);

  const auto tic = std::chrono::steady_clock::now();
  StepCounter counter;
  bool have_e0 = false;
  PhaseState x = x0;
  res.h_actual = integrate_observe(
      sc, sys, x, h, t_final, sample_every, counter, [&](const PhaseState& s, double e) {
        if (!have_e0) {
          res.e0 = e;
          have_e0 = true;
          if (res.e0 == 0.0) throw std::domain_error("longrun: E(0) = 0, metric undefined");
          return;
        }
        const double rel = std::abs((e - res.e0) / res.e0);
        res.max_rel_overall = std::max(res.max_rel_overall, rel);
        if (s.t <= 0.5 * t_final)
          res.first_half_max = std::max(res.first_half_max, rel);
        else
          res.second_half_max = std::max(res.second_half_max, rel);
        int m = 0;
        while (res.decade_t[static_cast<std::size_t>(m)] < s.t && m + 1 < n_decades) ++m;
        res.decade_max_rel[static_cast<std::size_t>(m)] =
            std::max(res.decade_max_rel[static_cast<std::size_t>(m)], rel);
      });
  res.steps = counter.steps;
  res.force_evals = counter.force_evals;
  res.drift_statistic =
      (res.first_half_max > 0.0) ? res.second_half_max / res.first_half_max
                                 : std::numeric_limits<double>::infinity();
  res.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - tic).count();
  return res;
}

// --- serialization ----------------------------------------------------------------------

inline constexpr const char* kResultCsvHeader =
    "scheme,problem,seed,h_requested,h_actual,steps,force_evals,metric,value,wall_time_s";

inline std::string results_to_csv(const std::vector<ExperimentResult>& rows) {
  std::string out = kResultCsvHeader;
  out += "\n";
  for (const auto& r : rows) {
    out += r.scheme + "," + r.problem + "," + std::to_string(r.seed) + "," +
           detail::g17(r.h_requested) + "," + detail::g17(r.h_actual) + "," +
           std::to_string(r.steps) + "," + std::to_string(r.force_evals) + "," + r.metric + "," +
           detail::g17(r.value) + "," + detail::g17(r.wall_time_s) + "\n";
  }
  return out;
}

inline std::string results_to_json(const std::vector<ExperimentResult>& rows) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out += "  {\"scheme\": " + detail::json_quote(r.scheme) +
           ", \"problem\": " + detail::json_quote(r.problem) +
           ", \"seed\": " + std::to_string(r.seed) +
           ", \"h_requested\": " + detail::g17(r.h_requested) +
           ", \"h_actual\": " + detail::g17(r.h_actual) + ", \"steps\": " + std::to_string(r.steps) +
           ", \"force_evals\": " + std::to_string(r.force_evals) +
           ", \"metric\": " + detail::json_quote(r.metric) + ", \"value\": " +
           (std::isfinite(r.value) ? detail::g17(r.value) : detail::json_quote("inf")) +
           ", \"wall_time_s\": " + detail::g17(r.wall_time_s) + "}";
    out += (i + 1 < rows.size()) ? ",\n" : "\n";
  }
  out += "]\n";
  return out;
}

inline std::string ensemble_to_csv(const std::vector<EnsembleSummary>& rows) {
  std::string out = "scheme,problem,n_sims,h_requested,t_final,mean_log10_max_rel_energy_error\n";
  for (const auto& s : rows) {
    out += s.scheme + "," + s.problem + "," + std::to_string(s.n_sims) + "," +
           detail::g17(s.h_requested) + "," + detail::g17(s.t_final) + "," +
           detail::g17(s.mean_log10_error) + "\n";
  }
  return out;
}

inline std::string alpha_sweep_to_csv(const AlphaSweepResult& res) {
  std::string out;
  out += "# cost_rate_force_evals_per_unit_time," + detail::g17(res.cost_rate) + "\n";
  out += "# alpha_threshold_inner," + detail::g17(res.threshold_inner) + "\n";
  out += "# alpha_threshold_outer," + detail::g17(res.threshold_outer) + "\n";
  out += "# t_final," + detail::g17(res.t_final) + "\n";
  out += "scheme,alpha,h,steps,force_evals,max_rel_energy_error,wall_time_s\n";
  for (const auto& r : res.rows) {
    out += r.scheme + "," + detail::g17(r.alpha) + "," + detail::g17(r.h) + "," +
           std::to_string(r.steps) + "," + std::to_string(r.force_evals) + "," +
           detail::g17(r.max_rel_energy_error) + "," + detail::g17(r.wall_time_s) + "\n";
  }
  return out;
}

inline std::string longrun_to_csv(const LongrunResult& res) {
  std::string out;
  out += "# scheme," + res.scheme + "\n";
  out += "# problem," + res.problem + "\n";
  out += "# h_actual," + detail::g17(res.h_actual) + "\n";
  out += "# steps," + std::to_string(res.steps) + "\n";
  out += "# force_evals," + std::to_string(res.force_evals) + "\n";
  out += "# max_rel_energy_error," + detail::g17(res.max_rel_overall) + "\n";
  out += "# drift_statistic," + detail::g17(res.drift_statistic) + "\n";
  out += "t_decade,max_rel_energy_error\n";
  for (std::size_t i = 0; i < res.decade_t.size(); ++i)
    out += detail::g17(res.decade_t[i]) + "," + detail::g17(res.decade_max_rel[i]) + "\n";
  return out;
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << text;
}

}  // namespace polysplit
