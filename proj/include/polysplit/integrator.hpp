#pragma once

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "errors.hpp"
#include "scheme.hpp"
#include "systems.hpp"

namespace polysplit {

struct StepCounter {
  long long steps = 0;
  long long force_evals = 0;
};

struct Trajectory {
  double h_actual = 0.0;
  StepCounter counter;
  std::vector<double> times;
  std::vector<double> energies;
  std::vector<PhaseState> states;
};

// Exact flow of H_A = |p|^2/(2m): free motion.  Advances the bookkeeping time;
// kicks do not, so a consistent scheme moves t by exactly h per step.
inline void drift(PhaseState& s, double tau, double mass = 1.0) {
  const double c = tau / mass;
  for (std::size_t i = 0; i < s.q.size(); ++i) s.q[i] += c * s.p[i];
  s.t += tau;
}

inline void apply_kick(PhaseState& s, const std::vector<double>& g, double tau, double mass) {
  for (std::size_t i = 0; i < s.p.size(); ++i) s.p[i] += tau * mass * g[i];
}

// Exact flow of H_B = V(q): p <- p + tau*m*g(q) with g = -(1/m) grad V.
inline void kick(const SeparableSystem& sys, PhaseState& s, double tau) {
  std::vector<double> g(static_cast<std::size_t>(sys.dim));
  sys.force(s.q, g);
  apply_kick(s, g, tau, sys.mass);
}

namespace detail {

inline bool finite_state(const PhaseState& s) {
  for (double x : s.q)
    if (!std::isfinite(x)) return false;
  for (double x : s.p)
    if (!std::isfinite(x)) return false;
  return true;
}

inline void check_dims(const SeparableSystem& sys, const PhaseState& s) {
  if (static_cast<int>(s.q.size()) != sys.dim || static_cast<int>(s.p.size()) != sys.dim)
    throw std::invalid_argument("state dimension does not match system");
}

}  // namespace detail

// One full step of the composition, coefficients applied in execution order:
// ABA runs drift(a0 h), kick(b0 h), ..., drift(as h); BAB starts and ends with
// a kick.  Palindromy makes the two reading directions identical.
inline PhaseState step(const SplittingScheme& sc, const SeparableSystem& sys, PhaseState x,
                       double h) {
  detail::check_dims(sys, x);
  std::vector<double> g(static_cast<std::size_t>(sys.dim));
  const int s = sc.stages;
  if (sc.kind == SchemeKind::aba) {
    for (int j = 0; j < s; ++j) {
      drift(x, sc.a[static_cast<std::size_t>(j)] * h, sys.mass);
      sys.force(x.q, g);
      apply_kick(x, g, sc.b[static_cast<std::size_t>(j)] * h, sys.mass);
    }
    drift(x, sc.a[static_cast<std::size_t>(s)] * h, sys.mass);
  } else {
    sys.force(x.q, g);
    apply_kick(x, g, sc.b[0] * h, sys.mass);
    for (int j = 0; j < s; ++j) {
      drift(x, sc.a[static_cast<std::size_t>(j)] * h, sys.mass);
      sys.force(x.q, g);
      apply_kick(x, g, sc.b[static_cast<std::size_t>(j) + 1] * h, sys.mass);
    }
  }
  return x;
}

// Core loop shared by the storing and streaming front ends.  h is adjusted to
// divide t_final exactly (N = round(t_final/h) steps of h' = t_final/N).  The
// observer sees the initial state and every sample boundary; sample_every <= 0
// keeps endpoints only.
//
// FSAL accounting: drifts are free, so an ABA step always costs s force
// evaluations.  For BAB the closing kick's force value is still valid at the
// next step's opening kick (kicks leave q untouched), so only the very first
// step pays s+1; force_evals = s*N + 1.
template <class Observer>
inline double integrate_observe(const SplittingScheme& sc, const SeparableSystem& sys,
                                PhaseState& x, double h, double t_final, long long sample_every,
                                StepCounter& counter, Observer&& observe) {
  if (!(h > 0.0)) throw std::invalid_argument("integrate: h must be positive");
  if (!(t_final > 0.0)) throw std::invalid_argument("integrate: t_final must be positive");
  detail::check_dims(sys, x);

  long long n_steps = std::llround(t_final / h);
  if (n_steps < 1) n_steps = 1;
  const double ha = t_final / static_cast<double>(n_steps);
  const int s = sc.stages;

  std::vector<double> g(static_cast<std::size_t>(sys.dim));
  bool g_cached = false;

  observe(x, energy(sys, x));
  for (long long k = 0; k < n_steps; ++k) {
    if (sc.kind == SchemeKind::aba) {
      for (int j = 0; j < s; ++j) {
        drift(x, sc.a[static_cast<std::size_t>(j)] * ha, sys.mass);
        sys.force(x.q, g);
        ++counter.force_evals;
        apply_kick(x, g, sc.b[static_cast<std::size_t>(j)] * ha, sys.mass);
      }
      drift(x, sc.a[static_cast<std::size_t>(s)] * ha, sys.mass);
    } else {
      if (!g_cached) {
        sys.force(x.q, g);
        ++counter.force_evals;
      }
      apply_kick(x, g, sc.b[0] * ha, sys.mass);
      for (int j = 0; j < s; ++j) {
        drift(x, sc.a[static_cast<std::size_t>(j)] * ha, sys.mass);
        sys.force(x.q, g);
        ++counter.force_evals;
        apply_kick(x, g, sc.b[static_cast<std::size_t>(j) + 1] * ha, sys.mass);
      }
      g_cached = true;  // q unchanged by the closing kick, so g survives the boundary
    }
    ++counter.steps;
    if (!detail::finite_state(x))
      throw divergence_error(x.t, counter.steps, counter.force_evals);
    const bool last = (k + 1 == n_steps);
    if (last || (sample_every > 0 && (k + 1) % sample_every == 0)) observe(x, energy(sys, x));
  }
  return ha;
}

inline Trajectory integrate(const SplittingScheme& sc, const SeparableSystem& sys,
                            const PhaseState& x0, double h, double t_final,
                            long long sample_every = 1) {
  Trajectory tr;
  PhaseState x = x0;
  tr.h_actual = integrate_observe(sc, sys, x, h, t_final, sample_every, tr.counter,
                                  [&](const PhaseState& s, double e) {
                                    tr.times.push_back(s.t);
                                    tr.energies.push_back(e);
                                    tr.states.push_back(s);
                                  });
  return tr;
}

// || psi_{-h}(psi_h(x)) - x ||_inf over (q, p); zero up to roundoff for a
// palindromic scheme.
inline double symmetry_defect(const SplittingScheme& sc, const SeparableSystem& sys,
                              const PhaseState& x, double h) {
  PhaseState y = step(sc, sys, x, h);
  PhaseState z = step(sc, sys, y, -h);
  double d = 0.0;
  for (std::size_t i = 0; i < x.q.size(); ++i) d = std::max(d, std::abs(z.q[i] - x.q[i]));
  for (std::size_t i = 0; i < x.p.size(); ++i) d = std::max(d, std::abs(z.p[i] - x.p[i]));
  return d;
}

// Max-entry norm of J^T Omega J - Omega for an arbitrary phase-space map,
// with J from central differences (perturbation 1e-6 scaled by the state
// magnitude).  Exactly symplectic maps leave a defect of pure
// finite-difference noise, a few orders below the 1e-6 acceptance bound;
// a genuinely non-symplectic map scores its |J^T Omega J - Omega| size.
template <class Map>
inline double map_symplecticity_defect(Map&& map, const PhaseState& x) {
  const int d = static_cast<int>(x.q.size());
  const int n = 2 * d;
  double xmax = 0.0;
  for (double v : x.q) xmax = std::max(xmax, std::abs(v));
  for (double v : x.p) xmax = std::max(xmax, std::abs(v));
  const double eps = 1e-6 * (1.0 + xmax);

  auto coord = [&](PhaseState& s, int i) -> double& {
    return i < d ? s.q[static_cast<std::size_t>(i)] : s.p[static_cast<std::size_t>(i - d)];
  };

  // J[r][c] = d out_r / d in_c, rows/cols ordered (q, p)
  std::vector<std::vector<double>> J(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(n)));
  for (int c = 0; c < n; ++c) {
    PhaseState xp = x, xm = x;
    coord(xp, c) += eps;
    coord(xm, c) -= eps;
    PhaseState yp = map(xp);
    PhaseState ym = map(xm);
    for (int r = 0; r < n; ++r)
      J[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
          (coord(yp, r) - coord(ym, r)) / (2.0 * eps);
  }

  auto omega = [&](int i, int j) -> double {
    if (j == i + d) return 1.0;
    if (i == j + d) return -1.0;
    return 0.0;
  };

  double defect = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // (J^T Omega J)_{ij} = sum_k J_{ki} (Omega J)_{kj}
      double acc = 0.0;
      for (int k = 0; k < d; ++k)
        acc += J[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] *
               J[static_cast<std::size_t>(k + d)][static_cast<std::size_t>(j)];
      for (int k = d; k < n; ++k)
        acc -= J[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] *
               J[static_cast<std::size_t>(k - d)][static_cast<std::size_t>(j)];
      defect = std::max(defect, std::abs(acc - omega(i, j)));
    }
  return defect;
}

inline double symplecticity_defect(const SplittingScheme& sc, const SeparableSystem& sys,
                                   const PhaseState& x, double h) {
  detail::check_dims(sys, x);
  return map_symplecticity_defect([&](const PhaseState& s) { return step(sc, sys, s, h); }, x);
}

}  // namespace polysplit
