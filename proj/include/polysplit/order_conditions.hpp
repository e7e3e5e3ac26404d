#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "integrator.hpp"
#include "scheme.hpp"
#include "systems.hpp"

namespace polysplit {

// Low-order coefficients of log(Psi_h) in the graded commutator basis
//   grade 1:  A, B          -> w11, w12 (both 1 for a consistent scheme)
//   grade 2:  [A,B]         -> w21      (0 for palindromic schemes)
//   grade 3:  [A,[A,B]]     -> w31
//             [B,[B,A]]     -> w32
// The second grade-3 element is oriented as [B,[B,A]]; under that orientation
// the closed sums below coincide with the series expansion for arbitrary
// coefficient sequences (see the word-series oracle in the tests).
struct OmegaReport {
  double w11 = 0.0;
  double w12 = 0.0;
  double w21 = 0.0;
  double w31 = 0.0;
  double w32 = 0.0;
};

namespace detail {

// Sums for an ABA-ordered execution a_0 b_0 a_1 ... b_{s-1} a_s:
// a_i precedes b_j iff i <= j, and b_i precedes a_j iff i < j.
inline OmegaReport omega_aba(const std::vector<double>& a, const std::vector<double>& b) {
  OmegaReport w;
  double sa = 0.0, sb = 0.0;
  for (double x : a) sa += x;
  for (double x : b) sb += x;
  w.w11 = sa;
  w.w12 = sb;

  // w21 = (1/2) w11 w12 - sum_{i<j} b_i a_j
  double cross = 0.0, b_before = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    cross += a[j] * b_before;           // b_0..b_{j-1} precede a_j
    if (j < b.size()) b_before += b[j];
  }
  w.w21 = 0.5 * sa * sb - cross;

  // w31 = (1/12) w11^2 w12 - (1/2) sum_{i<=j<k} a_i b_j a_k
  double triple_aba = 0.0, a_upto = 0.0;
  for (std::size_t j = 0; j < b.size(); ++j) {
    a_upto += a[j];                     // a_0..a_j precede b_j
    triple_aba += b[j] * a_upto * (sa - a_upto);
  }
  w.w31 = sa * sa * sb / 12.0 - 0.5 * triple_aba;

  // w32 = (1/12) w11 w12^2 - (1/2) sum_{i<j<=k} b_i a_j b_k
  double triple_bab = 0.0;
  b_before = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    triple_bab += a[j] * b_before * (sb - b_before);
    if (j < b.size()) b_before += b[j];
  }
  w.w32 = sa * sb * sb / 12.0 - 0.5 * triple_bab;
  return w;
}

}  // namespace detail

// BAB schemes are handled by the role swap A <-> B: the execution sequence is
// ABA-ordered in the swapped letters, which maps [A,B] -> -[A,B] and exchanges
// [A,[A,B]] with [B,[B,A]].
inline OmegaReport omega(const SplittingScheme& sc) {
  if (sc.kind == SchemeKind::aba) return detail::omega_aba(sc.a, sc.b);
  OmegaReport sw = detail::omega_aba(sc.b, sc.a);
  OmegaReport w;
  w.w11 = sw.w12;
  w.w12 = sw.w11;
  w.w21 = -sw.w21;
  w.w31 = sw.w32;
  w.w32 = sw.w31;
  return w;
}

// Reference tables for the splitting order-condition counts.
// kIndependentCommutators[r-1]: number of independent conditions contributed
// at grade r by each design class (plus the symmetric-composition count);
// kMinimumStages: minimum stage counts needed to meet all conditions up to the
// given order.  Used for sanity checks such as stages(scheme) >= minimum for
// its design class.
struct CommutatorCounts {
  int order;
  int sym_composition;  // symmetric compositions of a 2nd-order kernel
  int general;
  int rkn;      // quadratic kinetic energy
  int cubic;    // force of polynomial degree 2
  int quartic;  // force of polynomial degree 3
};

inline constexpr std::array<CommutatorCounts, 9> kIndependentCommutators{{
    {1, 1, 2, 2, 2, 2},
    {2, 0, 1, 1, 1, 1},
    {3, 1, 2, 2, 2, 2},
    {4, 1, 3, 2, 2, 2},
    {5, 2, 6, 4, 3, 4},
    {6, 2, 9, 5, 3, 4},
    {7, 4, 18, 10, 6, 8},
    {8, 5, 30, 14, 6, 10},
    {9, 8, 56, 25, 10, 18},
}};

struct MinStages {
  int order;
  int sym_composition;
  int general;
  int rkn;
  int cubic;
  int quartic;
};

inline constexpr std::array<MinStages, 5> kMinimumStages{{
    {2, 1, 1, 1, 1, 1},
    {4, 3, 3, 3, 3, 3},
    {6, 7, 9, 7, 6, 7},
    {8, 15, 27, 17, 12, 15},
    {10, 31, 83, 42, 22, 33},
}};

inline int minimum_stages(int order, DesignClass design) {
  for (const auto& row : kMinimumStages)
    if (row.order == order) {
      switch (design) {
        case DesignClass::general: return row.general;
        case DesignClass::rkn: return row.rkn;
        case DesignClass::cubic: return row.cubic;
        case DesignClass::quartic: return row.quartic;
      }
    }
  throw std::invalid_argument("minimum_stages: no table row for order " + std::to_string(order));
}

// --- empirical convergence order ----------------------------------------------

struct EmpiricalOrderResult {
  double slope = 0.0;
  std::vector<double> h_used;
  std::vector<double> errors;  // final-state error in the max norm, per h
};

using ExactFlow = std::function<PhaseState(const PhaseState&, double)>;

inline constexpr double kOrderWindowLo = 1e-14;  // roundoff floor
inline constexpr double kOrderWindowHi = 1e-1;   // beyond the asymptotic regime

// Least-squares slope of log2(error) against log2(h) over a geometric h list
// (ratio 2, >= 4 entries recommended).  The reference state at t_probe is the
// analytic flow when supplied, otherwise a self-reference run at h_min/8.
// Errors outside [1e-14, 1e-1] raise window_error: the h list needs
// recalibration before the slope means anything.
inline EmpiricalOrderResult empirical_order(const SplittingScheme& sc,
                                            const SeparableSystem& sys, const PhaseState& x0,
                                            const std::vector<double>& h_list, double t_probe,
                                            const ExactFlow& exact = {}) {
  if (h_list.size() < 2)
    throw std::invalid_argument("empirical_order: need at least two step sizes");
  if (!(t_probe > 0.0)) throw std::invalid_argument("empirical_order: t_probe must be positive");

  PhaseState ref;
  if (exact) {
    ref = exact(x0, t_probe);
  } else {
    const double h_min = *std::min_element(h_list.begin(), h_list.end());
    ref = integrate(sc, sys, x0, h_min / 8.0, t_probe, 0).states.back();
  }

  EmpiricalOrderResult res;
  for (double h : h_list) {
    Trajectory tr = integrate(sc, sys, x0, h, t_probe, 0);
    const PhaseState& y = tr.states.back();
    double err = 0.0;
    for (std::size_t i = 0; i < y.q.size(); ++i) err = std::max(err, std::abs(y.q[i] - ref.q[i]));
    for (std::size_t i = 0; i < y.p.size(); ++i) err = std::max(err, std::abs(y.p[i] - ref.p[i]));
    // regress on the realized step (t_probe/steps), not the request: the
    // snapping to an integer step count distorts coarse grids noticeably
    res.h_used.push_back(tr.h_actual);
    res.errors.push_back(err);
  }

  for (std::size_t i = 0; i < res.errors.size(); ++i) {
    if (!(res.errors[i] >= kOrderWindowLo) || !(res.errors[i] <= kOrderWindowHi))
      throw window_error("empirical_order: error " + std::to_string(res.errors[i]) + " at h = " +
                         std::to_string(res.h_used[i]) +
                         " lies outside [1e-14, 1e-1]; recalibrate the h list");
  }

  // least squares on (log2 h, log2 err)
  const std::size_t n = h_list.size();
  double mx = 0.0, my = 0.0;
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = std::log2(res.h_used[i]);
    ys[i] = std::log2(res.errors[i]);
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  res.slope = sxy / sxx;
  return res;
}

// --- design-class guard ---------------------------------------------------------

struct GuardResult {
  bool ok = true;
  std::string message;
};

// The cubic/quartic designs drop order conditions that vanish only when the
// force has polynomial degree <= 2 resp. 3.  Running such a scheme on a
// higher-degree system silently reduces its order, so warn.
inline GuardResult design_class_guard(const SplittingScheme& sc, const SeparableSystem& sys) {
  int force_degree_cap = -1;  // -1: no assumption
  if (sc.design == DesignClass::cubic) force_degree_cap = 2;
  if (sc.design == DesignClass::quartic) force_degree_cap = 3;
  const int system_force_degree = sys.degree - 1;
  GuardResult res;
  if (force_degree_cap >= 0 && system_force_degree > force_degree_cap) {
    res.ok = false;
    res.message = "scheme '" + sc.name + "' assumes a force of degree <= " +
                  std::to_string(force_degree_cap) + " but system '" + sys.label +
                  "' has force degree " + std::to_string(system_force_degree) +
                  "; the nominal order " + std::to_string(sc.order) + " will not be reached";
  }
  return res;
}

}  // namespace polysplit
