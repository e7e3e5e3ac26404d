#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rng.hpp"

namespace polysplit {

struct PhaseState {
  std::vector<double> q;
  std::vector<double> p;
  double t = 0.0;
};

// Separable Hamiltonian H = |p|^2/(2m) + V(q).  force fills g = -(1/m) grad V,
// the acceleration of q'' = g(q).  degree is the polynomial degree of V (used
// by the design-class guard); label feeds the benchmark CSV problem column.
struct SeparableSystem {
  int dim = 0;
  double mass = 1.0;
  int degree = 0;
  std::string label;
  std::function<double(const std::vector<double>&)> potential;
  std::function<void(const std::vector<double>&, std::vector<double>&)> force;
};

inline double energy(const SeparableSystem& sys, const PhaseState& s) {
  if (static_cast<int>(s.q.size()) != sys.dim || static_cast<int>(s.p.size()) != sys.dim)
    throw std::invalid_argument("energy: state dimension does not match system");
  double t = 0.0;
  for (double pi : s.p) t += pi * pi;
  return 0.5 * t / sys.mass + sys.potential(s.q);
}

// --- planar cubic benchmark -------------------------------------------------

// V(q) = (q1^2 + q2^2)/2 + q1^2 q2 - q2^3/3, m = 1.
inline SeparableSystem henon_heiles() {
  SeparableSystem sys;
  sys.dim = 2;
  sys.mass = 1.0;
  sys.degree = 3;
  sys.label = "henon_heiles";
  sys.potential = [](const std::vector<double>& q) {
    return 0.5 * (q[0] * q[0] + q[1] * q[1]) + q[0] * q[0] * q[1] - q[1] * q[1] * q[1] / 3.0;
  };
  sys.force = [](const std::vector<double>& q, std::vector<double>& g) {
    g[0] = -q[0] - 2.0 * q[0] * q[1];
    g[1] = -q[1] - q[0] * q[0] + q[1] * q[1];
  };
  return sys;
}

// One-parameter family of initial conditions (alpha/2, 0, 0, alpha/4) with
// energy 5 alpha^2/32; alpha ~ 0.7303 reaches E = 1/12 and alpha ~ 1.0328 the
// escape energy E = 1/6.
inline PhaseState hh_initial(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("hh_initial: alpha must be positive");
  PhaseState s;
  s.q = {0.5 * alpha, 0.0};
  s.p = {0.0, 0.25 * alpha};
  return s;
}

// --- oracle oscillator -------------------------------------------------------

// V = |q|^2/2: every mode rotates at unit frequency, so the exact flow is
// available for convergence oracles.
inline SeparableSystem harmonic_oscillator(int dim) {
  if (dim < 1) throw std::invalid_argument("harmonic_oscillator: dim must be >= 1");
  SeparableSystem sys;
  sys.dim = dim;
  sys.mass = 1.0;
  sys.degree = 2;
  sys.label = "harmonic_d" + std::to_string(dim);
  sys.potential = [](const std::vector<double>& q) {
    double v = 0.0;
    for (double qi : q) v += qi * qi;
    return 0.5 * v;
  };
  sys.force = [](const std::vector<double>& q, std::vector<double>& g) {
    for (std::size_t i = 0; i < q.size(); ++i) g[i] = -q[i];
  };
  return sys;
}

inline PhaseState harmonic_exact(const PhaseState& s0, double t) {
  PhaseState s = s0;
  const double dt = t - s0.t;
  const double c = std::cos(dt), sn = std::sin(dt);
  for (std::size_t i = 0; i < s.q.size(); ++i) {
    s.q[i] = c * s0.q[i] + sn * s0.p[i];
    s.p[i] = c * s0.p[i] - sn * s0.q[i];
  }
  s.t = t;
  return s;
}

// --- random polynomial potentials --------------------------------------------

// V(q) = sum_ij mu_ij q_i q_j + sum_ijk nu_ijk q_i q_j q_k
//        (+ sum_ijkl rho_ijkl q_i q_j q_k q_l for degree 4).
// mu_ii = 1/2 pins the harmonic part; every other entry is an independent
// uniform draw on [-1/2, 1/2].  Tensors are used exactly as drawn (no
// symmetrization), so the gradient sums over index positions.
struct RandomPotentialSpec {
  int dim = 1;
  std::uint64_t seed = 0;
  int degree = 3;  // 3 (cubic) or 4 (quartic)
  std::vector<double> mu;   // dim^2, row-major
  std::vector<double> nu;   // dim^3
  std::vector<double> rho;  // dim^4, degree 4 only
};

// Draw order is part of the reproducibility contract: mu row-major with the
// diagonal skipped, then nu, then rho, each in row-major index order, all from
// the one stream.
inline RandomPotentialSpec draw_random_potential(SplitMix64& rng, int dim, int degree,
                                                 std::uint64_t seed_label = 0) {
  if (dim < 1) throw std::invalid_argument("draw_random_potential: dim must be >= 1");
  if (degree != 3 && degree != 4)
    throw std::invalid_argument("draw_random_potential: degree must be 3 or 4");
  RandomPotentialSpec spec;
  spec.dim = dim;
  spec.seed = seed_label;
  spec.degree = degree;
  const std::size_t d = static_cast<std::size_t>(dim);
  spec.mu.assign(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      spec.mu[i * d + j] = (i == j) ? 0.5 : rng.uniform(-0.5, 0.5);
  spec.nu.resize(d * d * d);
  for (auto& x : spec.nu) x = rng.uniform(-0.5, 0.5);
  if (degree == 4) {
    spec.rho.resize(d * d * d * d);
    for (auto& x : spec.rho) x = rng.uniform(-0.5, 0.5);
  }
  return spec;
}

inline RandomPotentialSpec draw_random_potential(int dim, std::uint64_t seed, int degree) {
  SplitMix64 rng(seed);
  return draw_random_potential(rng, dim, degree, seed);
}

inline SeparableSystem polynomial_system(const RandomPotentialSpec& spec) {
  if (spec.degree != 3 && spec.degree != 4)
    throw std::invalid_argument("polynomial_system: degree must be 3 or 4");
  const std::size_t d = static_cast<std::size_t>(spec.dim);
  if (spec.mu.size() != d * d || spec.nu.size() != d * d * d ||
      (spec.degree == 4 && spec.rho.size() != d * d * d * d))
    throw std::invalid_argument("polynomial_system: tensor sizes do not match dim/degree");

  auto data = std::make_shared<const RandomPotentialSpec>(spec);
  SeparableSystem sys;
  sys.dim = spec.dim;
  sys.mass = 1.0;
  sys.degree = spec.degree;
  sys.label = (spec.degree == 3 ? "random_cubic_d" : "random_quartic_d") +
              std::to_string(spec.dim);

  sys.potential = [data](const std::vector<double>& q) {
    const std::size_t d = static_cast<std::size_t>(data->dim);
    double v = 0.0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) v += data->mu[i * d + j] * q[i] * q[j];
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        const double qij = q[i] * q[j];
        for (std::size_t k = 0; k < d; ++k)
          v += data->nu[(i * d + j) * d + k] * qij * q[k];
      }
    if (data->degree == 4) {
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          const double qij = q[i] * q[j];
          for (std::size_t k = 0; k < d; ++k) {
            const double qijk = qij * q[k];
            for (std::size_t l = 0; l < d; ++l)
              v += data->rho[((i * d + j) * d + k) * d + l] * qijk * q[l];
          }
        }
    }
    return v;
  };

  sys.force = [data](const std::vector<double>& q, std::vector<double>& g) {
    const std::size_t d = static_cast<std::size_t>(data->dim);
    // quadratic part: dV/dq_m = sum_j (mu_mj + mu_jm) q_j
    for (std::size_t m = 0; m < d; ++m) {
      double acc = 0.0;
      for (std::size_t j = 0; j < d; ++j)
        acc += (data->mu[m * d + j] + data->mu[j * d + m]) * q[j];
      g[m] = acc;
    }
    // cubic part: one sum per index position of an unsymmetrized nu
    for (std::size_t m = 0; m < d; ++m) {
      double acc = 0.0;
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) {
          const double qjk = q[j] * q[k];
          acc += data->nu[(m * d + j) * d + k] * qjk;
          acc += data->nu[(j * d + m) * d + k] * qjk;
          acc += data->nu[(j * d + k) * d + m] * qjk;
        }
      g[m] += acc;
    }
    if (data->degree == 4) {
      for (std::size_t m = 0; m < d; ++m) {
        double acc = 0.0;
        for (std::size_t j = 0; j < d; ++j)
          for (std::size_t k = 0; k < d; ++k) {
            const double qjk = q[j] * q[k];
            for (std::size_t l = 0; l < d; ++l) {
              const double qjkl = qjk * q[l];
              acc += data->rho[((m * d + j) * d + k) * d + l] * qjkl;
              acc += data->rho[((j * d + m) * d + k) * d + l] * qjkl;
              acc += data->rho[((j * d + k) * d + m) * d + l] * qjkl;
              acc += data->rho[((j * d + k) * d + l) * d + m] * qjkl;
            }
          }
        g[m] += acc;
      }
    }
    // g = -(1/m) grad V with m = 1
    for (std::size_t m = 0; m < d; ++m) g[m] = -g[m];
  };
  return sys;
}

// q entries then p entries, i.i.d. uniform on [0, 1/5], continuing the stream.
inline PhaseState random_initial(SplitMix64& rng, int dim) {
  if (dim < 1) throw std::invalid_argument("random_initial: dim must be >= 1");
  PhaseState s;
  s.q.resize(dim);
  s.p.resize(dim);
  for (auto& x : s.q) x = rng.uniform(0.0, 0.2);
  for (auto& x : s.p) x = rng.uniform(0.0, 0.2);
  return s;
}

inline PhaseState random_initial(int dim, std::uint64_t seed) {
  SplitMix64 rng(seed);
  return random_initial(rng, dim);
}

// --- problem plumbing ---------------------------------------------------------

enum class ProblemKind { henon_heiles, random_cubic, random_quartic, harmonic };

inline std::string to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::henon_heiles: return "henon_heiles";
    case ProblemKind::random_cubic: return "random_cubic";
    case ProblemKind::random_quartic: return "random_quartic";
    case ProblemKind::harmonic: return "harmonic";
  }
  return "?";
}

inline ProblemKind parse_problem(const std::string& s) {
  if (s == "henon_heiles") return ProblemKind::henon_heiles;
  if (s == "random_cubic") return ProblemKind::random_cubic;
  if (s == "random_quartic") return ProblemKind::random_quartic;
  if (s == "harmonic") return ProblemKind::harmonic;
  throw std::invalid_argument("unknown problem '" + s + "'");
}

struct ProblemSpec {
  ProblemKind kind = ProblemKind::henon_heiles;
  int dim = 2;            // random/harmonic problems
  std::uint64_t seed = 0;
  double alpha = 0.5;     // henon_heiles amplitude
};

// One stream per seed covers system tensors and then the initial condition
// (mu, nu, rho, q, p) so a (problem, dim, seed) triple is fully reproducible.
inline std::pair<SeparableSystem, PhaseState> make_problem(const ProblemSpec& ps) {
  switch (ps.kind) {
    case ProblemKind::henon_heiles:
      return {henon_heiles(), hh_initial(ps.alpha)};
    case ProblemKind::harmonic: {
      SplitMix64 rng(ps.seed);
      return {harmonic_oscillator(ps.dim), random_initial(rng, ps.dim)};
    }
    case ProblemKind::random_cubic: {
      SplitMix64 rng(ps.seed);
      auto spec = draw_random_potential(rng, ps.dim, 3, ps.seed);
      auto sys = polynomial_system(spec);
      return {std::move(sys), random_initial(rng, ps.dim)};
    }
    case ProblemKind::random_quartic: {
      SplitMix64 rng(ps.seed);
      auto spec = draw_random_potential(rng, ps.dim, 4, ps.seed);
      auto sys = polynomial_system(spec);
      return {std::move(sys), random_initial(rng, ps.dim)};
    }
  }
  throw std::invalid_argument("make_problem: bad problem kind");
}

inline std::string problem_label(const ProblemSpec& ps) {
  switch (ps.kind) {
    case ProblemKind::henon_heiles: return "henon_heiles";
    case ProblemKind::harmonic: return "harmonic_d" + std::to_string(ps.dim);
    case ProblemKind::random_cubic: return "random_cubic_d" + std::to_string(ps.dim);
    case ProblemKind::random_quartic: return "random_quartic_d" + std::to_string(ps.dim);
  }
  return "?";
}

}  // namespace polysplit
