#pragma once

// Split-step Fourier propagator for the 1-D Schroedinger equation
//   i du/dt = H u,  H = -(1/2) d^2/dx^2 + V(x),
// on a uniform periodic grid.  The kinetic half is diagonal in Fourier space
// (phase exp(-i tau k^2/2)), the potential half diagonal in real space
// (phase exp(-i tau V(x))).  A splitting scheme's a-coefficients scale the
// kinetic flows and its b-coefficients the potential flows (drift/kick
// analogy); --swap-roles style inversion is supported.  The propagator tracks
// which domain the data lives in, so adjacent same-type flows (including
// across step boundaries) cost no extra transforms.

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "scheme.hpp"

namespace polysplit {

// --- radix-2 FFT with precomputed tables --------------------------------------

class Fft {
 public:
  explicit Fft(std::size_t n) : n_(n) {
    if (n < 2 || (n & (n - 1)) != 0)
      throw std::invalid_argument("Fft: size must be a power of two >= 2");
    bitrev_.resize(n);
    std::size_t log2n = 0;
    while ((std::size_t{1} << log2n) < n) ++log2n;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t r = 0;
      for (std::size_t b = 0; b < log2n; ++b)
        if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (log2n - 1 - b);
      bitrev_[i] = r;
    }
    roots_.resize(n / 2);
    const double base = -2.0 * kPi / static_cast<double>(n);  // forward sign
    for (std::size_t k = 0; k < n / 2; ++k) {
      const double ang = base * static_cast<double>(k);
      roots_[k] = {std::cos(ang), std::sin(ang)};
    }
  }

  std::size_t size() const { return n_; }

  // X_k = sum_n x_n exp(-2 pi i n k / N)
  void forward(std::vector<std::complex<double>>& x) const { transform(x, false); }

  // x_n = (1/N) sum_k X_k exp(+2 pi i n k / N); forward then inverse = identity
  void inverse(std::vector<std::complex<double>>& x) const {
    transform(x, true);
    const double scale = 1.0 / static_cast<double>(n_);
    for (auto& v : x) v *= scale;
  }

 private:
  static constexpr double kPi = 3.141592653589793238462643383279502884;

  void transform(std::vector<std::complex<double>>& x, bool conjugate_roots) const {
    if (x.size() != n_) throw std::invalid_argument("Fft: input length mismatch");
    for (std::size_t i = 0; i < n_; ++i)
      if (bitrev_[i] > i) std::swap(x[i], x[bitrev_[i]]);
    for (std::size_t len = 2; len <= n_; len <<= 1) {
      const std::size_t stride = n_ / len;
      for (std::size_t start = 0; start < n_; start += len) {
        for (std::size_t j = 0; j < len / 2; ++j) {
          std::complex<double> w = roots_[j * stride];
          if (conjugate_roots) w = std::conj(w);
          const std::complex<double> u = x[start + j];
          const std::complex<double> t = w * x[start + j + len / 2];
          x[start + j] = u + t;
          x[start + j + len / 2] = u - t;
        }
      }
    }
  }

  std::size_t n_;
  std::vector<std::size_t> bitrev_;
  std::vector<std::complex<double>> roots_;
};

// --- grid and wavefunction -----------------------------------------------------

struct SpectralGrid {
  std::size_t n = 0;
  double x_min = 0.0;
  double x_max = 0.0;
  double dx = 0.0;
  std::vector<double> x;  // nodes x_min + n dx, excludes x_max (periodic)
  std::vector<double> k;  // angular wavenumbers, signed DFT ordering
};

inline SpectralGrid build_grid(std::size_t n, double x_min, double x_max) {
  if (n < 8 || (n & (n - 1)) != 0)
    throw validation_error("build_grid: N must be a power of two >= 8");
  if (!(x_min < x_max)) throw validation_error("build_grid: need x_min < x_max");
  SpectralGrid g;
  g.n = n;
  g.x_min = x_min;
  g.x_max = x_max;
  const double length = x_max - x_min;
  g.dx = length / static_cast<double>(n);
  g.x.resize(n);
  g.k.resize(n);
  const double two_pi = 6.283185307179586476925286766559005768;
  for (std::size_t i = 0; i < n; ++i) {
    g.x[i] = x_min + static_cast<double>(i) * g.dx;
    const long long m = (i < n / 2) ? static_cast<long long>(i)
                                    : static_cast<long long>(i) - static_cast<long long>(n);
    g.k[i] = two_pi * static_cast<double>(m) / length;
  }
  return g;
}

// Double-well quartic potential V(x) = -x^2/2 + x^4/20.
inline double quartic_potential(double x) { return -0.5 * x * x + x * x * x * x / 20.0; }

struct WaveState {
  std::vector<std::complex<double>> u;
  double t = 0.0;
};

inline double wave_norm(const SpectralGrid& grid, const WaveState& s) {
  double acc = 0.0;
  for (const auto& v : s.u) acc += std::norm(v);
  return std::sqrt(acc * grid.dx);
}

// u_n(0) proportional to exp(-x_n^2/2), scaled so sum |u_n|^2 dx = 1.
inline WaveState gaussian_initial(const SpectralGrid& grid) {
  WaveState s;
  s.t = 0.0;
  s.u.resize(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) s.u[i] = std::exp(-0.5 * grid.x[i] * grid.x[i]);
  const double nrm = wave_norm(grid, s);
  for (auto& v : s.u) v /= nrm;
  return s;
}

// --- elementary flows ------------------------------------------------------------

// u <- IDFT( exp(-i tau k^2/2) . DFT(u) )
inline void kinetic_flow(const SpectralGrid& grid, const Fft& fft, WaveState& s, double tau) {
  fft.forward(s.u);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double phase = -0.5 * tau * grid.k[i] * grid.k[i];
    s.u[i] *= std::complex<double>(std::cos(phase), std::sin(phase));
  }
  fft.inverse(s.u);
}

// u_n <- exp(-i tau V(x_n)) u_n
inline void potential_flow(const SpectralGrid& grid, WaveState& s, double tau) {
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double phase = -tau * quartic_potential(grid.x[i]);
    s.u[i] *= std::complex<double>(std::cos(phase), std::sin(phase));
  }
}

// --- energy ----------------------------------------------------------------------

// <u, H u> with the dx weighting; imaginary part should vanish (Hermitian H).
inline std::complex<double> energy_complex(const SpectralGrid& grid, const Fft& fft,
                                           const WaveState& s) {
  std::vector<std::complex<double>> hu = s.u;
  fft.forward(hu);
  for (std::size_t i = 0; i < grid.n; ++i) hu[i] *= 0.5 * grid.k[i] * grid.k[i];
  fft.inverse(hu);
  for (std::size_t i = 0; i < grid.n; ++i) hu[i] += quartic_potential(grid.x[i]) * s.u[i];
  std::complex<double> acc = 0.0;
  for (std::size_t i = 0; i < grid.n; ++i) acc += std::conj(s.u[i]) * hu[i];
  return acc * grid.dx;
}

inline double energy(const SpectralGrid& grid, const Fft& fft, const WaveState& s) {
  return energy_complex(grid, fft, s).real();
}

inline double energy(const SpectralGrid& grid, const WaveState& s) {
  Fft fft(grid.n);
  return energy(grid, fft, s);
}

// --- propagation -----------------------------------------------------------------

struct PropagationResult {
  WaveState state;
  double h_actual = 0.0;
  long long steps = 0;
  long long fft_count = 0;  // transforms spent moving the state between domains
  long long potential_applications = 0;
  std::vector<double> times;
  std::vector<double> energies;
  std::vector<double> norms;
};

namespace detail {

inline bool finite_wave(const std::vector<std::complex<double>>& u) {
  for (const auto& v : u)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

}  // namespace detail

// Applies `scheme` with kinetic flows scaled by the drift-role coefficients and
// potential flows by the kick-role coefficients (swap_roles inverts the
// assignment).  The state's domain (real vs Fourier) is tracked so that
// consecutive kinetic stages -- in particular across step boundaries -- reuse
// the transform, mirroring the classical first-same-as-last force reuse.
// Samples (t, energy, norm) at t=0, every `sample_every`-th step boundary, and
// t_final; measurement happens on a copy and costs no propagation transforms.
inline PropagationResult propagate(const SplittingScheme& scheme, const SpectralGrid& grid,
                                   const WaveState& initial, double h, double t_final,
                                   long long sample_every = 0, bool swap_roles = false) {
  if (h == 0.0 || t_final == 0.0 || (h > 0.0) != (t_final > 0.0))
    throw std::invalid_argument("propagate: h and t_final must be nonzero with matching signs");
  if (initial.u.size() != grid.n) throw std::invalid_argument("propagate: state/grid size mismatch");

  const auto& outer = scheme.outer();
  const auto& inner = scheme.inner();
  // drift role = kinetic, kick role = potential (inverted by swap_roles)
  const bool outer_is_kinetic = (scheme.kind == SchemeKind::aba) != swap_roles;

  const long long n_steps = std::max<long long>(1, std::llround(t_final / h));
  const double ha = t_final / static_cast<double>(n_steps);

  Fft fft(grid.n);
  PropagationResult res;
  res.h_actual = ha;
  res.state = initial;

  // Precompute per-stage phase factors for the fixed step ha.
  const std::size_t n = grid.n;
  auto kinetic_table = [&](double tau) {
    std::vector<std::complex<double>> ph(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double a = -0.5 * tau * grid.k[i] * grid.k[i];
      ph[i] = {std::cos(a), std::sin(a)};
    }
    return ph;
  };
  auto potential_table = [&](double tau) {
    std::vector<std::complex<double>> ph(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double a = -tau * quartic_potential(grid.x[i]);
      ph[i] = {std::cos(a), std::sin(a)};
    }
    return ph;
  };
  std::vector<std::vector<std::complex<double>>> outer_phase, inner_phase;
  for (double c : outer)
    outer_phase.push_back(outer_is_kinetic ? kinetic_table(c * ha) : potential_table(c * ha));
  for (double c : inner)
    inner_phase.push_back(outer_is_kinetic ? potential_table(c * ha) : kinetic_table(c * ha));

  bool in_fourier = false;
  auto to_fourier = [&]() {
    if (!in_fourier) {
      fft.forward(res.state.u);
      ++res.fft_count;
      in_fourier = true;
    }
  };
  auto to_real = [&]() {
    if (in_fourier) {
      fft.inverse(res.state.u);
      ++res.fft_count;
      in_fourier = false;
    }
  };
  auto apply = [&](const std::vector<std::complex<double>>& phase, bool kinetic) {
    if (kinetic)
      to_fourier();
    else
      to_real();
    for (std::size_t i = 0; i < n; ++i) res.state.u[i] *= phase[i];
    if (!kinetic) ++res.potential_applications;
  };

  auto sample = [&](double t) {
    WaveState probe;
    probe.t = t;
    probe.u = res.state.u;
    if (in_fourier) fft.inverse(probe.u);  // measurement copy, not propagation cost
    res.times.push_back(t);
    res.energies.push_back(energy(grid, fft, probe));
    res.norms.push_back(wave_norm(grid, probe));
  };

  sample(initial.t);
  const std::size_t s = inner.size();
  for (long long step = 0; step < n_steps; ++step) {
    for (std::size_t j = 0; j < s; ++j) {
      apply(outer_phase[j], outer_is_kinetic);
      apply(inner_phase[j], !outer_is_kinetic);
    }
    apply(outer_phase[s], outer_is_kinetic);
    res.state.t = initial.t + static_cast<double>(step + 1) * ha;
    ++res.steps;
    if (!detail::finite_wave(res.state.u))
      throw divergence_error(res.state.t, res.steps, res.fft_count);
    const bool last = (step + 1 == n_steps);
    if (!last && sample_every > 0 && (step + 1) % sample_every == 0) sample(res.state.t);
  }
  to_real();
  sample(res.state.t);
  return res;
}

}  // namespace polysplit
