#pragma once

// Exact polynomial vector-field algebra over the 2d variables (y_1..y_d,
// v_1..v_d).  Supports the drift field A = (v, 0), kick fields B = (0, g(y)),
// Lie brackets, and the identities that let splitting methods drop order
// conditions when the force g is a low-degree polynomial:
//   [A,..,A (n),B] = ( -n (v.grad)^{n-1} g ,  (v.grad)^n g )
//   deg g = n  =>  the (n+2)-fold A-bracket of B vanishes identically.
// All coefficients are exact rationals so "zero" means zero.

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "rng.hpp"

namespace polysplit {

// --- exact rational arithmetic (overflow-checked int64) ---------------------

class Rational {
 public:
  Rational() = default;
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(long long n, long long d) { assign(n, d); }

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  friend Rational operator+(const Rational& x, const Rational& y) {
    return from_i128(i128(x.num_) * y.den_ + i128(y.num_) * x.den_, i128(x.den_) * y.den_);
  }
  friend Rational operator-(const Rational& x, const Rational& y) { return x + (-y); }
  friend Rational operator*(const Rational& x, const Rational& y) {
    return from_i128(i128(x.num_) * y.num_, i128(x.den_) * y.den_);
  }
  friend Rational operator/(const Rational& x, const Rational& y) {
    if (y.num_ == 0) throw std::domain_error("Rational: division by zero");
    return from_i128(i128(x.num_) * y.den_, i128(x.den_) * y.num_);
  }
  Rational& operator+=(const Rational& y) { return *this = *this + y; }
  Rational& operator-=(const Rational& y) { return *this = *this - y; }
  Rational& operator*=(const Rational& y) { return *this = *this * y; }
  friend bool operator==(const Rational& x, const Rational& y) {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }
  friend bool operator!=(const Rational& x, const Rational& y) { return !(x == y); }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  using i128 = __int128;

  void assign(long long n, long long d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    *this = from_i128(n, d);
  }

  static i128 abs128(i128 x) { return x < 0 ? -x : x; }

  static Rational from_i128(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) d = 1;
    i128 a = abs128(n), b = d;
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    constexpr i128 lim = 0x7FFFFFFFFFFFFFFF;
    if (n > lim || n < -lim || d > lim)
      throw std::overflow_error("Rational: value exceeds 64-bit range");
    Rational r;
    r.num_ = static_cast<long long>(n);
    r.den_ = static_cast<long long>(d);
    return r;
  }

  long long num_ = 0;
  long long den_ = 1;
};

// --- sparse multivariate polynomials ----------------------------------------

// Variables are indexed 0..2d-1: index i < d is y_{i+1}, index d+i is v_{i+1}.
class Poly {
 public:
  using Monomial = std::vector<int>;  // exponent per variable

  Poly() = default;
  explicit Poly(int n_vars) : n_vars_(n_vars) {}

  static Poly constant(int n_vars, const Rational& c) {
    Poly p(n_vars);
    p.add_term(Monomial(static_cast<std::size_t>(n_vars), 0), c);
    return p;
  }
  static Poly variable(int n_vars, int index) {
    if (index < 0 || index >= n_vars) throw std::invalid_argument("Poly: variable index");
    Poly p(n_vars);
    Monomial m(static_cast<std::size_t>(n_vars), 0);
    m[static_cast<std::size_t>(index)] = 1;
    p.add_term(m, Rational(1));
    return p;
  }

  int n_vars() const { return n_vars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, Rational>& terms() const { return terms_; }

  void add_term(const Monomial& m, const Rational& c) {
    if (static_cast<int>(m.size()) != n_vars_) throw std::invalid_argument("Poly: monomial size");
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Poly operator-() const {
    Poly r(n_vars_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }
  friend Poly operator+(const Poly& x, const Poly& y) {
    check_vars(x, y);
    Poly r = x;
    for (const auto& [m, c] : y.terms_) r.add_term(m, c);
    return r;
  }
  friend Poly operator-(const Poly& x, const Poly& y) { return x + (-y); }
  friend Poly operator*(const Poly& x, const Poly& y) {
    check_vars(x, y);
    Poly r(x.n_vars_);
    for (const auto& [mx, cx] : x.terms_)
      for (const auto& [my, cy] : y.terms_) {
        Monomial m(mx);
        for (std::size_t i = 0; i < m.size(); ++i) m[i] += my[i];
        r.add_term(m, cx * cy);
      }
    return r;
  }
  friend Poly operator*(const Rational& c, const Poly& x) {
    Poly r(x.n_vars_);
    for (const auto& [m, cx] : x.terms_) r.add_term(m, c * cx);
    return r;
  }
  friend bool operator==(const Poly& x, const Poly& y) {
    return x.n_vars_ == y.n_vars_ && x.terms_ == y.terms_;
  }
  friend bool operator!=(const Poly& x, const Poly& y) { return !(x == y); }

  Poly derivative(int var) const {
    if (var < 0 || var >= n_vars_) throw std::invalid_argument("Poly: derivative index");
    Poly r(n_vars_);
    for (const auto& [m, c] : terms_) {
      const int e = m[static_cast<std::size_t>(var)];
      if (e == 0) continue;
      Monomial dm = m;
      dm[static_cast<std::size_t>(var)] = e - 1;
      r.add_term(dm, Rational(e) * c);
    }
    return r;
  }

  int total_degree() const {
    int deg = -1;  // degree of the zero polynomial
    for (const auto& [m, c] : terms_) {
      int s = 0;
      for (int e : m) s += e;
      deg = std::max(deg, s);
    }
    return deg;
  }

  // True when no term involves the variables with index >= first.
  bool independent_of_tail(int first) const {
    for (const auto& [m, c] : terms_)
      for (int i = first; i < n_vars_; ++i)
        if (m[static_cast<std::size_t>(i)] != 0) return false;
    return true;
  }

  // Human-readable form; dim fixes which indices are y's vs v's.
  std::string str(int dim) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      std::string mono;
      for (int i = 0; i < n_vars_; ++i) {
        const int e = m[static_cast<std::size_t>(i)];
        if (e == 0) continue;
        std::string name = (i < dim) ? "y" : "v";
        if (dim > 1) name += std::to_string((i % dim) + 1);
        if (!mono.empty()) mono += "*";
        mono += name;
        if (e > 1) mono += "^" + std::to_string(e);
      }
      std::string coef;
      if (mono.empty()) {
        coef = c.str();
      } else if (c == Rational(1)) {
        coef = "";
      } else if (c == Rational(-1)) {
        coef = "-";
      } else {
        coef = c.str() + "*";
      }
      std::string term = coef + mono;
      if (first) {
        out = term;
        first = false;
      } else if (!term.empty() && term[0] == '-') {
        out += " - " + term.substr(1);
      } else {
        out += " + " + term;
      }
    }
    return out;
  }

 private:
  static void check_vars(const Poly& x, const Poly& y) {
    if (x.n_vars_ != y.n_vars_) throw std::invalid_argument("Poly: variable-count mismatch");
  }

  int n_vars_ = 0;
  std::map<Monomial, Rational> terms_;
};

// --- polynomial vector fields and Lie brackets -------------------------------

struct PolyVectorField {
  int dim = 0;
  std::vector<Poly> comp;  // 2*dim entries: d/dt y_i then d/dt v_i

  bool is_zero() const {
    for (const auto& c : comp)
      if (!c.is_zero()) return false;
    return true;
  }
  friend bool operator==(const PolyVectorField& f, const PolyVectorField& g) {
    return f.dim == g.dim && f.comp == g.comp;
  }
  friend bool operator!=(const PolyVectorField& f, const PolyVectorField& g) { return !(f == g); }

  std::string str() const {
    std::string out;
    for (int i = 0; i < 2 * dim; ++i) {
      std::string name = (i < dim) ? "y" : "v";
      if (dim > 1) name += std::to_string((i % dim) + 1);
      out += "d/dt " + name + " = " + comp[static_cast<std::size_t>(i)].str(dim);
      if (i + 1 < 2 * dim) out += "\n";
    }
    return out;
  }
};

inline PolyVectorField zero_field(int dim) {
  PolyVectorField f;
  f.dim = dim;
  f.comp.assign(static_cast<std::size_t>(2 * dim), Poly(2 * dim));
  return f;
}

// Drift: d/dt y_i = v_i, d/dt v_i = 0.
inline PolyVectorField field_A(int dim) {
  PolyVectorField f = zero_field(dim);
  for (int i = 0; i < dim; ++i)
    f.comp[static_cast<std::size_t>(i)] = Poly::variable(2 * dim, dim + i);
  return f;
}

// Kick: d/dt y_i = 0, d/dt v_i = g_i(y).  g must not involve the v variables.
inline PolyVectorField field_B(const std::vector<Poly>& g) {
  const int dim = static_cast<int>(g.size());
  if (dim == 0) throw std::invalid_argument("field_B: empty polynomial map");
  PolyVectorField f = zero_field(dim);
  for (int i = 0; i < dim; ++i) {
    if (g[static_cast<std::size_t>(i)].n_vars() != 2 * dim)
      throw std::invalid_argument("field_B: g components must live over 2*dim variables");
    if (!g[static_cast<std::size_t>(i)].independent_of_tail(dim))
      throw std::invalid_argument("field_B: g must depend on the y variables only");
    f.comp[static_cast<std::size_t>(dim + i)] = g[static_cast<std::size_t>(i)];
  }
  return f;
}

// bracket(F, G) = (F.grad)G - (G.grad)F, the vector field of the operator
// commutator [L_F, L_G]; bracket(A, B) = ( -g , (v.grad) g ).
inline PolyVectorField bracket(const PolyVectorField& f, const PolyVectorField& g) {
  if (f.dim != g.dim) throw std::invalid_argument("bracket: dimension mismatch");
  const int n = 2 * f.dim;
  PolyVectorField r = zero_field(f.dim);
  for (int k = 0; k < n; ++k) {
    Poly acc(n);
    for (int m = 0; m < n; ++m) {
      const auto mu = static_cast<std::size_t>(m);
      const auto ku = static_cast<std::size_t>(k);
      acc = acc + f.comp[mu] * g.comp[ku].derivative(m) - g.comp[mu] * f.comp[ku].derivative(m);
    }
    r.comp[static_cast<std::size_t>(k)] = acc;
  }
  return r;
}

// Right-to-left nesting: "AAB" -> [A,[A,B]].
inline PolyVectorField nested(const std::string& pattern, const std::vector<Poly>& g) {
  if (pattern.size() < 2) throw std::invalid_argument("nested: pattern needs >= 2 letters");
  const int dim = static_cast<int>(g.size());
  auto letter = [&](char c) -> PolyVectorField {
    if (c == 'A') return field_A(dim);
    if (c == 'B') return field_B(g);
    throw std::invalid_argument("nested: pattern letters must be A or B");
  };
  PolyVectorField acc = letter(pattern.back());
  for (std::size_t i = pattern.size() - 1; i-- > 0;) acc = bracket(letter(pattern[i]), acc);
  return acc;
}

// (v.grad) f = sum_i v_i d f / d y_i
inline Poly v_dot_grad(const Poly& f, int dim) {
  Poly r(2 * dim);
  for (int i = 0; i < dim; ++i)
    r = r + Poly::variable(2 * dim, dim + i) * f.derivative(i);
  return r;
}

// Closed form of the n-fold A-bracket of B:
//   y-components  -n (v.grad)^{n-1} g_i,   v-components  (v.grad)^n g_i.
inline PolyVectorField iterated_drift_bracket(int n, const std::vector<Poly>& g) {
  if (n < 1) throw std::invalid_argument("iterated_drift_bracket: n >= 1 required");
  const int dim = static_cast<int>(g.size());
  PolyVectorField r = zero_field(dim);
  for (int i = 0; i < dim; ++i) {
    Poly dn_minus1 = g[static_cast<std::size_t>(i)];
    for (int k = 0; k < n - 1; ++k) dn_minus1 = v_dot_grad(dn_minus1, dim);
    const Poly dn = v_dot_grad(dn_minus1, dim);
    r.comp[static_cast<std::size_t>(i)] = Rational(-n) * dn_minus1;
    r.comp[static_cast<std::size_t>(dim + i)] = dn;
  }
  return r;
}

// --- randomized verification --------------------------------------------------

namespace detail {

inline void enumerate_monomials(int dim, int max_degree, std::vector<Poly::Monomial>& out,
                                Poly::Monomial& cur, int var, int remaining) {
  if (var == dim) {
    out.push_back(cur);
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    cur[static_cast<std::size_t>(var)] = e;
    enumerate_monomials(dim, max_degree, out, cur, var + 1, remaining - e);
  }
  cur[static_cast<std::size_t>(var)] = 0;
}

}  // namespace detail

// All exponent vectors over the y variables with total degree <= max_degree.
inline std::vector<Poly::Monomial> y_monomials(int dim, int max_degree) {
  std::vector<Poly::Monomial> out;
  Poly::Monomial cur(static_cast<std::size_t>(dim), 0);
  detail::enumerate_monomials(dim, max_degree, out, cur, 0, max_degree);
  return out;
}

// Random polynomial map g: R^dim -> R^dim of total degree exactly `degree`,
// integer coefficients in [-3, 3]; redraws until the top-degree block is
// non-trivial so the degree really is `degree`.
inline std::vector<Poly> random_poly_map(SplitMix64& rng, int dim, int degree) {
  const auto monos = y_monomials(dim, degree);
  while (true) {
    std::vector<Poly> g(static_cast<std::size_t>(dim), Poly(2 * dim));
    bool top_nonzero = false;
    for (int i = 0; i < dim; ++i) {
      for (const auto& my : monos) {
        const long long c = rng.uniform_int(-3, 3);
        if (c == 0) continue;
        Poly::Monomial m(static_cast<std::size_t>(2 * dim), 0);
        int total = 0;
        for (int v = 0; v < dim; ++v) {
          m[static_cast<std::size_t>(v)] = my[static_cast<std::size_t>(v)];
          total += my[static_cast<std::size_t>(v)];
        }
        g[static_cast<std::size_t>(i)].add_term(m, Rational(c));
        if (total == degree) top_nonzero = true;
      }
    }
    if (top_nonzero) return g;
  }
}

struct VanishingTrial {
  int trial = 0;
  bool closed_form_ok = false;   // nested A^k B == closed form, k = 1..n+2
  bool vanishing_ok = false;     // nested A^{n+2} B == 0
  bool witness_nonzero = false;  // nested A^{n+1} B != 0
  bool bbab_zero = false;        // [B,[B,[A,B]]] == 0
  bool bab_form_ok = false;      // [B,[A,B]]: zero y-components, v-free v-components
  bool all_ok() const {
    return closed_form_ok && vanishing_ok && witness_nonzero && bbab_zero && bab_form_ok;
  }
};

struct VanishingReport {
  int degree = 0;
  int dim = 0;
  std::vector<VanishingTrial> trials;
  bool all_ok() const {
    for (const auto& t : trials)
      if (!t.all_ok()) return false;
    return !trials.empty();
  }
};

// For random degree-n polynomial maps g: checks the closed bracket formula
// term-by-term against nested(), the (n+2)-fold vanishing, a non-vanishing
// witness one level below, and the pure-kick degeneracies.  Exact arithmetic
// throughout.
inline VanishingReport verify_vanishing(int n, int dim, int trials, std::uint64_t seed = 1234) {
  if (n < 1 || n > 3) throw std::invalid_argument("verify_vanishing: degree n must be 1, 2, or 3");
  if (dim < 1 || dim > 3) throw std::invalid_argument("verify_vanishing: dim must be 1, 2, or 3");
  if (trials < 1) throw std::invalid_argument("verify_vanishing: trials must be positive");

  VanishingReport report;
  report.degree = n;
  report.dim = dim;
  SplitMix64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    const auto g = random_poly_map(rng, dim, n);
    VanishingTrial res;
    res.trial = t;

    res.closed_form_ok = true;
    for (int k = 1; k <= n + 2; ++k) {
      const std::string pattern(static_cast<std::size_t>(k), 'A');
      if (nested(pattern + "B", g) != iterated_drift_bracket(k, g)) {
        res.closed_form_ok = false;
        break;
      }
    }

    res.vanishing_ok = nested(std::string(static_cast<std::size_t>(n + 2), 'A') + "B", g).is_zero();
    res.witness_nonzero =
        !nested(std::string(static_cast<std::size_t>(n + 1), 'A') + "B", g).is_zero();
    res.bbab_zero = nested("BBAB", g).is_zero();

    const PolyVectorField bab = nested("BAB", g);
    res.bab_form_ok = true;
    for (int i = 0; i < dim; ++i) {
      if (!bab.comp[static_cast<std::size_t>(i)].is_zero()) res.bab_form_ok = false;
      if (!bab.comp[static_cast<std::size_t>(dim + i)].independent_of_tail(dim))
        res.bab_form_ok = false;
    }

    report.trials.push_back(res);
  }
  return report;
}

}  // namespace polysplit
