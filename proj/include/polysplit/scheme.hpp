#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace polysplit {

// Stage ordering of a palindromic splitting scheme: ABA opens and closes with
// a drift, BAB with a kick.
enum class SchemeKind { aba, bab };

// Potential class whose vanishing commutators the scheme's order conditions
// assume.  "general" makes no assumption, "rkn" assumes quadratic kinetic
// energy only, "cubic"/"quartic" additionally assume a polynomial potential of
// that degree (force of degree 2 resp. 3).
enum class DesignClass { general, rkn, cubic, quartic };

inline std::string to_string(SchemeKind k) { return k == SchemeKind::aba ? "ABA" : "BAB"; }

inline std::string to_string(DesignClass d) {
  switch (d) {
    case DesignClass::general: return "general";
    case DesignClass::rkn: return "rkn";
    case DesignClass::cubic: return "cubic";
    case DesignClass::quartic: return "quartic";
  }
  return "general";
}

inline SchemeKind parse_kind(std::string_view s) {
  if (s == "ABA") return SchemeKind::aba;
  if (s == "BAB") return SchemeKind::bab;
  throw validation_error("unknown scheme kind '" + std::string(s) + "' (expected ABA or BAB)");
}

inline DesignClass parse_design(std::string_view s) {
  if (s == "general") return DesignClass::general;
  if (s == "rkn") return DesignClass::rkn;
  if (s == "cubic") return DesignClass::cubic;
  if (s == "quartic") return DesignClass::quartic;
  throw validation_error("unknown design class '" + std::string(s) + "'");
}

// Palindromic drift/kick composition, coefficients stored fully expanded (both
// mirrored halves present).  For an ABA scheme with s FSAL-counted stages the
// drift array has s+1 entries and the kick array s; a BAB scheme swaps the two.
struct SplittingScheme {
  std::string name;
  int order = 0;
  int stages = 0;  // FSAL-counted stages s (force evaluations per step)
  SchemeKind kind = SchemeKind::aba;
  DesignClass design = DesignClass::general;
  std::vector<double> a;  // drift coefficients (fractions of the step)
  std::vector<double> b;  // kick coefficients
  std::optional<double> l1_declared;

  // Outer array: the role that appears s+1 times (a for ABA, b for BAB).
  const std::vector<double>& outer() const { return kind == SchemeKind::aba ? a : b; }
  const std::vector<double>& inner() const { return kind == SchemeKind::aba ? b : a; }
};

inline constexpr double kConsistencyTol = 1e-13;  // |sum - 1| acceptance bound
inline constexpr double kL1MatchTol = 5e-4;       // declared-vs-computed l1 bound

// Sum of absolute values of all drift and kick coefficients; a proxy for the
// scheme's error constants at fixed cost.
inline double l1_norm(const SplittingScheme& s) {
  double acc = 0.0;
  for (double x : s.a) acc += std::abs(x);
  for (double x : s.b) acc += std::abs(x);
  return acc;
}

struct SchemeValidationReport {
  bool symmetry_ok = false;
  double sum_a = 0.0;
  double sum_b = 0.0;
  double l1_computed = 0.0;
  bool l1_matches = true;  // vacuously true when no l1 was declared
  std::vector<std::string> messages;

  bool accepted() const {
    return symmetry_ok && std::abs(sum_a - 1.0) <= kConsistencyTol &&
           std::abs(sum_b - 1.0) <= kConsistencyTol;
  }
};

// Structural validation: array lengths against kind/stages, exact palindrome
// symmetry (coefficients are stored fully expanded, so mirrored entries must
// compare equal bit-for-bit), consistency sums, and the declared l1 norm.
inline SchemeValidationReport validate(const SplittingScheme& s) {
  SchemeValidationReport rep;
  const std::size_t want_outer = static_cast<std::size_t>(s.stages) + 1;
  const std::size_t want_inner = static_cast<std::size_t>(s.stages);

  bool shape_ok = s.stages >= 1;
  if (!shape_ok) rep.messages.push_back("stages must be >= 1");
  if (s.outer().size() != want_outer) {
    shape_ok = false;
    rep.messages.push_back("outer coefficient array (" +
                           std::string(s.kind == SchemeKind::aba ? "a" : "b") + ") has " +
                           std::to_string(s.outer().size()) + " entries, expected " +
                           std::to_string(want_outer));
  }
  if (s.inner().size() != want_inner) {
    shape_ok = false;
    rep.messages.push_back("inner coefficient array (" +
                           std::string(s.kind == SchemeKind::aba ? "b" : "a") + ") has " +
                           std::to_string(s.inner().size()) + " entries, expected " +
                           std::to_string(want_inner));
  }

  if (shape_ok) {
    rep.symmetry_ok = true;
    auto check_palindrome = [&](const std::vector<double>& c, const char* label) {
      for (std::size_t j = 0, n = c.size(); j < n / 2; ++j) {
        if (c[j] != c[n - 1 - j]) {
          rep.symmetry_ok = false;
          rep.messages.push_back(std::string(label) + "[" + std::to_string(j) +
                                 "] does not mirror its palindromic partner");
        }
      }
    };
    check_palindrome(s.a, "a");
    check_palindrome(s.b, "b");
  }

  for (double x : s.a) rep.sum_a += x;
  for (double x : s.b) rep.sum_b += x;
  rep.l1_computed = l1_norm(s);

  if (std::abs(rep.sum_a - 1.0) > kConsistencyTol)
    rep.messages.push_back("drift coefficients sum to " + std::to_string(rep.sum_a) +
                           ", expected 1 within 1e-13");
  if (std::abs(rep.sum_b - 1.0) > kConsistencyTol)
    rep.messages.push_back("kick coefficients sum to " + std::to_string(rep.sum_b) +
                           ", expected 1 within 1e-13");

  if (s.l1_declared) {
    rep.l1_matches = std::abs(rep.l1_computed - *s.l1_declared) <= kL1MatchTol;
    if (!rep.l1_matches)
      rep.messages.push_back("computed l1 norm " + std::to_string(rep.l1_computed) +
                             " differs from declared " + std::to_string(*s.l1_declared));
  }
  return rep;
}

// Composition of Strang kernels S_{alpha_0 h} o ... o S_{alpha_{s-1} h} with a
// palindromic kernel list, flattened into ABA form: adjacent half-drifts of
// consecutive kernels merge, so a_0 = alpha_0/2, interior a_j =
// (alpha_{j-1}+alpha_j)/2, a_s = alpha_{s-1}/2 and b_j = alpha_j.
inline SplittingScheme compose_strang(const std::vector<double>& alphas) {
  const std::size_t s = alphas.size();
  if (s == 0) throw validation_error("compose_strang: empty kernel list");
  for (std::size_t j = 0; j < s / 2; ++j)
    if (alphas[j] != alphas[s - 1 - j])
      throw validation_error("compose_strang: kernel list is not palindromic");
  double sum = 0.0;
  for (double x : alphas) sum += x;
  if (std::abs(sum - 1.0) > kConsistencyTol)
    throw validation_error("compose_strang: kernel coefficients must sum to 1");

  SplittingScheme out;
  out.name = "ss" + std::to_string(s);
  out.order = 2;  // composition order is a property of the kernel list; callers may override
  out.stages = static_cast<int>(s);
  out.kind = SchemeKind::aba;
  out.design = DesignClass::general;
  out.a.resize(s + 1);
  out.a[0] = 0.5 * alphas[0];
  for (std::size_t j = 1; j < s; ++j) out.a[j] = 0.5 * (alphas[j - 1] + alphas[j]);
  out.a[s] = 0.5 * alphas[s - 1];
  out.b = alphas;
  return out;
}

}  // namespace polysplit
