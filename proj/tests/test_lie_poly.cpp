#include <catch2/catch_amalgamated.hpp>

#include <stdexcept>
#include <vector>

#include <polysplit/lie_poly.hpp>
#include <polysplit/rng.hpp>

using namespace polysplit;

namespace {

// A general polynomial vector field (components may involve both position and
// velocity variables), for algebra laws that must hold beyond drift/kick pairs.
PolyVectorField random_field(SplitMix64& rng, int dim, int degree) {
  PolyVectorField f = zero_field(dim);
  const auto monos = y_monomials(2 * dim, degree);  // exponents over all 2*dim variables
  for (int k = 0; k < 2 * dim; ++k) {
    Poly p(2 * dim);
    for (const auto& m : monos) {
      const long long c = rng.uniform_int(-2, 2);
      if (c != 0) p.add_term(m, Rational(c));
    }
    f.comp[static_cast<std::size_t>(k)] = p;
  }
  return f;
}

// g(y) = y^2 in one dimension: the worked example used throughout.
std::vector<Poly> g_y_squared() {
  const Poly y = Poly::variable(2, 0);
  return {y * y};
}

PolyVectorField add(const PolyVectorField& f, const PolyVectorField& g) {
  REQUIRE(f.dim == g.dim);
  PolyVectorField r = f;
  for (std::size_t i = 0; i < r.comp.size(); ++i) r.comp[i] = f.comp[i] + g.comp[i];
  return r;
}

PolyVectorField neg(const PolyVectorField& f) {
  PolyVectorField r = f;
  for (auto& c : r.comp) c = -c;
  return r;
}

}  // namespace

TEST_CASE("rational arithmetic is exact, normalized, and overflow-checked") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(1, 2) == Rational(0));
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(3, 7) * Rational(7, 3) == Rational(1));
  CHECK(Rational(1, 3) / Rational(1, 6) == Rational(2));
  CHECK((-Rational(5, 3)).num() == -5);
  CHECK(Rational(0, 5).den() == 1);
  CHECK(Rational(7).str() == "7");
  CHECK(Rational(-1, 3).str() == "-1/3");
  CHECK(Rational(1, 3).to_double() == Catch::Approx(1.0 / 3.0).margin(1e-17));

  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);

  // products whose reduced form still exceeds 64 bits must refuse loudly
  const Rational big(1, 0x3FFFFFFFFFFFFFFFLL);
  CHECK_THROWS_AS(big * Rational(1, 3), std::overflow_error);
  // ... while reducible large intermediates survive via the 128-bit path
  CHECK(big * Rational(0x3FFFFFFFFFFFFFFFLL, 2) == Rational(1, 2));
}

TEST_CASE("sparse polynomial basics") {
  const Poly y = Poly::variable(2, 0);
  const Poly v = Poly::variable(2, 1);
  const Poly one = Poly::constant(2, Rational(1));

  SECTION("algebra") {
    const Poly s = y + v;
    CHECK(s * s == y * y + Rational(2) * (y * v) + v * v);
    CHECK((y - y).is_zero());
    CHECK(s * (y - v) == y * y - v * v);
    CHECK(one * s == s);
  }

  SECTION("differentiation") {
    const Poly p = y * y * v + Rational(3) * v;  // d/dy = 2yv, d/dv = y^2 + 3
    CHECK(p.derivative(0) == Rational(2) * (y * v));
    CHECK(p.derivative(1) == y * y + Poly::constant(2, Rational(3)));
    CHECK(one.derivative(0).is_zero());
  }

  SECTION("degrees and variable dependence") {
    CHECK((y * y * v).total_degree() == 3);
    CHECK(one.total_degree() == 0);
    CHECK(Poly(2).total_degree() == -1);
    CHECK((y * y).independent_of_tail(1));       // no v content
    CHECK_FALSE((y * v).independent_of_tail(1));
  }

  SECTION("construction guards") {
    CHECK_THROWS_AS(Poly::variable(2, 2), std::invalid_argument);
    CHECK_THROWS_AS(y + Poly::variable(4, 0), std::invalid_argument);
  }
}

TEST_CASE("drift and kick fields") {
  SECTION("drift moves positions by velocity") {
    const PolyVectorField a = field_A(2);
    CHECK(a.comp[0] == Poly::variable(4, 2));
    CHECK(a.comp[1] == Poly::variable(4, 3));
    CHECK(a.comp[2].is_zero());
    CHECK(a.comp[3].is_zero());
  }

  SECTION("kick accepts position-only maps and rejects anything else") {
    CHECK_THROWS_AS(field_B({}), std::invalid_argument);
    const Poly y = Poly::variable(2, 0);
    const Poly v = Poly::variable(2, 1);
    CHECK_THROWS_AS(field_B({y * v}), std::invalid_argument);  // velocity dependence
    CHECK_THROWS_AS(field_B({Poly::variable(4, 0)}), std::invalid_argument);  // wrong var count
    const PolyVectorField b = field_B({y * y});
    CHECK(b.comp[0].is_zero());
    CHECK(b.comp[1] == y * y);
  }
}

TEST_CASE("worked example: brackets of the one-dimensional quadratic kick") {
  const auto g = g_y_squared();
  const Poly y = Poly::variable(2, 0);
  const Poly v = Poly::variable(2, 1);

  // [A,B] = (-y^2, 2yv)
  const PolyVectorField ab = nested("AB", g);
  CHECK(ab.comp[0] == -(y * y));
  CHECK(ab.comp[1] == Rational(2) * (y * v));

  // [A,[A,B]] = (-4yv, 2v^2)
  const PolyVectorField aab = nested("AAB", g);
  CHECK(aab.comp[0] == Rational(-4) * (y * v));
  CHECK(aab.comp[1] == Rational(2) * (v * v));

  // [B,[A,B]] = (0, 4y^3): pure kick, velocity-independent
  const PolyVectorField bab = nested("BAB", g);
  CHECK(bab.comp[0].is_zero());
  CHECK(bab.comp[1] == Rational(4) * (y * y * y));

  // quadratic g: the 4-fold drift bracket is the first to vanish
  CHECK_FALSE(nested("AAAB", g).is_zero());
  CHECK(nested("AAAB", g).comp[0] == Rational(-6) * (v * v));
  CHECK(nested("AAAAB", g).is_zero());
}

TEST_CASE("bracket is a Lie bracket: antisymmetry and the Jacobi identity") {
  SplitMix64 rng(31337);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 1 + static_cast<int>(rng.uniform_int(0, 1));
    const PolyVectorField f = random_field(rng, dim, 2);
    const PolyVectorField g = random_field(rng, dim, 2);
    const PolyVectorField h = random_field(rng, dim, 2);
    INFO("trial " << trial << " dim " << dim);

    CHECK(bracket(f, g) == neg(bracket(g, f)));
    CHECK(bracket(f, f).is_zero());

    const PolyVectorField jacobi =
        add(add(bracket(f, bracket(g, h)), bracket(g, bracket(h, f))), bracket(h, bracket(f, g)));
    CHECK(jacobi.is_zero());
  }
}

TEST_CASE("closed form of iterated drift brackets, checked term by term") {
  SplitMix64 rng(77);
  for (int dim : {1, 2}) {
    for (int degree : {1, 2, 3}) {
      const auto g = random_poly_map(rng, dim, degree);
      for (int k = 1; k <= degree + 2; ++k) {
        INFO("dim " << dim << " degree " << degree << " k " << k);
        CHECK(nested(std::string(static_cast<std::size_t>(k), 'A') + "B", g) ==
              iterated_drift_bracket(k, g));
      }
    }
  }
  CHECK_THROWS_AS(iterated_drift_bracket(0, g_y_squared()), std::invalid_argument);
}

TEST_CASE("degree-dependent vanishing with nonzero witness one level below") {
  // force of polynomial degree n: the (n+2)-fold drift bracket vanishes
  // identically, the (n+1)-fold one does not, and the double-kick brackets
  // collapse -- the structural facts behind the cubic/quartic design classes.
  for (int n : {1, 2, 3}) {
    for (int dim : {1, 2}) {
      const VanishingReport rep = verify_vanishing(n, dim, 10);
      INFO("degree " << n << " dim " << dim);
      CHECK(rep.degree == n);
      CHECK(rep.dim == dim);
      CHECK(rep.trials.size() == 10);
      CHECK(rep.all_ok());
      for (const auto& t : rep.trials) {
        CHECK(t.closed_form_ok);
        CHECK(t.vanishing_ok);
        CHECK(t.witness_nonzero);
        CHECK(t.bbab_zero);
        CHECK(t.bab_form_ok);
      }
    }
  }
}

TEST_CASE("vanishing checks are seed-reproducible") {
  const VanishingReport a = verify_vanishing(2, 2, 5, 42);
  const VanishingReport b = verify_vanishing(2, 2, 5, 42);
  REQUIRE(a.trials.size() == b.trials.size());
  CHECK(a.all_ok() == b.all_ok());
}

TEST_CASE("double-kick degeneracies for arbitrary polynomial kicks") {
  SplitMix64 rng(4097);
  for (int trial = 0; trial < 10; ++trial) {
    const int dim = 1 + static_cast<int>(rng.uniform_int(0, 1));
    const int degree = 1 + static_cast<int>(rng.uniform_int(0, 2));
    const auto g = random_poly_map(rng, dim, degree);
    const auto g2 = random_poly_map(rng, dim, degree);
    INFO("trial " << trial << " dim " << dim << " degree " << degree);

    // kicks commute with each other...
    CHECK(bracket(field_B(g), field_B(g2)).is_zero());
    // ...and [B,[B,[A,B]]] dies because [B,[A,B]] is again a pure kick
    CHECK(nested("BBAB", g).is_zero());
    const PolyVectorField bab = nested("BAB", g);
    for (int i = 0; i < dim; ++i) {
      CHECK(bab.comp[static_cast<std::size_t>(i)].is_zero());
      CHECK(bab.comp[static_cast<std::size_t>(dim + i)].independent_of_tail(dim));
    }
  }
}

TEST_CASE("input validation of the verification driver") {
  CHECK_THROWS_AS(verify_vanishing(0, 1, 5), std::invalid_argument);
  CHECK_THROWS_AS(verify_vanishing(4, 1, 5), std::invalid_argument);
  CHECK_THROWS_AS(verify_vanishing(2, 0, 5), std::invalid_argument);
  CHECK_THROWS_AS(verify_vanishing(2, 4, 5), std::invalid_argument);
  CHECK_THROWS_AS(verify_vanishing(2, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(nested("A", g_y_squared()), std::invalid_argument);
  CHECK_THROWS_AS(nested("AXB", g_y_squared()), std::invalid_argument);
}

TEST_CASE("display forms name phase variables and subscripts") {
  const auto g = g_y_squared();
  const PolyVectorField ab = nested("AB", g);
  const std::string text = ab.str();
  CHECK(text.find("d/dt y") != std::string::npos);
  CHECK(text.find("d/dt v") != std::string::npos);
  CHECK(text.find("y^2") != std::string::npos);
}
