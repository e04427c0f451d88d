#include <doctest.h>

#include <cmath>
#include <random>

#include "vacfree/errors.hpp"
#include "vacfree/graphene.hpp"
#include "vacfree/spectrum.hpp"

using namespace vacfree;

namespace {

Spectrum unit_graphene() { return graphene::graphene_spectrum({}); }

// Piecewise form written out again, independent of the library.
double graphene_oracle(double c, Index p) {
  if (p > 0) return c * (1.0 + 2.0 * std::sqrt(static_cast<double>(p)));
  if (p < 0) return c * (1.0 - 2.0 * std::sqrt(static_cast<double>(-p)));
  return c;
}

}  // namespace

TEST_CASE("graphene spectrum point values") {
  const Spectrum s = unit_graphene();
  CHECK(eval_spectrum(s, 0) == 1.0);
  CHECK(eval_spectrum(s, 4) == 5.0);
  CHECK(eval_spectrum(s, -9) == -5.0);
  CHECK(s(1) == 3.0);
  for (Index p = -64; p <= 64; ++p) {
    CHECK(s(p) == doctest::Approx(graphene_oracle(1.0, p)).epsilon(1e-15));
  }
}

TEST_CASE("graphene spectrum scales with c") {
  graphene::GrapheneParams gp;
  gp.c = 2.5;
  const Spectrum s = graphene::graphene_spectrum(gp);
  CHECK(s(0) == 2.5);
  CHECK(s(1) == 7.5);
  CHECK(s(-4) == doctest::Approx(-7.5));
}

TEST_CASE("strict increase and no zero on a wide window") {
  const Spectrum s = unit_graphene();
  CHECK(assert_strictly_increasing(s, IndexWindow(-20, 20)));
  CHECK(assert_strictly_increasing(s, IndexWindow(-64, 64)));
  for (Index p = -64; p < 64; ++p) {
    CHECK(s(p + 1) - s(p) > 0.0);
    CHECK(s(p) != 0.0);
  }
  CHECK_FALSE(assert_strictly_increasing(constant_spectrum(1.0), IndexWindow(0, 2)));
}

TEST_CASE("strictness rejects a zero value") {
  const Spectrum lin([](Index p) { return static_cast<double>(p); }, "identity");
  CHECK_FALSE(assert_strictly_increasing(lin, IndexWindow(-2, 2)));
  CHECK(assert_strictly_increasing(lin, IndexWindow(1, 5)));
  CHECK(assert_strictly_increasing(lin, IndexWindow(3, 3)));
}

TEST_CASE("shift by zero is the identity") {
  const Spectrum s = unit_graphene();
  const Spectrum t = shift_spectrum(s, 0.0);
  for (Index p = -10; p <= 10; ++p) {
    CHECK(t(p) == s(p));
  }
}

TEST_CASE("shift removes a zero eigenvalue") {
  const Spectrum landau = graphene::landau_ladder_spectrum({});
  CHECK(landau(0) == 0.0);
  CHECK_FALSE(assert_strictly_increasing(landau, IndexWindow(-1, 1)));
  const double gamma = 0.5 * std::max(landau(-1), landau(1));
  const Spectrum shifted = shift_spectrum(landau, gamma);
  CHECK(shifted(0) != 0.0);

  // shifting the bare ladder by c lands on the graphene spectrum
  const Spectrum h = shift_spectrum(landau, 1.0);
  const Spectrum g = unit_graphene();
  for (Index p : {-1, 0, 1}) {
    CHECK(h(p) == doctest::Approx(g(p)).epsilon(1e-15));
  }
}

TEST_CASE("shift round trip is bitwise exact") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> gamma_dist(-100.0, 100.0);
  const Spectrum s = unit_graphene();
  for (int trial = 0; trial < 50; ++trial) {
    const double gamma = gamma_dist(rng);
    const Spectrum back = shift_spectrum(shift_spectrum(s, gamma), -gamma);
    for (Index p = -32; p <= 32; ++p) {
      CHECK(back(p) == s(p));
    }
  }
}

TEST_CASE("deformation") {
  const Spectrum g = unit_graphene();

  SUBCASE("empty deformation leaves values") {
    const Spectrum d = deform_spectrum(g, Deformation{});
    for (Index p = -5; p <= 5; ++p) CHECK(d(p) == g(p));
  }
  SUBCASE("single index") {
    const Spectrum d = deform_spectrum(g, Deformation({{2, 0.5}}));
    CHECK(d(2) == (1.0 + 2.0 * std::sqrt(2.0)) + 0.5);
    for (Index p = -5; p <= 5; ++p) {
      if (p != 2) CHECK(d(p) == g(p));
    }
    CHECK_FALSE(d.monotone());
  }
  SUBCASE("large delta breaks monotonicity") {
    const Spectrum d = deform_spectrum(g, Deformation({{0, 10.0}}));
    CHECK(d(0) == 11.0);
    CHECK_FALSE(assert_strictly_increasing(d, IndexWindow(-1, 1)));
  }
  SUBCASE("changes exactly |J| values in a covering window") {
    const Deformation def({{-3, 0.1}, {0, -0.2}, {7, 4.0}});
    const Spectrum d = deform_spectrum(g, def);
    int changed = 0;
    for (Index p = -10; p <= 10; ++p) changed += d(p) != g(p);
    CHECK(changed == 3);
  }
  SUBCASE("zero delta rejected") {
    CHECK_THROWS_AS(Deformation({{1, 0.0}}), ConfigError);
  }
}

TEST_CASE("window validation") {
  CHECK_THROWS_AS(IndexWindow(3, 1), ConfigError);
  const IndexWindow w(-2, 2);
  CHECK(w.size() == 5);
  CHECK(w.contains(-2));
  CHECK_FALSE(w.contains(3));
  CHECK(w.offset(0) == 2);
}

TEST_CASE("params validation") {
  graphene::GrapheneParams gp;
  gp.c = 0.0;
  CHECK_THROWS_AS(graphene::graphene_spectrum(gp), ConfigError);
  gp.c = -1.0;
  CHECK_THROWS_AS(gp.validate(), ConfigError);
}
