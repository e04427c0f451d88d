#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "vacfree/errors.hpp"
#include "vacfree/graphene.hpp"
#include "vacfree/ladder.hpp"

using namespace vacfree;
using graphene::Choice;

namespace {

LadderCoefficients coeffs(Choice ch, double c = 1.0) {
  graphene::GrapheneParams gp;
  gp.c = c;
  return graphene::coefficients_for_choice(gp, ch);
}

using Dense = std::vector<std::vector<double>>;

Dense dense_of(const BandedOperator& op) {
  const IndexWindow w = op.window;
  Dense m(w.size(), std::vector<double>(w.size(), 0.0));
  for (Index r = w.lo; r <= w.hi; ++r) {
    for (Index c = w.lo; c <= w.hi; ++c) {
      m[w.offset(r)][w.offset(c)] = op.entry(r, c);
    }
  }
  return m;
}

Dense multiply(const Dense& a, const Dense& b) {
  const std::size_t n = a.size();
  Dense m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) m[i][j] += a[i][k] * b[k][j];
  return m;
}

TruncatedVector random_vector(IndexWindow w, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  TruncatedVector v(w);
  for (auto& x : v.coeffs) x = {g(rng), g(rng)};
  return v;
}

// zeroes the two edge entries so strict-mode application stays inside
TruncatedVector interior(TruncatedVector v) {
  v.coeffs.front() = 0.0;
  v.coeffs.back() = 0.0;
  return v;
}

}  // namespace

TEST_CASE("coefficient tables") {
  SUBCASE("choice 1") {
    const auto c = coeffs(Choice::one);
    CHECK(c.alpha(-4) == -3.0);
    CHECK(c.beta(4) == 5.0);
    CHECK(c.alpha(3) == 1.0);
    CHECK(c.beta(-3) == 1.0);
  }
  SUBCASE("choice 2") {
    const auto c = coeffs(Choice::two);
    CHECK(c.alpha(0) == doctest::Approx(1.0 / 3.0));
    CHECK(c.beta(0) == 3.0);
    CHECK(c.alpha(0) * c.beta(0) == doctest::Approx(1.0));
    const auto c2 = coeffs(Choice::two, 2.0);
    CHECK(c2.alpha(0) * c2.beta(0) == doctest::Approx(2.0));
  }
  SUBCASE("choice 3") {
    const auto c = coeffs(Choice::three);
    CHECK(c.alpha(-3) == doctest::Approx(0.5 * (1.0 - 2.0 * std::sqrt(3.0))));
    CHECK(c.beta(-3) == doctest::Approx(2.0));
    CHECK(c.alpha(4) == doctest::Approx(2.0));
  }
  CHECK_THROWS_AS(graphene::parse_choice(4), ConfigError);
}

TEST_CASE("lowering and raising on basis vectors") {
  const IndexWindow w(-6, 6);
  const auto c1 = coeffs(Choice::one);
  const auto c3 = coeffs(Choice::three);

  const auto a1 = apply_lowering(c1, TruncatedVector::basis(1, w));
  CHECK(a1.at(0) == cplx(1.0));
  CHECK(norm(a1) == doctest::Approx(1.0));

  const auto a3 = apply_lowering(c3, TruncatedVector::basis(4, w));
  CHECK(a3.at(3) == cplx(2.0));
  CHECK(norm(a3) == doctest::Approx(2.0));

  const auto b1 = apply_raising(c1, TruncatedVector::basis(0, w));
  CHECK(b1.at(1) == cplx(3.0));

  const auto b3 = apply_raising(c3, TruncatedVector::basis(-1, w));
  CHECK(b3.at(0).real() == doctest::Approx(1.0));

  const auto ad = apply_lowering_adjoint(c3, TruncatedVector::basis(3, w));
  CHECK(ad.at(4).real() == doctest::Approx(2.0));

  const TruncatedVector zero(w);
  CHECK(norm(apply_lowering(c1, zero)) == 0.0);
  CHECK(norm(apply_raising(c1, zero)) == 0.0);
  CHECK(norm(apply_lowering_adjoint(c1, zero)) == 0.0);
  CHECK(norm(apply_raising_adjoint(c1, zero)) == 0.0);
}

TEST_CASE("boundary policy") {
  const IndexWindow w(-3, 3);
  const auto c = coeffs(Choice::three);
  CHECK_THROWS_AS(apply_lowering(c, TruncatedVector::basis(-3, w)), BoundaryError);
  CHECK_THROWS_AS(apply_raising(c, TruncatedVector::basis(3, w)), BoundaryError);
  const auto dropped = apply_lowering(c, TruncatedVector::basis(-3, w), Strictness::lenient);
  CHECK(norm(dropped) == 0.0);
  CHECK_NOTHROW(apply_lowering(c, TruncatedVector::basis(3, w)));
}

TEST_CASE("banded matrix weights") {
  const auto c3 = coeffs(Choice::three);
  const BandedOperator a = build_matrix(c3, LadderOp::a, IndexWindow(0, 3));
  REQUIRE(a.weights.size() == 3);
  CHECK(a.weights[0] == doctest::Approx(1.0));
  CHECK(a.weights[1] == doctest::Approx(std::sqrt(2.0)));
  CHECK(a.weights[2] == doctest::Approx(std::sqrt(3.0)));
  CHECK(a.entry(0, 1) == doctest::Approx(1.0));
  CHECK(a.entry(1, 0) == 0.0);

  const TruncatedVector empty(IndexWindow(0, 3));
  CHECK(norm(a.apply(empty)) == 0.0);
}

TEST_CASE("adjoint is the transpose of the banded matrix") {
  const IndexWindow w(-10, 10);
  for (Choice ch : {Choice::one, Choice::two, Choice::three}) {
    const auto c = coeffs(ch);
    const Dense a = dense_of(build_matrix(c, LadderOp::a, w));
    const Dense ad = dense_of(build_matrix(c, LadderOp::a_dag, w));
    const Dense b = dense_of(build_matrix(c, LadderOp::b, w));
    const Dense bd = dense_of(build_matrix(c, LadderOp::b_dag, w));
    for (std::size_t i = 0; i < w.size(); ++i) {
      for (std::size_t j = 0; j < w.size(); ++j) {
        CHECK(ad[i][j] == a[j][i]);
        CHECK(bd[i][j] == b[j][i]);
      }
    }
  }
}

TEST_CASE("ba is diagonal with the spectrum on the interior") {
  const IndexWindow w(-12, 12);
  for (Choice ch : {Choice::one, Choice::two, Choice::three}) {
    const auto c = coeffs(ch);
    const Dense ba =
        multiply(dense_of(build_matrix(c, LadderOp::b, w)), dense_of(build_matrix(c, LadderOp::a, w)));
    // first row/column loses the a-contribution from below the window
    for (Index p = w.lo + 1; p <= w.hi; ++p) {
      for (Index q = w.lo + 1; q <= w.hi; ++q) {
        const double expect = p == q ? c.spectrum(p) : 0.0;
        CHECK(ba[w.offset(p)][w.offset(q)] == doctest::Approx(expect).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("factorization residual") {
  const IndexWindow w(-32, 32);
  for (Choice ch : {Choice::one, Choice::two, Choice::three}) {
    CHECK(factorization_residual(coeffs(ch), w) <= 1e-12);
  }

  SUBCASE("square-root factorization of a positive spectrum") {
    const Spectrum pos([](Index p) { return 2.0 + std::exp(0.1 * static_cast<double>(p)); },
                       "positive");
    LadderCoefficients c{[pos](Index p) { return std::sqrt(pos(p)); },
                         [pos](Index p) { return std::sqrt(pos(p)); }, pos, "sqrt"};
    CHECK(factorization_residual(c, IndexWindow(-20, 20)) <= 1e-12);
  }

  SUBCASE("perturbed alpha_5") {
    auto c = coeffs(Choice::one);
    auto base = c.alpha;
    c.alpha = [base](Index p) { return p == 5 ? base(p) + 1e-3 : base(p); };
    const double beta5 = 1.0 + 2.0 * std::sqrt(5.0);
    CHECK(factorization_residual(c, w) == doctest::Approx(1e-3 * beta5).epsilon(1e-9));
  }
}

TEST_CASE("commutator gap against the explicit formula") {
  const auto c = coeffs(Choice::three);
  CHECK(commutator_ab_gap(c, 0) == doctest::Approx(2.0));
  CHECK(commutator_ab_gap(c, -1) == doctest::Approx(2.0));
  CHECK(commutator_ab_gap(c, 1) == doctest::Approx(2.0 * (std::sqrt(2.0) - 1.0)));
  for (Index p = 1; p <= 20; ++p) {
    const double s = 2.0 * (std::sqrt(p + 1.0) - std::sqrt(static_cast<double>(p)));
    CHECK(commutator_ab_gap(c, p) == doctest::Approx(s).epsilon(1e-12));
  }
  for (Index p = -20; p <= -2; ++p) {
    const double s = 2.0 * (std::sqrt(-static_cast<double>(p)) - std::sqrt(-p - 1.0));
    CHECK(commutator_ab_gap(c, p) == doctest::Approx(s).epsilon(1e-12));
  }
  // the gap depends only on eps, so every choice gives the same numbers
  for (Index p = -10; p <= 10; ++p) {
    CHECK(commutator_ab_gap(coeffs(Choice::one), p) ==
          doctest::Approx(commutator_ab_gap(coeffs(Choice::two), p)).epsilon(1e-13));
  }
}

TEST_CASE("dense commutator [a,b] matches the gap on the interior") {
  const IndexWindow w(-32, 32);  // 65 levels
  const auto c = coeffs(Choice::two);
  const Dense a = dense_of(build_matrix(c, LadderOp::a, w));
  const Dense b = dense_of(build_matrix(c, LadderOp::b, w));
  const Dense ab = multiply(a, b);
  const Dense ba = multiply(b, a);
  for (Index p = w.lo + 1; p < w.hi; ++p) {
    const std::size_t i = w.offset(p);
    CHECK(ab[i][i] - ba[i][i] == doctest::Approx(commutator_ab_gap(c, p)).epsilon(1e-12));
  }
}

TEST_CASE("no vacuum") {
  for (Choice ch : {Choice::one, Choice::two, Choice::three}) {
    CHECK_NOTHROW(require_no_vacuum(coeffs(ch), IndexWindow(-40, 40)));
  }
  auto c = coeffs(Choice::three);
  auto base = c.alpha;
  c.alpha = [base](Index p) { return p == 2 ? 0.0 : base(p); };
  CHECK_THROWS_AS(require_no_vacuum(c, IndexWindow(-4, 4)), ConstraintError);
}

TEST_CASE("adjoint pairing on random interior vectors") {
  std::mt19937_64 rng(99);
  const IndexWindow w(-15, 15);
  for (Choice ch : {Choice::one, Choice::two, Choice::three}) {
    const auto c = coeffs(ch);
    for (int trial = 0; trial < 20; ++trial) {
      const auto u = interior(random_vector(w, rng));
      const auto v = interior(random_vector(w, rng));
      const cplx lhs = inner(apply_lowering_adjoint(c, u), v);
      const cplx rhs = inner(u, apply_lowering(c, v));
      CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(lhs)));
      const cplx lhs_b = inner(apply_raising_adjoint(c, u), v);
      const cplx rhs_b = inner(u, apply_raising(c, v));
      CHECK(std::abs(lhs_b - rhs_b) <= 1e-12 * (1.0 + std::abs(lhs_b)));
    }
  }
}
