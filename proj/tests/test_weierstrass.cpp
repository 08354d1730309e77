#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "period_lab/errors.hpp"
#include "period_lab/weierstrass.hpp"

using namespace period_lab;
using namespace period_lab::weierstrass;

namespace {

using C = std::complex<double>;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const LabError& e) {
    return e.code();
  }
  FAIL("expected a LabError");
  return ErrorCode::InvalidConfig;
}

const WeierstrassCurve kDefault(0, 1);

SectionElement mono(const WeierstrassCurve& c, int bound, int i, bool y, Rational k = 1) {
  return SectionElement::monomial(c, bound, {i, y}, k);
}

// Value of a section at an affine point, straight from the monomial basis.
C evaluate(const SectionElement& s, C x, C y) {
  const auto b = basis(s.bound());
  C v = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const C m = std::pow(x, b[i].x_power) * (b[i].has_y ? y : C(1.0));
    v += s.coefficients()[i].convert_to<double>() * m;
  }
  return v;
}

// Truncated product of eps-polynomials with numeric coefficients.
std::vector<C> pmul(const std::vector<C>& a, const std::vector<C>& b) {
  std::vector<C> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

}  // namespace

TEST_CASE("basis sizes and examples") {
  for (int n = 1; n <= 12; ++n) {
    const auto b = basis(n);
    CHECK(static_cast<int>(b.size()) == n);
    for (const auto& m : b) CHECK(m.pole_order() <= n);
  }
  CHECK(basis(1) == std::vector<Monomial>{{0, false}});
  CHECK(basis(2) == std::vector<Monomial>{{0, false}, {1, false}});
  CHECK(basis(6) == std::vector<Monomial>{{0, false}, {1, false}, {2, false}, {3, false}, {0, true}, {1, true}});
  CHECK(code_of([] { basis(0); }) == ErrorCode::NonPositive);
  CHECK(code_of([] { basis(-3); }) == ErrorCode::NonPositive);
  CHECK(code_of([] { WeierstrassCurve(-3, 2); }) == ErrorCode::SingularCurve);
}

TEST_CASE("multiply: curve relation examples") {
  const WeierstrassCurve c(Rational(2, 3), Rational(-5, 7));
  const auto y = mono(c, 3, 0, true);
  const auto x = mono(c, 2, 1, false);
  const auto xy = mono(c, 5, 1, true);
  const auto yy = multiply(y, y);
  CHECK(yy.bound() == 6);
  CHECK(yy == mono(c, 6, 3, false) + mono(c, 6, 1, false, c.a) + mono(c, 6, 0, false, c.b));
  CHECK(multiply(x, x) == mono(c, 4, 2, false));
  CHECK(multiply(xy, y) == mono(c, 8, 4, false) + mono(c, 8, 2, false, c.a) + mono(c, 8, 1, false, c.b));
}

TEST_CASE("multiply: commutative, associative, pole orders add") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 6; ++trial) {
    const auto c = random_curve(rng);
    const auto f = random_section(c, 2 + trial % 4, rng);
    const auto g = random_section(c, 3 + trial % 3, rng);
    const auto h = random_section(c, 1 + trial % 5, rng);
    CHECK(multiply(f, g) == multiply(g, f));
    CHECK(multiply(multiply(f, g), h) == multiply(f, multiply(g, h)));
    CHECK(multiply(f, g).leading_pole_order() == f.leading_pole_order() + g.leading_pole_order());
  }
}

TEST_CASE("multiply agrees with pointwise evaluation") {
  std::mt19937_64 rng(5);
  const auto c = random_curve(rng);
  const auto f = random_section(c, 5, rng);
  const auto g = random_section(c, 6, rng);
  const C x0(0.3, -0.8);
  const C y0 = std::sqrt(x0 * x0 * x0 + c.a.convert_to<double>() * x0 + c.b.convert_to<double>());
  const C lhs = evaluate(multiply(f, g), x0, y0);
  const C rhs = evaluate(f, x0, y0) * evaluate(g, x0, y0);
  CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(rhs)));
}

TEST_CASE("discriminant expansion: low orders vanish exactly, eps^2 term") {
  std::mt19937_64 rng(2718);
  std::optional<int> sigma;
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = trial == 0 ? kDefault : random_curve(rng);
    auto r = random_section(c, 2, rng);
    if (r.is_zero()) r = mono(c, 2, 1, false);
    const auto g4 = random_section(c, 4, rng);
    const auto g6 = random_section(c, 6, rng);
    const auto d = discriminant_expansion(r, g4, g6);
    REQUIRE(d.series.terms.size() == 3);
    CHECK(d.series.terms[0].is_zero());
    CHECK(d.series.terms[1].is_zero());
    for (const auto& t : d.series.terms) CHECK(t.bound() == 12);
    CHECK(d.series.terms[2] == d.expected * Rational(d.sigma));
    if (!sigma) sigma = d.sigma;
    CHECK(d.sigma == *sigma);
    CHECK(d.convention == "4a^3+27b^2");

    // Oracle: the whole eps-polynomial evaluated at a curve point, with no
    // section reduction involved.
    const C x0(-0.4, 0.9);
    const C y0 = std::sqrt(x0 * x0 * x0 + c.a.convert_to<double>() * x0 + c.b.convert_to<double>());
    const C rv = evaluate(r, x0, y0), g4v = evaluate(g4, x0, y0), g6v = evaluate(g6, x0, y0);
    const std::vector<C> a{-3.0 * rv * rv, -g4v};
    const std::vector<C> b{2.0 * rv * rv * rv, g4v * rv, g6v};
    const auto a3 = pmul(pmul(a, a), a);
    const auto b2 = pmul(b, b);
    const double scale = std::pow(std::abs(rv) + std::abs(g4v) + std::abs(g6v) + 1.0, 6);
    for (int k = 0; k <= 2; ++k) {
      const C dk = 4.0 * a3[static_cast<std::size_t>(k)] + 27.0 * b2[static_cast<std::size_t>(k)];
      const C want = evaluate(d.series.terms[static_cast<std::size_t>(k)], x0, y0);
      CHECK(std::abs(dk - want) < 1e-9 * scale);
    }
    const C closed = 9.0 * rv * rv * (12.0 * rv * g6v - g4v * g4v);
    CHECK(std::abs(evaluate(d.series.terms[2], x0, y0) - static_cast<double>(*sigma) * closed) < 1e-9 * scale);
  }
}

TEST_CASE("discriminant expansion: r = 0 is degenerate") {
  const auto c = kDefault;
  const SectionElement zero(c, 2);
  CHECK(code_of([&] { discriminant_expansion(zero, mono(c, 4, 2, false), mono(c, 6, 0, true)); }) ==
        ErrorCode::IdenticallyDegenerate);
}

TEST_CASE("limits_rank: generic, g4 = 0 and constant r") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 5; ++trial) {
    const auto c = trial == 0 ? kDefault : random_curve(rng);
    auto r = random_section(c, 2, rng);
    if (r.coefficient({1, false}) == 0) r += mono(c, 2, 1, false);
    const auto g4 = random_section(c, 4, rng);
    const auto cert = limits_rank(r, g4);
    CHECK(cert.rank == 8);
    CHECK(cert.rows == 8);
    CHECK(cert.cols == 10);
    CHECK_FALSE(cert.constant_r);

    const auto flat = limits_rank(r, SectionElement(c, 4));
    CHECK(flat.rank == 6);
  }
  const auto one = SectionElement::constant(kDefault, 1).lift(2);
  const auto cert = limits_rank(one, SectionElement(kDefault, 4));
  CHECK(cert.rank == 6);
  CHECK(cert.constant_r);
}
