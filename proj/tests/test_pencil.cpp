#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "period_lab/errors.hpp"
#include "period_lab/pencil.hpp"

using namespace period_lab;
using namespace period_lab::pencil;

namespace {

const Complex kZeta = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const LabError& e) {
    return e.code();
  }
  FAIL("expected a LabError");
  return ErrorCode::InvalidConfig;
}

}  // namespace

TEST_CASE("x9111 members") {
  const auto f = x9111(1.0, 0.0);
  const auto c = f.coefficients();
  const double s = 1.0 / std::sqrt(3.0);
  CHECK(std::abs(c[1] - s) < 1e-15);
  CHECK(std::abs(c[7] - s) < 1e-15);
  CHECK(std::abs(c[5] - s) < 1e-15);
  CHECK(std::abs(x9111(0.0, 1.0).coefficients()[4] - 1.0) < 1e-15);
  // Unnormalized value at [1:1:1] is 3 + 1 = 4.
  CHECK(std::abs(x9111(1.0, 1.0)(Vec3{1.0, 1.0, 1.0}) * 2.0 - 4.0) < 1e-14);
  CHECK(code_of([] { x9111(0.0, 0.0); }) == ErrorCode::ZeroParameters);
}

TEST_CASE("base points of the X9111 pencil are the coordinate vertices with multiplicity 3") {
  const auto locus = base_points(x9111_pencil());
  REQUIRE(locus.points.size() == 3);
  CHECK(locus.total_multiplicity() == 9);
  CHECK(locus.max_residual < 1e-8);
  const std::array<ProjectivePoint, 3> vertices{ProjectivePoint(1.0, 0.0, 0.0), ProjectivePoint(0.0, 1.0, 0.0),
                                                ProjectivePoint(0.0, 0.0, 1.0)};
  for (const auto& v : vertices) {
    bool found = false;
    for (const auto& p : locus.points) found = found || (chordal_distance(p.point, v) < 1e-6 && p.multiplicity == 3);
    CHECK(found);
  }
}

TEST_CASE("base points of random pencils") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 5; ++trial) {
    const auto p = random_pencil(rng);
    const auto locus = base_points(p);
    CHECK(locus.points.size() == 9);
    CHECK(locus.total_multiplicity() == 9);
    CHECK(locus.max_residual < 1e-8);
    // The base locus only depends on the pencil, not on its generators.
    const CubicPencil other(p.f(), p.member(1.0, 1.0));
    CHECK(same_locus(locus, base_points(other), 1e-6));
  }
}

TEST_CASE("proportional generators share a component") {
  std::mt19937_64 rng(1);
  const auto f = cubic::random_cubic(rng);
  CHECK(code_of([&] { base_points(CubicPencil(f, f)); }) == ErrorCode::NonFinitelyMany);
  // A common line component.
  const auto line = cubic::TernaryForm::linear(1.0, 2.0, -1.0);
  const auto q1 = cubic::TernaryForm::linear(0.3, 1.0, 0.0) * cubic::TernaryForm::linear(1.0, 0.0, 0.7);
  const auto q2 = cubic::TernaryForm::linear(0.0, 1.0, 2.0) * cubic::TernaryForm::linear(1.0, -1.0, 0.2);
  const CubicPencil shared(cubic::TernaryCubic(line * q1), cubic::TernaryCubic(line * q2));
  CHECK(code_of([&] { base_points(shared); }) == ErrorCode::NonFinitelyMany);
}

TEST_CASE("singular members of the X9111 pencil follow the 9,1,1,1 pattern") {
  const auto p = x9111_pencil();
  const auto members = singular_members(p);
  CHECK(multiplicity_pattern(members) == std::vector<int>{9, 1, 1, 1});
  for (const auto& m : members) {
    CHECK_FALSE(cubic::is_smooth(p.member(m.lambda, m.mu), 1e-9));
  }
  // Oracle: lambda (x^2y+y^2z+z^2x) + mu xyz is singular iff mu^3 = -27 lambda^3
  // or lambda = 0. The generators are unit-normalized, which rescales t.
  for (const auto& m : members) {
    if (m.multiplicity != 1) continue;
    const Complex ratio = m.mu / m.lambda * std::sqrt(3.0);
    CHECK(std::abs(std::pow(ratio, 3) + 27.0) < 1e-6);
  }
}

TEST_CASE("singular members of the Hesse pencil and of a random pencil") {
  const CubicPencil hesse(cubic::fermat_cubic(), x9111(0.0, 1.0));
  CHECK(multiplicity_pattern(singular_members(hesse)) == std::vector<int>{3, 3, 3, 3});

  std::mt19937_64 rng(77);
  const auto generic = random_pencil(rng);
  const auto members = singular_members(generic);
  CHECK(multiplicity_pattern(members) == std::vector<int>(12, 1));
  for (const auto& m : members) CHECK(cubic::smoothness_measure(generic.member(m.lambda, m.mu)) < 1e-8);
}

TEST_CASE("is_fixed_by") {
  const auto p = x9111_pencil();
  CHECK(is_fixed_by(cubic::Projectivity::diagonal(1.0, kZeta, kZeta * kZeta), p));
  CHECK(is_fixed_by(cubic::Projectivity::identity(), p));
  std::mt19937_64 rng(5);
  const auto q = random_pencil(rng);
  CHECK(is_fixed_by(cubic::Projectivity::identity(), q));
  CHECK_FALSE(is_fixed_by(cubic::random_projectivity(rng), q));
}
