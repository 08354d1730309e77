#include <cmath>
#include <optional>
#include <random>

#include <boost/multiprecision/cpp_int.hpp>

#include "doctest.h"
#include "period_lab/errors.hpp"
#include "period_lab/period_iif.hpp"

using namespace period_lab;
using namespace period_lab::iif;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const LabError& e) {
    return e.code();
  }
  FAIL("expected a LabError");
  return ErrorCode::InvalidConfig;
}

bool same_point(const ProjectivePoint& a, const ProjectivePoint& b, double tol = 1e-8) {
  return chordal_distance(a, b) < tol;
}

Complex gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  const double re = n(rng);
  return {re, n(rng)};
}

BiellipticCurve random_curve(std::mt19937_64& rng) { return {gaussian(rng), gaussian(rng), gaussian(rng)}; }

// Exact affine group law on Y^2 = X^3 + a X^2 + b X + c; nullopt is the origin.
using Q = boost::multiprecision::cpp_rational;
using QPoint = std::optional<std::pair<Q, Q>>;

QPoint exact_add(const QPoint& p, const QPoint& q, const Q& a, const Q& b) {
  if (!p) return q;
  if (!q) return p;
  const auto& [x1, y1] = *p;
  const auto& [x2, y2] = *q;
  Q slope;
  if (x1 == x2) {
    if (y1 + y2 == 0) return std::nullopt;
    slope = (3 * x1 * x1 + 2 * a * x1 + b) / (2 * y1);
  } else {
    slope = (y2 - y1) / (x2 - x1);
  }
  const Q x3 = slope * slope - a - x1 - x2;
  return std::make_pair(x3, -(y1 + slope * (x3 - x1)));
}

}  // namespace

TEST_CASE("build_quotients: maps, branch points, degenerate sextics") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 4; ++trial) {
    const auto d = random_curve(rng);
    const auto q = build_quotients(d);
    CHECK(q.max_check_residual() < 1e-10);
    const Complex x = gaussian(rng);
    const Complex y = std::sqrt(std::pow(x, 6) + d.a * std::pow(x, 4) + d.b * x * x + d.c);
    CHECK(q.e1().curve().residual(q.phi1({x, y})) < 1e-10);
    CHECK(q.e2().curve().residual(q.phi2({x, y})) < 1e-10);
    const auto [r9, r10] = q.branch_points();
    CHECK(q.e1().curve().residual(r9) < 1e-12);
    CHECK(same_point(r10, q.e1().neg(r9)));
    CHECK(same_point(q.e1().add(r9, r10), q.e1().origin()));
  }
  CHECK(code_of([] { BiellipticCurve(1.0, 2.0, 0.0); }) == ErrorCode::DegenerateSextic);
  // u^3 - 4u^2 + 5u - 2 = (u - 1)^2 (u - 2)
  CHECK(code_of([] { BiellipticCurve(-4.0, 5.0, -2.0); }) == ErrorCode::DegenerateSextic);
}

TEST_CASE("lift: examples and section property") {
  const BiellipticCurve d({0.4, -0.3}, {1.2, 0.5}, {-0.6, 0.8});
  const auto q = build_quotients(d);
  const Complex y0 = std::sqrt(1.0 + d.a + d.b + d.c);
  const auto pq = lift(q, ProjectivePoint(1.0, y0, 1.0));
  CHECK(std::abs(pq[0].x - 1.0) < 1e-12);
  CHECK(std::abs(pq[1].x + 1.0) < 1e-12);
  CHECK(std::abs(pq[0].y - y0) < 1e-12);

  const auto branch = lift(q, q.branch_points()[0]);
  CHECK(std::abs(branch[0].x) < 1e-12);
  CHECK(std::abs(branch[0].x - branch[1].x) < 1e-12);

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    const auto r = q.e1_point(gaussian(rng));
    for (const auto& p : lift(q, r)) CHECK(same_point(q.phi1(p), r, 1e-10));
  }
  CHECK(code_of([&] { lift(q, q.e1().origin()); }) == ErrorCode::ChartBreakdown);
  CHECK(code_of([&] { lift(q, ProjectivePoint(1.0, 2.0, 3.0)); }) == ErrorCode::OffCurve);
}

TEST_CASE("prym_period: branch points, sign swap, closure") {
  std::mt19937_64 rng(15);
  const auto d = random_curve(rng);
  const auto q = build_quotients(d);
  for (const auto& b : q.branch_points()) CHECK(same_point(prym_period(q, b), q.e2().origin()));
  for (int trial = 0; trial < 5; ++trial) {
    const auto r = q.e1_point(gaussian(rng), gaussian(rng));
    const auto [p, p_swapped] = lift(q, r);
    const auto period = prym_period_of_lift(q, p);
    CHECK(q.e2().curve().residual(period) < 1e-9);
    CHECK(same_point(prym_period_of_lift(q, p_swapped), q.e2().neg(period)));
    CHECK_FALSE(same_point(period, q.e2().origin(), 1e-3));
    // The opposite point of E1 has lift (x, -y), whose image is the negative.
    const ProjectivePoint minus_r = q.e1().neg(r);
    CHECK(same_point(prym_period_of_lift(q, {p.x, -p.y}), q.e2().neg(period)));
    CHECK(same_point(q.phi1({p.x, -p.y}), minus_r));
  }
}

TEST_CASE("constraint_check examples") {
  std::mt19937_64 rng(23);
  const BiellipticCurve d(gaussian(rng), gaussian(rng), 1.0);
  const auto q = build_quotients(d);
  IifInstance pairs{d, {}, 0};
  for (int i = 0; i < 4; ++i) {
    const auto t = q.e1_point(gaussian(rng), gaussian(rng));
    pairs.points.push_back(t);
    pairs.points.push_back(q.e1().neg(t));
  }
  CHECK(constraint_check(q, pairs, 1e-8));

  IifInstance completed{d, {}, 0};
  for (int i = 0; i < 7; ++i) completed.points.push_back(q.e1_point(gaussian(rng), gaussian(rng)));
  completed.points.push_back(q.e1().neg(q.e1().sum(completed.points)));
  CHECK(constraint_check(q, completed, 1e-8));

  IifInstance independent{d, {}, 0};
  for (int i = 0; i < 8; ++i) independent.points.push_back(q.e1_point(gaussian(rng), gaussian(rng)));
  CHECK_FALSE(constraint_check(q, independent, 1e-8));

  for (std::uint64_t seed : {1, 2, 3}) {
    const auto inst = random_instance(seed);
    CHECK(constraint_check(build_quotients(inst.curve), inst, 1e-8));
  }
}

TEST_CASE("dominance: full rank on the constrained family") {
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto inst = random_instance(seed);
    for (double step : {1e-4, 1e-5}) {
      const auto r = dominance_certificate_iif(inst, step, 1e-6);
      CHECK(r.certificate.rows == 16);
      CHECK(r.certificate.cols == 9);
      // Dominance onto a target of dimension 9 (eight points plus j of the
      // Prym) forces full rank on the 9-dimensional domain.
      CHECK(r.certificate.rank == 9);
      CHECK(r.moduli_certificate.rank == 9);
      CHECK(r.moduli_certificate.gap_ratio > 1e-6);
      CHECK(r.max_constraint_residual < 1e-8);
      CHECK(r.base.isogeny_ambiguity == 2);
    }
  }
}

TEST_CASE("dominance: serial reference and parallel agree") {
  const auto inst = random_instance(2);
  const auto s = dominance_certificate_iif(inst, 1e-5, 1e-6, {}, Exec::serial);
  const auto p = dominance_certificate_iif(inst, 1e-5, 1e-6, {}, Exec::parallel);
  CHECK(s.certificate.singular_values == p.certificate.singular_values);
  CHECK(s.moduli_certificate.singular_values == p.moduli_certificate.singular_values);
}

TEST_CASE("dominance: instances on the branch locus are rejected") {
  auto inst = random_instance(1);
  const auto q = build_quotients(inst.curve);
  inst.points[0] = q.branch_points()[0];
  inst.points[1] = q.branch_points()[1];
  inst.points[7] = q.e1().neg(q.e1().sum({inst.points.begin(), inst.points.begin() + 7}));
  CHECK(code_of([&] { dominance_certificate_iif(inst, 1e-5, 1e-6); }) == ErrorCode::ContinuationFailure);
}

TEST_CASE("order-eight branch point: exact oracle and torsion check") {
  // d = 3: b' = 10, c' = 10/3.
  const Q a = Q(-311, 36), b = Q(35, 3), c = 25;
  const QPoint p = std::make_pair(Q(0), Q(-5));
  REQUIRE(p->second * p->second == c);
  QPoint acc = p;
  int order = 1;
  while (acc && order < 20) {
    acc = exact_add(acc, p, a, b);
    ++order;
  }
  CHECK(order == 8);

  const auto d = order_eight_curve(3.0);
  CHECK(std::abs(d.a - a.convert_to<double>()) < 1e-12);
  CHECK(std::abs(d.b - b.convert_to<double>()) < 1e-12);
  CHECK(std::abs(d.c - c.convert_to<double>()) < 1e-12);
  CHECK(branch_torsion_check(d, 4, 1e-6));
  CHECK(branch_torsion_check(d, 8, 1e-6));
  CHECK(branch_torsion_check(d, 12, 1e-6));
  CHECK_FALSE(branch_torsion_check(d, 2, 1e-6));
  CHECK_FALSE(branch_torsion_check(d, 3, 1e-6));

  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 3; ++trial) CHECK_FALSE(branch_torsion_check(random_curve(rng), 4, 1e-6));
}

TEST_CASE("special locus: all marked points at a branch point") {
  const auto d = order_eight_curve(3.0);
  const auto q = build_quotients(d);
  const IifInstance inst{d, std::vector<ProjectivePoint>(8, q.branch_points()[0]), 0};
  CHECK(constraint_check(q, inst, 1e-6));
  const auto periods = prym_periods(q, inst);
  for (const auto& pt : periods.points) CHECK(same_point(pt, q.e2().origin()));
  for (const auto& s : periods.sign_provenance) CHECK(s == "branch-point");
}

TEST_CASE("rescaling x changes the model by isomorphisms only") {
  std::mt19937_64 rng(57);
  const auto d = random_curve(rng);
  const Complex lambda{1.3, -0.4};
  const auto scaled = d.rescaled(lambda);
  CHECK(std::abs(e1_j_invariant(d) - e1_j_invariant(scaled)) < 1e-10 * std::abs(e1_j_invariant(d)));
  CHECK(std::abs(e2_j_invariant(d) - e2_j_invariant(scaled)) < 1e-10 * std::abs(e2_j_invariant(d)));

  const auto q = build_quotients(d);
  const auto qs = build_quotients(scaled);
  for (int trial = 0; trial < 3; ++trial) {
    const auto r = q.e1_point(gaussian(rng), gaussian(rng));
    const auto p = lift(q, r)[0];
    const CurvePoint ps{p.x / lambda, p.y / std::pow(lambda, 3)};
    const auto period = prym_period_of_lift(q, p);
    // E2 -> E2': (X, Y, Z) -> (lambda^2 X, Y, Z).
    const auto moved = ProjectivePoint(lambda * lambda * period[0], period[1], period[2]);
    CHECK(same_point(prym_period_of_lift(qs, ps), moved));
  }
}
