#include "period_lab/period_iif.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <optional>

#include "period_lab/errors.hpp"

namespace period_lab::iif {

namespace {

constexpr double kDegenerateTol = 1e-10;
constexpr double kChartFloor = 1e-3;
constexpr double kBranchFloor = 1e-6;
constexpr double kIdentityTol = 1e-8;

cubic::TernaryCubic weierstrass_cubic(Complex c3, Complex c2, Complex c1, Complex c0) {
  cubic::CubicCoefficients k{};
  k[0] = c3;   // X^3
  k[2] = c2;   // X^2 Z
  k[5] = c1;   // X Z^2
  k[9] = c0;   // Z^3
  k[7] = -1.0; // -Y^2 Z
  return cubic::TernaryCubic(k);
}

const ProjectivePoint kInfinity(0.0, 1.0, 0.0);

Complex nearest_root(Complex square, Complex hint) {
  const Complex r = std::sqrt(square);
  return std::abs(r - hint) <= std::abs(-r - hint) ? r : -r;
}

// A^3 / (4A^3 + 27B^2) for y^2 = x^3 + p x^2 + q x + s.
Complex scaled_j(Complex p, Complex q, Complex s) {
  const Complex a = q - p * p / 3.0;
  const Complex b = s - p * q / 3.0 + 2.0 * p * p * p / 27.0;
  return a * a * a / (4.0 * a * a * a + 27.0 * b * b);
}

struct Chart {
  int pivot = 0;
  int a = 1;
  int b = 2;
};

Chart chart_for(const ProjectivePoint& p) {
  int pivot = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(p[i]) > std::abs(p[pivot])) pivot = i;
  }
  return {pivot, (pivot + 1) % 3, (pivot + 2) % 3};
}

std::array<Complex, 2> read_chart(const ProjectivePoint& p, const Chart& c) {
  if (std::abs(p[c.pivot]) < kChartFloor) fail(ErrorCode::ChartBreakdown, "output left its affine chart");
  return {p[c.a] / p[c.pivot], p[c.b] / p[c.pivot]};
}

std::array<Complex, 2> affine(const ProjectivePoint& r) {
  if (std::abs(r[2]) < kChartFloor * std::max(std::abs(r[0]), std::abs(r[1]))) {
    fail(ErrorCode::ChartBreakdown, "point at or near infinity");
  }
  return {r[0] / r[2], r[1] / r[2]};
}

}  // namespace

BiellipticCurve::BiellipticCurve(Complex a_, Complex b_, Complex c_) : a(a_), b(b_), c(c_) {
  // Weighted scale of u^3 + a u^2 + b u + c; the sextic has distinct roots iff
  // this cubic does and c != 0.
  const double s = std::max({std::abs(a), std::sqrt(std::abs(b)), std::cbrt(std::abs(c)), 1e-300});
  const Complex disc = a * a * b * b - 4.0 * b * b * b - 4.0 * a * a * a * c - 27.0 * c * c + 18.0 * a * b * c;
  if (std::abs(c) < kDegenerateTol * s * s * s || std::abs(disc) < kDegenerateTol * std::pow(s, 6)) {
    fail(ErrorCode::DegenerateSextic, "the sextic has a repeated root");
  }
}

BiellipticCurve BiellipticCurve::rescaled(Complex lambda) const {
  const Complex l2 = lambda * lambda;
  return {a / l2, b / (l2 * l2), c / (l2 * l2 * l2)};
}

QuotientPair::QuotientPair(const BiellipticCurve& d, const ToleranceProfile& tol)
    : d_(d),
      e1_(weierstrass_cubic(1.0, d.a, d.b, d.c), kInfinity, tol),
      e2_(weierstrass_cubic(d.c, d.b, d.a, 1.0), kInfinity, tol) {
  const std::array<Complex, 3> xs{Complex(0.3, 0.2), Complex(-0.7, 0.5), Complex(1.1, -0.4)};
  for (const auto& x : xs) {
    const Complex x2 = x * x;
    const Complex y = std::sqrt(((x2 + d_.a) * x2 + d_.b) * x2 + d_.c);
    const CurvePoint p{x, y};
    const CurvePoint ip{-x, y};
    check_residual_ = std::max({check_residual_, e1_.curve().residual(phi1(p)), e2_.curve().residual(phi2(p)),
                                chordal_distance(phi1(p), phi1(ip)),
                                chordal_distance(phi2(ip), e2_.neg(phi2(p)))});
  }
  if (!(check_residual_ < kIdentityTol)) fail(ErrorCode::InvalidConfig, "quotient maps fail their identities");
}

ProjectivePoint QuotientPair::phi1(const CurvePoint& p) const { return ProjectivePoint(p.x * p.x, p.y, 1.0); }

ProjectivePoint QuotientPair::phi2(const CurvePoint& p) const { return ProjectivePoint(p.x, p.y, p.x * p.x * p.x); }

std::array<ProjectivePoint, 2> QuotientPair::branch_points() const {
  const Complex s = std::sqrt(d_.c);
  return {ProjectivePoint(0.0, s, 1.0), ProjectivePoint(0.0, -s, 1.0)};
}

ProjectivePoint QuotientPair::e1_point(Complex x, Complex hint) const {
  const Complex y = nearest_root(((x + d_.a) * x + d_.b) * x + d_.c, hint);
  return ProjectivePoint(x, y, 1.0);
}

QuotientPair build_quotients(const BiellipticCurve& d, const ToleranceProfile& tol) { return QuotientPair(d, tol); }

std::array<CurvePoint, 2> lift(const QuotientPair& q, const ProjectivePoint& r) {
  q.e1().require_on_curve(r);
  const auto [x2, y] = affine(r);
  const Complex x = std::sqrt(x2);
  return {CurvePoint{x, y}, CurvePoint{-x, y}};
}

ProjectivePoint prym_period_of_lift(const QuotientPair& q, const CurvePoint& p) {
  const auto image = q.phi2(p);
  return q.e2().add(image, image);
}

ProjectivePoint prym_period(const QuotientPair& q, const ProjectivePoint& r) {
  return prym_period_of_lift(q, lift(q, r)[0]);
}

IifInstance random_instance(std::uint64_t seed, const ToleranceProfile& tol) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  auto gaussian = [&] {
    const double re = n(rng);
    return Complex(re, n(rng));
  };
  for (;;) {
    const Complex a = 0.7 * gaussian();
    const Complex b = 0.7 * gaussian();
    std::optional<BiellipticCurve> d;
    try {
      d.emplace(a, b, 1.0);
    } catch (const LabError&) {
      continue;
    }
    const QuotientPair q(*d, tol);
    std::vector<ProjectivePoint> pts;
    for (int i = 0; i < 7; ++i) pts.push_back(q.e1_point(gaussian(), gaussian()));
    const auto last = q.e1().neg(q.e1().sum(pts));
    // Keep r_8 in the affine chart and away from the branch points.
    if (std::abs(last[2]) < 0.05 * std::max(std::abs(last[0]), std::abs(last[1]))) continue;
    const auto [x8, y8] = affine(last);
    if (std::abs(x8) < 1e-2 || std::abs(y8) < 1e-2) continue;
    pts.push_back(last);
    return {*d, std::move(pts), seed};
  }
}

double constraint_residual(const QuotientPair& q, const IifInstance& inst) {
  return chordal_distance(q.e1().sum(inst.points), q.e1().origin());
}

bool constraint_check(const QuotientPair& q, const IifInstance& inst, double tol) {
  return constraint_residual(q, inst) < tol;
}

PrymPeriod prym_periods(const QuotientPair& q, const IifInstance& inst) {
  PrymPeriod out;
  for (const auto& r : inst.points) {
    const auto p = lift(q, r)[0];
    out.lifts.push_back(p);
    out.points.push_back(prym_period_of_lift(q, p));
    out.sign_provenance.push_back(std::abs(p.x) < kBranchFloor ? "branch-point" : "principal-root");
  }
  return out;
}

Complex e2_j_invariant(const BiellipticCurve& d) {
  // Y^2 = c X^3 + b X^2 + a X + 1 becomes monic in u = c X, v = c Y.
  return scaled_j(d.b, d.a * d.c, d.c * d.c);
}

Complex e1_j_invariant(const BiellipticCurve& d) { return scaled_j(d.a, d.b, d.c); }

IifDominance dominance_certificate_iif(const IifInstance& inst, double step, double gap_tol,
                                       const ToleranceProfile& tol, Exec exec) {
  if (std::abs(inst.curve.c - 1.0) > 1e-12) fail(ErrorCode::InvalidConfig, "dominance chart needs c = 1");
  if (inst.points.size() != 8) fail(ErrorCode::InvalidConfig, "expected eight marked points");
  const QuotientPair q0(inst.curve, tol);
  IifDominance result;
  result.max_constraint_residual = constraint_residual(q0, inst);
  if (result.max_constraint_residual > tol.point_tol) fail(ErrorCode::InvalidConfig, "instance violates the constraint");
  result.base = prym_periods(q0, inst);
  const auto& ref = result.base;

  std::vector<std::array<Complex, 2>> ref_affine;
  for (const auto& r : inst.points) ref_affine.push_back(affine(r));
  for (const auto& p : ref.lifts) {
    if (std::abs(p.x) < kBranchFloor) fail(ErrorCode::ContinuationFailure, "a marked point sits on a branch point");
  }
  for (const auto& ra : ref_affine) {
    if (std::abs(ra[1]) < kBranchFloor) fail(ErrorCode::ContinuationFailure, "a marked point is 2-torsion");
  }
  std::vector<Chart> charts;
  for (const auto& p : ref.points) charts.push_back(chart_for(p));

  std::vector<Complex> base{inst.curve.a, inst.curve.b};
  for (int i = 0; i < 7; ++i) base.push_back(ref_affine[static_cast<std::size_t>(i)][0]);

  std::mutex mu;
  const numkit::VectorMap evaluate = [&](std::span<const Complex> z) {
    const BiellipticCurve d(z[0], z[1], 1.0);
    const QuotientPair q(d, tol);
    std::vector<ProjectivePoint> pts;
    for (std::size_t i = 0; i < 7; ++i) pts.push_back(q.e1_point(z[2 + i], ref_affine[i][1]));
    pts.push_back(q.e1().neg(q.e1().sum(pts)));

    std::vector<Complex> out;
    std::vector<Complex> moduli{e2_j_invariant(d)};
    // Scale-free abscissa x A / B in the short model of E2.
    const Complex shift = d.b / 3.0;
    const Complex sa = d.a * d.c - d.b * d.b / 3.0;
    const Complex sb = d.c * d.c - d.a * d.b * d.c / 3.0 + 2.0 * d.b * d.b * d.b / 27.0;
    for (std::size_t i = 0; i < 8; ++i) {
      const auto [x2, y] = affine(pts[i]);
      const Complex x = nearest_root(x2, ref.lifts[i].x);
      if (std::abs(x) < kBranchFloor) fail(ErrorCode::ContinuationFailure, "lift reached a branch point");
      const auto period = prym_period_of_lift(q, {x, y});
      const auto v = read_chart(period, charts[i]);
      out.insert(out.end(), v.begin(), v.end());
      const auto [px, py] = affine(period);
      moduli.push_back((d.c * px + shift) * sa / sb);
    }
    {
      const std::lock_guard<std::mutex> lock(mu);
      result.max_constraint_residual =
          std::max(result.max_constraint_residual, chordal_distance(q.e1().sum(pts), q.e1().origin()));
    }
    out.insert(out.end(), moduli.begin(), moduli.end());
    return out;
  };

  const Eigen::MatrixXcd jac = numkit::finite_difference_jacobian(evaluate, base, step, exec);
  result.certificate = numkit::certify_rank(jac.topRows(16), gap_tol, step, inst.seed);
  result.moduli_certificate = numkit::certify_rank(jac.bottomRows(9), gap_tol, step, inst.seed);
  return result;
}

bool branch_torsion_check(const BiellipticCurve& d, long long n, double tol, const ToleranceProfile& profile) {
  if (n < 1) fail(ErrorCode::NonPositive, "torsion order must be positive");
  const QuotientPair q(d, profile);
  const auto r9 = q.branch_points()[0];
  const auto r10 = q.branch_points()[1];
  return q.e1().is_torsion(q.e1().sub(r9, r10), n, tol);
}

BiellipticCurve order_eight_curve(double d) {
  // Tate normal form y^2 + (1 - c')xy - b'y = x^3 - b'x^2 with (0, 0) of order
  // 8, then completing the square in y.
  const double bp = (2.0 * d - 1.0) * (d - 1.0);
  const double cp = bp / d;
  const double u = 1.0 - cp;
  return {-bp + u * u / 4.0, -u * bp / 2.0, bp * bp / 4.0};
}

}  // namespace period_lab::iif
