#include <algorithm>
#include <cmath>

#include "period_lab/cubiclab.hpp"
#include "period_lab/errors.hpp"

namespace period_lab::cubic {

namespace {

constexpr double kTangentThreshold = 1e-7;

Vec3 conj3(const Vec3& v) { return {std::conj(v[0]), std::conj(v[1]), std::conj(v[2])}; }

Complex hermitian(const Vec3& a, const Vec3& b) { return dot(conj3(a), b); }

Vec3 normalize(Vec3 v) {
  const double n = norm(v);
  for (auto& c : v) c /= n;
  return v;
}

ProjectivePoint default_origin(const TernaryCubic& curve, const ToleranceProfile& tol) {
  const auto f = flexes(curve, tol);
  return *std::max_element(f.begin(), f.end(), [](const auto& a, const auto& b) { return lex_less(a, b); });
}

}  // namespace

CubicGroup::CubicGroup(TernaryCubic curve, const ToleranceProfile& tol)
    : CubicGroup(curve, default_origin(curve, tol), tol) {}

CubicGroup::CubicGroup(TernaryCubic curve, const ProjectivePoint& origin, const ToleranceProfile& tol)
    : curve_(std::move(curve)), origin_(origin), tol_(tol) {
  if (!is_smooth(curve_, tol_.smooth_tol)) fail(ErrorCode::SingularPoint, "group curve is not smooth");
  require_on_curve(origin_);
  const auto& h = curve_.hessian_form();
  const double hess = std::abs(h(origin_.coords())) / h.coefficient_norm();
  if (hess > tol_.on_curve_tol) fail(ErrorCode::OffCurve, "group origin is not a flex");
}

void CubicGroup::require_on_curve(const ProjectivePoint& p) const {
  const double r = curve_.residual(p);
  if (!(r <= tol_.on_curve_tol)) {
    fail(ErrorCode::OffCurve, "point residual " + std::to_string(r) + " exceeds on-curve tolerance");
  }
}

ProjectivePoint CubicGroup::third_point(const ProjectivePoint& p, const ProjectivePoint& q) const {
  require_on_curve(p);
  require_on_curve(q);
  const Vec3& pv = p.coords();
  const bool tangent = chordal_distance(p, q) < kTangentThreshold;
  Vec3 line = tangent ? curve_.gradient(pv) : cross(pv, q.coords());
  if (norm(line) < 1e-14) fail(ErrorCode::SingularPoint, "cannot form the chord");
  line = normalize(line);

  // Orthonormal frame (n1, n2) of the line with n1 = p.
  const Vec3 n1 = pv;
  const Vec3 n2 = normalize(cross(conj3(pv), line));
  const Complex sq = tangent ? Complex(1.0) : hermitian(n1, q.coords());
  const Complex tq = tangent ? Complex(0.0) : hermitian(n2, q.coords());

  // F(s n1 + t n2) = a s^3 + b s^2 t + c s t^2 + d t^3.
  const Complex a = curve_(n1);
  const Complex b = dot(curve_.gradient(n1), n2);
  const Complex c = dot(curve_.gradient(n2), n1);
  const Complex d = curve_(n2);

  // Known factor t (t_q s - s_q t) = m1 s t + m2 t^2; solve for the last
  // linear factor (alpha s + beta t) in the least-squares sense.
  const Complex m1 = tq;
  const Complex m2 = -sq;
  Eigen::Matrix<Complex, 4, 2> sys;
  sys << 0.0, 0.0, m1, 0.0, m2, m1, 0.0, m2;
  const Eigen::Matrix<Complex, 4, 1> rhs(a, b, c, d);
  const Eigen::Matrix<Complex, 2, 1> lin = sys.colPivHouseholderQr().solve(rhs);
  Complex s3 = lin(1);
  Complex t3 = -lin(0);

  auto g = [&](Complex s, Complex t) { return ((a * s + b * t) * s + c * t * t) * s + d * t * t * t; };
  if (std::abs(s3) >= std::abs(t3)) {
    Complex u = t3 / s3;
    for (int it = 0; it < 3; ++it) {
      const Complex val = g(1.0, u);
      const Complex slope = b + 2.0 * c * u + 3.0 * d * u * u;
      if (slope == Complex(0.0)) break;
      const Complex next = u - val / slope;
      if (std::abs(g(1.0, next)) >= std::abs(val)) break;
      u = next;
    }
    s3 = 1.0;
    t3 = u;
  } else {
    Complex u = s3 / t3;
    for (int it = 0; it < 3; ++it) {
      const Complex val = g(u, 1.0);
      const Complex slope = 3.0 * a * u * u + 2.0 * b * u + c;
      if (slope == Complex(0.0)) break;
      const Complex next = u - val / slope;
      if (std::abs(g(next, 1.0)) >= std::abs(val)) break;
      u = next;
    }
    s3 = u;
    t3 = 1.0;
  }
  return ProjectivePoint(s3 * n1[0] + t3 * n2[0], s3 * n1[1] + t3 * n2[1], s3 * n1[2] + t3 * n2[2]);
}

ProjectivePoint CubicGroup::add(const ProjectivePoint& p, const ProjectivePoint& q) const {
  return third_point(origin_, third_point(p, q));
}

ProjectivePoint CubicGroup::neg(const ProjectivePoint& p) const { return third_point(origin_, p); }

ProjectivePoint CubicGroup::scale(long long n, const ProjectivePoint& p) const {
  require_on_curve(p);
  ProjectivePoint base = n < 0 ? neg(p) : p;
  unsigned long long k = n < 0 ? static_cast<unsigned long long>(-(n + 1)) + 1ULL
                               : static_cast<unsigned long long>(n);
  ProjectivePoint acc = origin_;
  while (k > 0) {
    if (k & 1ULL) acc = add(acc, base);
    k >>= 1ULL;
    if (k > 0) base = add(base, base);
  }
  return acc;
}

ProjectivePoint CubicGroup::sum(const std::vector<ProjectivePoint>& points) const {
  ProjectivePoint acc = origin_;
  for (const auto& p : points) acc = add(acc, p);
  return acc;
}

bool CubicGroup::is_torsion(const ProjectivePoint& p, long long n, double tol) const {
  return chordal_distance(scale(n, p), origin_) < tol;
}

}  // namespace period_lab::cubic
