#include "period_lab/projective_point.hpp"

#include <algorithm>
#include <cmath>

#include "period_lab/errors.hpp"

namespace period_lab {

namespace {

constexpr double kCanonicalEps = 1e-12;

Vec3 canonicalize(Vec3 c) {
  const double n = norm(c);
  if (!(n > 0.0) || !std::isfinite(n)) {
    fail(ErrorCode::ZeroParameters, "projective point with all coordinates zero");
  }
  for (auto& v : c) v /= n;
  for (const auto& v : c) {
    if (std::abs(v) > kCanonicalEps) {
      const Complex phase = std::conj(v) / std::abs(v);
      for (auto& w : c) w *= phase;
      break;
    }
  }
  return c;
}

int compare_real(double a, double b, double tol) {
  if (std::abs(a - b) <= tol) return 0;
  return a < b ? -1 : 1;
}

}  // namespace

ProjectivePoint::ProjectivePoint(Complex x, Complex y, Complex z)
    : coords_(canonicalize({x, y, z})) {}

ProjectivePoint::ProjectivePoint(const Vec3& coords) : coords_(canonicalize(coords)) {}

Complex dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm(const Vec3& a) {
  return std::sqrt(std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]));
}

double chordal_distance(const ProjectivePoint& p, const ProjectivePoint& q) {
  // |p ^ q| via the 2x2 minors; stays accurate for nearby points.
  const Vec3 m = cross(p.coords(), q.coords());
  return std::min(1.0, norm(m));
}

bool lex_less(const ProjectivePoint& p, const ProjectivePoint& q, double tol) {
  for (int i = 0; i < 3; ++i) {
    if (int c = compare_real(p[i].real(), q[i].real(), tol); c != 0) return c < 0;
    if (int c = compare_real(p[i].imag(), q[i].imag(), tol); c != 0) return c < 0;
  }
  return false;
}

}  // namespace period_lab
