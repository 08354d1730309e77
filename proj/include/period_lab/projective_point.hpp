#pragma once

#include <array>
#include <complex>

namespace period_lab {

using Complex = std::complex<double>;
using Vec3 = std::array<Complex, 3>;

/// A point of P^2(C). The stored representative has unit Euclidean norm and
/// its first non-negligible coordinate is real and positive.
class ProjectivePoint {
 public:
  ProjectivePoint(Complex x, Complex y, Complex z);
  explicit ProjectivePoint(const Vec3& coords);

  const Vec3& coords() const { return coords_; }
  Complex operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }

 private:
  Vec3 coords_;
};

/// Norm of p ^ q for unit representatives: the sine of the angle between the lines.
double chordal_distance(const ProjectivePoint& p, const ProjectivePoint& q);

/// Lexicographic order on canonical representatives (x, then y, then z; real
/// part before imaginary part). Components within `tol` compare equal.
bool lex_less(const ProjectivePoint& p, const ProjectivePoint& q, double tol = 1e-9);

Complex dot(const Vec3& a, const Vec3& b);  // bilinear, no conjugation
Vec3 cross(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);

}  // namespace period_lab
