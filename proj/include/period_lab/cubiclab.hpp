#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "period_lab/numkit.hpp"
#include "period_lab/projective_point.hpp"
#include "period_lab/tolerance.hpp"

namespace period_lab::cubic {

/// Homogeneous polynomial of fixed degree in x, y, z. Coefficients follow
/// the order x^d, x^{d-1}y, x^{d-1}z, x^{d-2}y^2, ..., z^d.
class TernaryForm {
 public:
  explicit TernaryForm(int degree);
  TernaryForm(int degree, std::vector<Complex> coefficients);

  static TernaryForm linear(Complex a, Complex b, Complex c);
  static int size(int degree) { return (degree + 1) * (degree + 2) / 2; }
  static int index(int i, int j, int k);
  static std::array<int, 3> exponents(int degree, int index);

  int degree() const { return degree_; }
  const std::vector<Complex>& coefficients() const { return coeffs_; }
  Complex coefficient(int i, int j, int k) const { return coeffs_[static_cast<std::size_t>(index(i, j, k))]; }
  Complex& coefficient(int i, int j, int k) { return coeffs_[static_cast<std::size_t>(index(i, j, k))]; }
  double coefficient_norm() const;

  Complex operator()(const Vec3& v) const;
  TernaryForm partial(int variable) const;
  /// v |-> F(M v).
  TernaryForm compose(const Eigen::Matrix3cd& m) const;

  TernaryForm& operator+=(const TernaryForm& other);
  TernaryForm& operator*=(Complex s);
  friend TernaryForm operator+(TernaryForm a, const TernaryForm& b) { return a += b; }
  friend TernaryForm operator*(TernaryForm a, Complex s) { return a *= s; }
  friend TernaryForm operator*(const TernaryForm& a, const TernaryForm& b);

 private:
  int degree_;
  std::vector<Complex> coeffs_;
};

using CubicCoefficients = std::array<Complex, 10>;

/// Plane cubic with unit-norm coefficient vector. Monomial order:
/// x^3, x^2y, x^2z, xy^2, xyz, xz^2, y^3, y^2z, yz^2, z^3.
class TernaryCubic {
 public:
  explicit TernaryCubic(const CubicCoefficients& coefficients);
  explicit TernaryCubic(const TernaryForm& form);

  const TernaryForm& form() const { return form_; }
  CubicCoefficients coefficients() const;

  Complex operator()(const Vec3& v) const { return form_(v); }
  Complex operator()(const ProjectivePoint& p) const { return form_(p.coords()); }
  Vec3 gradient(const Vec3& v) const;
  Eigen::Matrix3cd hessian_matrix(const Vec3& v) const;
  /// det of the matrix of second partials, a cubic form.
  const TernaryForm& hessian_form() const { return hessian_; }
  const std::array<TernaryForm, 3>& gradient_forms() const { return gradient_; }

  /// |F(p)| with unit-norm F and p.
  double residual(const ProjectivePoint& p) const { return std::abs((*this)(p)); }

 private:
  void derive();

  TernaryForm form_;
  std::array<TernaryForm, 3> gradient_{TernaryForm(2), TernaryForm(2), TernaryForm(2)};
  TernaryForm hessian_{3};
};

/// Element of PGL_3(C), stored with determinant 1.
class Projectivity {
 public:
  explicit Projectivity(const Eigen::Matrix3cd& m);
  static Projectivity identity();
  static Projectivity diagonal(Complex a, Complex b, Complex c);

  const Eigen::Matrix3cd& matrix() const { return m_; }
  Projectivity inverse() const;
  ProjectivePoint operator()(const ProjectivePoint& p) const;
  friend Projectivity operator*(const Projectivity& a, const Projectivity& b) {
    return Projectivity(a.m_ * b.m_);
  }

 private:
  Eigen::Matrix3cd m_;
};

/// Raw discriminant of a ternary cubic form: the 6x6 determinant whose rows
/// are the quadrics F_x, F_y, F_z, H_x, H_y, H_z (H the Hessian). It is a
/// degree-12 polynomial in the coefficients, vanishing exactly on singular
/// cubics, and a constant multiple of the resultant of the three partials.
Complex discriminant(const TernaryForm& cubic);

/// Hadamard-normalized |discriminant| in [0, 1].
double smoothness_measure(const TernaryCubic& f);

bool is_smooth(const TernaryCubic& f, double tol);

/// Intersection multiset of two cubics without common components. Uses a
/// random unitary change of coordinates, eliminates each affine variable in
/// turn through resultants and requires both orders to agree.
std::vector<numkit::PointCluster> intersect(const TernaryCubic& f, const TernaryCubic& g,
                                            const ToleranceProfile& tol);

/// The nine flexes (intersection with the Hessian), lex-sorted.
std::vector<ProjectivePoint> flexes(const TernaryCubic& f, const ToleranceProfile& tol = {});

/// Defining cubic of gamma(D): v |-> F(gamma^{-1} v).
TernaryCubic act(const Projectivity& gamma, const TernaryCubic& f);

/// Normalized gradient at p (dual coordinates of the tangent line).
Vec3 tangent_line(const TernaryCubic& f, const ProjectivePoint& p, double tol = 1e-10);

/// Chord-tangent group on a smooth cubic with a flex as origin.
class CubicGroup {
 public:
  /// Origin defaults to the lexicographically largest flex.
  explicit CubicGroup(TernaryCubic curve, const ToleranceProfile& tol = {});
  CubicGroup(TernaryCubic curve, const ProjectivePoint& origin, const ToleranceProfile& tol = {});

  const TernaryCubic& curve() const { return curve_; }
  const ProjectivePoint& origin() const { return origin_; }
  const ToleranceProfile& tolerances() const { return tol_; }

  /// Third intersection of the line pq with the curve (tangent when p == q).
  ProjectivePoint third_point(const ProjectivePoint& p, const ProjectivePoint& q) const;
  ProjectivePoint add(const ProjectivePoint& p, const ProjectivePoint& q) const;
  ProjectivePoint neg(const ProjectivePoint& p) const;
  ProjectivePoint sub(const ProjectivePoint& p, const ProjectivePoint& q) const {
    return add(p, neg(q));
  }
  ProjectivePoint scale(long long n, const ProjectivePoint& p) const;
  ProjectivePoint sum(const std::vector<ProjectivePoint>& points) const;
  bool is_torsion(const ProjectivePoint& p, long long n, double tol) const;

  void require_on_curve(const ProjectivePoint& p) const;

 private:
  TernaryCubic curve_;
  ProjectivePoint origin_;
  ToleranceProfile tol_;
};

inline ProjectivePoint group_add(const CubicGroup& g, const ProjectivePoint& p, const ProjectivePoint& q) {
  return g.add(p, q);
}
inline ProjectivePoint group_neg(const CubicGroup& g, const ProjectivePoint& p) { return g.neg(p); }
inline ProjectivePoint group_scale(const CubicGroup& g, long long n, const ProjectivePoint& p) {
  return g.scale(n, p);
}
inline bool is_torsion(const CubicGroup& g, const ProjectivePoint& p, long long n, double tol) {
  return g.is_torsion(p, n, tol);
}

TernaryCubic fermat_cubic();

/// Seeded generators used by experiments and tests.
TernaryCubic random_cubic(std::mt19937_64& rng);
TernaryCubic random_smooth_cubic(std::mt19937_64& rng, double smooth_tol = 1e-6);
Projectivity random_projectivity(std::mt19937_64& rng);
Eigen::Matrix3cd random_unitary(std::mt19937_64& rng);
/// A point of F on a random line.
ProjectivePoint random_point_on(const TernaryCubic& f, std::mt19937_64& rng);

}  // namespace period_lab::cubic
