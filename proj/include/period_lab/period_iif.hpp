#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "period_lab/cubiclab.hpp"
#include "period_lab/exec.hpp"
#include "period_lab/numkit.hpp"

namespace period_lab::iif {

using cubic::CubicGroup;

/// y^2 = x^6 + a x^4 + b x^2 + c, a genus-2 double cover of E1.
struct BiellipticCurve {
  Complex a;
  Complex b;
  Complex c;

  BiellipticCurve(Complex a, Complex b, Complex c);
  /// x -> lambda x, y -> lambda^3 y.
  BiellipticCurve rescaled(Complex lambda) const;
};

struct CurvePoint {
  Complex x;
  Complex y;
};

/// E1: Y^2 = X^3 + a X^2 + b X + c and E2: Y^2 = c X^3 + b X^2 + a X + 1, both
/// with origin [0:1:0]. phi1 = (x^2, y), phi2 = (x^-2, y x^-3) = [x : y : x^3].
class QuotientPair {
 public:
  QuotientPair(const BiellipticCurve& d, const ToleranceProfile& tol = {});

  const BiellipticCurve& curve() const { return d_; }
  const CubicGroup& e1() const { return e1_; }
  const CubicGroup& e2() const { return e2_; }
  ProjectivePoint phi1(const CurvePoint& p) const;
  ProjectivePoint phi2(const CurvePoint& p) const;
  /// (0, sqrt c) and (0, -sqrt c) on E1.
  std::array<ProjectivePoint, 2> branch_points() const;
  /// Affine point of E1 over X, with the root of Y^2 nearest `hint`.
  ProjectivePoint e1_point(Complex x, Complex hint = 1.0) const;
  double max_check_residual() const { return check_residual_; }

 private:
  BiellipticCurve d_;
  CubicGroup e1_;
  CubicGroup e2_;
  double check_residual_ = 0.0;
};

/// Validates the involution identities on sample points; DegenerateSextic on
/// repeated branch points.
QuotientPair build_quotients(const BiellipticCurve& d, const ToleranceProfile& tol = {});

/// The two preimages (+-sqrt X, Y) of r, principal root first.
std::array<CurvePoint, 2> lift(const QuotientPair& q, const ProjectivePoint& r);

/// 2 phi2(p) in E2: the class of O_D(p - iota p) read on the isogenous quotient.
ProjectivePoint prym_period_of_lift(const QuotientPair& q, const CurvePoint& p);
ProjectivePoint prym_period(const QuotientPair& q, const ProjectivePoint& r);

struct IifInstance {
  BiellipticCurve curve;
  std::vector<ProjectivePoint> points;  // r_1..r_8 on E1
  std::uint64_t seed = 0;
};

/// c = 1, seeded a, b, seven random points and r_8 completing the constraint.
IifInstance random_instance(std::uint64_t seed, const ToleranceProfile& tol = {});

/// Group-law sum of r_1..r_8 on E1 is the origin.
bool constraint_check(const QuotientPair& q, const IifInstance& inst, double tol);
double constraint_residual(const QuotientPair& q, const IifInstance& inst);

struct PrymPeriod {
  std::vector<ProjectivePoint> points;  // on E2, in marked-point order
  std::vector<CurvePoint> lifts;
  std::vector<std::string> sign_provenance;
  int isogeny_ambiguity = 2;
};

PrymPeriod prym_periods(const QuotientPair& q, const IifInstance& inst);

struct IifDominance {
  numkit::RankCertificate certificate;         // 16 x 9, affine charts of the outputs
  numkit::RankCertificate moduli_certificate;  // 9 x 9, (j(E2), scale-free x of each output)
  PrymPeriod base;
  double max_constraint_residual = 0.0;
};

/// Parameters (a, b, X_1..X_7) around the instance (which must have c = 1);
/// r_8 is completed by the constraint, roots and lifts follow by continuation.
IifDominance dominance_certificate_iif(const IifInstance& inst, double step, double gap_tol,
                                       const ToleranceProfile& tol = {}, Exec exec = Exec::parallel);

/// r9 - r10 = 2 (0, sqrt c) is n-torsion on E1.
bool branch_torsion_check(const BiellipticCurve& d, long long n, double tol, const ToleranceProfile& profile = {});

/// Curve whose branch point (0, sqrt c) on E1 has exact order 8, from the
/// order-8 Tate normal form with parameter d.
BiellipticCurve order_eight_curve(double d = 3.0);

/// j(E) up to the factor 1728 * 4: A^3 / (4A^3 + 27B^2) of a short model.
Complex e2_j_invariant(const BiellipticCurve& d);
Complex e1_j_invariant(const BiellipticCurve& d);

}  // namespace period_lab::iif
