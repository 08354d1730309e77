#pragma once

#include <vector>

#include "period_lab/cubiclab.hpp"

namespace period_lab::pencil {

using cubic::Projectivity;
using cubic::TernaryCubic;

/// The line of cubics lambda F + mu G.
class CubicPencil {
 public:
  /// Proportional generators throw NonFinitelyMany: every member would be a
  /// common component.
  CubicPencil(TernaryCubic f, TernaryCubic g);

  const TernaryCubic& f() const { return f_; }
  const TernaryCubic& g() const { return g_; }
  cubic::TernaryForm form(Complex lambda, Complex mu) const;
  TernaryCubic member(Complex lambda, Complex mu) const { return TernaryCubic(form(lambda, mu)); }

 private:
  TernaryCubic f_;
  TernaryCubic g_;
};

struct BaseLocus {
  std::vector<numkit::PointCluster> points;  // lex-sorted
  double max_residual = 0.0;

  int total_multiplicity() const;
};

BaseLocus base_points(const CubicPencil& p, const ToleranceProfile& tol = {});

/// Multiset equality by greedy chordal matching.
bool same_locus(const BaseLocus& a, const BaseLocus& b, double tol);

/// lambda (x^2 y + y^2 z + z^2 x) + mu xyz
TernaryCubic x9111(Complex lambda, Complex mu);
/// Generators x9111(1, 0) and x9111(0, 1).
CubicPencil x9111_pencil();

/// Parameter [lambda : mu] of a member, scaled to (1, t) or (0, 1).
struct SingularMember {
  Complex lambda;
  Complex mu;
  int multiplicity = 0;
};

/// Roots of the degree-12 binary form disc(lambda F + mu G), recovered from
/// 13 samples. Multiplicities sum to 12.
std::vector<SingularMember> singular_members(const CubicPencil& p, const ToleranceProfile& tol = {});

/// Sorted multiplicity pattern, largest first.
std::vector<int> multiplicity_pattern(const std::vector<SingularMember>& members);

bool is_fixed_by(const Projectivity& gamma, const CubicPencil& p, double tol = 1e-9);

CubicPencil random_pencil(std::mt19937_64& rng);

}  // namespace period_lab::pencil
