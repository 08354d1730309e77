#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "period_lab/cubiclab.hpp"
#include "period_lab/exec.hpp"
#include "period_lab/pencil.hpp"

namespace period_lab::iib {

using cubic::CubicGroup;
using cubic::Projectivity;
using cubic::TernaryCubic;

struct IibInstance {
  TernaryCubic curve;
  Projectivity gamma;
  std::uint64_t seed = 0;
};

/// Random smooth D and random gamma drawn from the seed.
IibInstance random_instance(std::uint64_t seed);

struct PeriodTuple2b {
  std::vector<ProjectivePoint> base_points;  // p_i, repeated by multiplicity
  std::vector<ProjectivePoint> points;       // p_i - q_i in the group of D
  std::string ordering = "lexicographic";
  double sum_residual = 0.0;                 // chordal distance of the sum to the origin
};

/// The nine classes O_D(p_i - q_i) with q_i = gamma^{-1}(p_i), computed in
/// the given group of D.
PeriodTuple2b psi(const IibInstance& inst, const CubicGroup& group, const ToleranceProfile& tol = {});
PeriodTuple2b psi(const IibInstance& inst, const ToleranceProfile& tol = {});

struct DominanceResult {
  numkit::RankCertificate certificate;      // 18 x 8
  numkit::RankCertificate sum_certificate;  // 2 x 8, the group sum of the outputs
  double max_sum_residual = 0.0;            // over every evaluation
  PeriodTuple2b base;
};

/// Jacobian of psi in the chart w |-> gamma (I + sum_k w_k B_k) of PGL_3,
/// with B_k a basis of sl_3 and each output read in an affine chart of P^2.
DominanceResult dominance_certificate(const IibInstance& inst, double step, double gap_tol,
                                      const ToleranceProfile& tol = {}, Exec exec = Exec::parallel);

struct CheckItem {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  std::string detail;
};

struct SpecialReport {
  Complex lambda;
  Complex mu;
  std::vector<CheckItem> items;
  pencil::BaseLocus base_locus;
  std::vector<int> singular_pattern;
  PeriodTuple2b period;
  bool passed() const;
};

/// The X9111 member at [1 : mu], gamma = diag(1, zeta, zeta^2).
SpecialReport x9111_special_report(Complex mu = {0.37, 0.21}, const ToleranceProfile& tol = {});
IibInstance x9111_special_instance(Complex mu = {0.37, 0.21});

struct EquivarianceResult {
  bool passed = false;
  double max_discrepancy = 0.0;     // |tau(p -_O q) - (p -_t q)| over the nine outputs
  double sum_residual_origin = 0.0;
  double sum_residual_other = 0.0;
};

/// Recomputes psi with the flex t as origin and compares against the
/// translate of the default output by t.
EquivarianceResult translation_equivariance_check(const IibInstance& inst, const ProjectivePoint& t,
                                                  double tol = 1e-7, const ToleranceProfile& profile = {});

}  // namespace period_lab::iib
