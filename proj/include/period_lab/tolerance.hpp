#pragma once

namespace period_lab {

/// Numeric thresholds for one experiment. Passed by value into every
/// operation that needs one; nothing reads tolerances from global state.
struct ToleranceProfile {
  // Relative size below which a polynomial coefficient is treated as zero.
  double zero_tol = 1e-10;
  // |F(p)| for unit-norm F and p.
  double on_curve_tol = 1e-8;
  // Relative distance at which root approximants are merged.
  double cluster_tol = 1e-3;
  // Chordal distance at which projective points are identified.
  double point_tol = 1e-6;
  // Normalized discriminant below which a cubic counts as singular.
  double smooth_tol = 1e-9;
  double gap_tol = 1e-6;
  double step = 1e-5;
  int max_iterations = 2000;

  friend bool operator==(const ToleranceProfile&, const ToleranceProfile&) = default;

  bool valid() const {
    return zero_tol > 0 && on_curve_tol > 0 && cluster_tol > 0 && point_tol > 0 &&
           smooth_tol > 0 && gap_tol > 0 && step > 0 && max_iterations > 0;
  }
};

}  // namespace period_lab
