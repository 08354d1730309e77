#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "period_lab/exec.hpp"
#include "period_lab/projective_point.hpp"

namespace period_lab::numkit {

/// Univariate polynomial with complex coefficients in ascending degree.
class UniPoly {
 public:
  /// Trims leading coefficients with |c| <= zero_tol * max|c|. Throws
  /// ZeroPolynomial when every coefficient has |c| <= zero_tol (or the
  /// vector is empty).
  explicit UniPoly(std::vector<Complex> coefficients, double zero_tol = 0.0);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Complex>& coefficients() const { return coeffs_; }
  Complex leading() const { return coeffs_.back(); }

  Complex operator()(Complex z) const;
  UniPoly derivative() const;

  /// Running error bound for Horner evaluation at z.
  double evaluation_error_bound(Complex z) const;

  static UniPoly from_roots(std::span<const Complex> roots, Complex leading = 1.0);

 private:
  UniPoly() = default;
  std::vector<Complex> coeffs_;
};

struct RootCluster {
  Complex center;
  int multiplicity = 0;
  double radius = 0.0;
};

/// Raw Aberth-Ehrlich approximants, one per root counted with multiplicity.
std::vector<Complex> aberth_approximants(const UniPoly& p, int max_iterations = 2000);

/// All roots of p grouped into clusters. Approximants closer than
/// cluster_tol * max(1, |z|) are merged; a multiplicity-m cluster center is
/// polished as a simple root of the (m-1)-th derivative.
std::vector<RootCluster> roots(const UniPoly& p, double cluster_tol, int max_iterations = 2000);

/// Determinant of the Sylvester matrix.
Complex resultant(const UniPoly& p, const UniPoly& q);

struct RankCertificate {
  std::vector<double> singular_values;  // descending
  int rank = 0;
  double gap_ratio = 1.0;  // smallest accepted sigma / sigma_max; 1 when rank is 0
  double step = 0.0;
  std::uint64_t seed = 0;
  int rows = 0;
  int cols = 0;
};

using VectorMap = std::function<std::vector<Complex>(std::span<const Complex>)>;

/// n x m matrix of complex central differences (f(z + h e_j) - f(z - h e_j)) / 2h.
/// Columns are independent; the parallel flavour evaluates them concurrently.
Eigen::MatrixXcd finite_difference_jacobian(const VectorMap& f, std::span<const Complex> base,
                                            double step, Exec exec = Exec::parallel);

RankCertificate certify_rank(const Eigen::MatrixXcd& jacobian, double gap_tol, double step = 0.0,
                             std::uint64_t seed = 0);

RankCertificate jacobian_rank(const VectorMap& f, std::span<const Complex> base, double step,
                              double gap_tol, Exec exec = Exec::parallel, std::uint64_t seed = 0);

struct PointCluster {
  ProjectivePoint point;
  int multiplicity = 0;
};

/// Greedy partition by chordal distance <= tol. Representatives are the
/// phase-aligned mean of each cluster; output sorted by lex_less.
std::vector<PointCluster> cluster_points(std::span<const ProjectivePoint> points, double tol);

}  // namespace period_lab::numkit
