#include <cmath>
#include <exception>
#include <string>

#include "period_lab/errors.hpp"
#include "period_lab/numkit.hpp"

namespace period_lab::numkit {

namespace {

std::vector<Complex> evaluate(const VectorMap& f, std::span<const Complex> point) {
  try {
    return f(point);
  } catch (const LabError&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorCode::EvaluationFailure, e.what());
  }
}

Eigen::VectorXcd column(const VectorMap& f, std::span<const Complex> base, int j, double step,
                        Eigen::Index rows) {
  std::vector<Complex> plus(base.begin(), base.end());
  std::vector<Complex> minus(base.begin(), base.end());
  plus[static_cast<std::size_t>(j)] += step;
  minus[static_cast<std::size_t>(j)] -= step;
  const auto fp = evaluate(f, plus);
  const auto fm = evaluate(f, minus);
  if (static_cast<Eigen::Index>(fp.size()) != rows || static_cast<Eigen::Index>(fm.size()) != rows) {
    fail(ErrorCode::EvaluationFailure, "callback changed its output dimension");
  }
  Eigen::VectorXcd col(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto is = static_cast<std::size_t>(i);
    col(i) = (fp[is] - fm[is]) / (2.0 * step);
    if (!std::isfinite(col(i).real()) || !std::isfinite(col(i).imag())) {
      fail(ErrorCode::EvaluationFailure, "non-finite difference quotient");
    }
  }
  return col;
}

}  // namespace

Eigen::MatrixXcd finite_difference_jacobian(const VectorMap& f, std::span<const Complex> base,
                                            double step, Exec exec) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    fail(ErrorCode::DegenerateStep, "step must be positive and finite");
  }
  for (const auto& z : base) {
    if (z + step == z || z - step == z) {
      fail(ErrorCode::DegenerateStep, "step underflows against the base point");
    }
  }
  const auto f0 = evaluate(f, base);
  const auto rows = static_cast<Eigen::Index>(f0.size());
  const int cols = static_cast<int>(base.size());
  Eigen::MatrixXcd jac(rows, cols);

  if (exec == Exec::serial) {
    for (int j = 0; j < cols; ++j) jac.col(j) = column(f, base, j, step, rows);
    return jac;
  }

  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(cols));
#pragma omp parallel for schedule(dynamic, 1)
  for (int j = 0; j < cols; ++j) {
    try {
      jac.col(j) = column(f, base, j, step, rows);
    } catch (...) {
      errors[static_cast<std::size_t>(j)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return jac;
}

RankCertificate certify_rank(const Eigen::MatrixXcd& jacobian, double gap_tol, double step,
                             std::uint64_t seed) {
  RankCertificate cert;
  cert.rows = static_cast<int>(jacobian.rows());
  cert.cols = static_cast<int>(jacobian.cols());
  cert.step = step;
  cert.seed = seed;
  if (jacobian.size() == 0) return cert;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(jacobian);
  const auto& sv = svd.singularValues();
  cert.singular_values.assign(sv.data(), sv.data() + sv.size());
  const double top = cert.singular_values.empty() ? 0.0 : cert.singular_values.front();
  if (!(top > 0.0)) return cert;
  for (double s : cert.singular_values) {
    if (s / top > gap_tol) {
      ++cert.rank;
      cert.gap_ratio = s / top;
    }
  }
  return cert;
}

RankCertificate jacobian_rank(const VectorMap& f, std::span<const Complex> base, double step,
                              double gap_tol, Exec exec, std::uint64_t seed) {
  return certify_rank(finite_difference_jacobian(f, base, step, exec), gap_tol, step, seed);
}

}  // namespace period_lab::numkit
