#include "period_lab/period_iib.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "period_lab/errors.hpp"

namespace period_lab::iib {

namespace {

constexpr double kStabilizedTol = 1e-10;
constexpr double kChartFloor = 1e-3;

const Complex kZeta = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);

double alignment(const TernaryCubic& a, const TernaryCubic& b) {
  Complex inner = 0.0;
  const auto ca = a.coefficients();
  const auto cb = b.coefficients();
  for (std::size_t i = 0; i < ca.size(); ++i) inner += std::conj(ca[i]) * cb[i];
  return std::abs(inner);
}

std::array<Eigen::Matrix3cd, 8> sl3_basis() {
  std::array<Eigen::Matrix3cd, 8> b;
  for (auto& m : b) m.setZero();
  const std::array<std::pair<int, int>, 6> off{{{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}}};
  for (std::size_t k = 0; k < off.size(); ++k) b[k](off[k].first, off[k].second) = 1.0;
  b[6](0, 0) = 1.0;
  b[6](1, 1) = -1.0;
  b[7](1, 1) = 1.0;
  b[7](2, 2) = -1.0;
  return b;
}

// Index of the largest coordinate and the two others.
struct Chart {
  int pivot = 0;
  int a = 1;
  int b = 2;
};

Chart chart_for(const ProjectivePoint& p) {
  int pivot = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(p[i]) > std::abs(p[pivot])) pivot = i;
  }
  return {pivot, (pivot + 1) % 3, (pivot + 2) % 3};
}

std::array<Complex, 2> read_chart(const ProjectivePoint& p, const Chart& c) {
  if (std::abs(p[c.pivot]) < kChartFloor) fail(ErrorCode::ChartBreakdown, "output left its affine chart");
  return {p[c.a] / p[c.pivot], p[c.b] / p[c.pivot]};
}

}  // namespace

IibInstance random_instance(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto curve = cubic::random_smooth_cubic(rng);
  auto gamma = cubic::random_projectivity(rng);
  return {std::move(curve), std::move(gamma), seed};
}

PeriodTuple2b psi(const IibInstance& inst, const CubicGroup& group, const ToleranceProfile& tol) {
  const auto moved = cubic::act(inst.gamma, inst.curve);
  if (alignment(moved, inst.curve) > 1.0 - kStabilizedTol) {
    fail(ErrorCode::StabilizedCurve, "gamma maps the curve to itself");
  }
  const auto clusters = cubic::intersect(inst.curve, moved, tol);
  const auto inverse = inst.gamma.inverse();
  PeriodTuple2b out;
  for (const auto& c : clusters) {
    for (int m = 0; m < c.multiplicity; ++m) {
      out.base_points.push_back(c.point);
      out.points.push_back(group.sub(c.point, inverse(c.point)));
    }
  }
  out.sum_residual = chordal_distance(group.sum(out.points), group.origin());
  return out;
}

PeriodTuple2b psi(const IibInstance& inst, const ToleranceProfile& tol) {
  return psi(inst, CubicGroup(inst.curve, tol), tol);
}

DominanceResult dominance_certificate(const IibInstance& inst, double step, double gap_tol,
                                      const ToleranceProfile& tol, Exec exec) {
  const CubicGroup group(inst.curve, tol);
  DominanceResult result;
  result.base = psi(inst, group, tol);
  result.max_sum_residual = result.base.sum_residual;
  const auto& ref = result.base;

  // Base points must stay well separated for nearest-neighbour matching.
  double separation = 2.0;
  for (std::size_t i = 0; i < ref.base_points.size(); ++i) {
    for (std::size_t j = i + 1; j < ref.base_points.size(); ++j) {
      separation = std::min(separation, chordal_distance(ref.base_points[i], ref.base_points[j]));
    }
  }
  std::vector<Chart> charts;
  for (const auto& e : ref.points) charts.push_back(chart_for(e));
  const auto sum_chart = chart_for(group.sum(ref.points));

  const auto basis = sl3_basis();
  auto gamma_at = [&](std::span<const Complex> w) {
    Eigen::Matrix3cd m = Eigen::Matrix3cd::Identity();
    for (std::size_t k = 0; k < basis.size(); ++k) m += w[k] * basis[k];
    return Projectivity(inst.gamma.matrix() * m);
  };

  std::mutex mu;
  auto evaluate = [&](std::span<const Complex> w) {
    const IibInstance moved{inst.curve, gamma_at(w), inst.seed};
    auto tuple = psi(moved, group, tol);
    if (tuple.points.size() != ref.points.size()) {
      fail(ErrorCode::ContinuationFailure, "base locus changed cardinality");
    }
    // Nearest-neighbour continuation on the base points.
    std::vector<std::size_t> match(ref.points.size());
    std::vector<bool> taken(ref.points.size(), false);
    double displacement = 0.0;
    for (std::size_t i = 0; i < ref.points.size(); ++i) {
      std::size_t best = 0;
      double best_d = 3.0;
      for (std::size_t j = 0; j < tuple.points.size(); ++j) {
        const double d = chordal_distance(ref.base_points[i], tuple.base_points[j]);
        if (!taken[j] && d < best_d) {
          best_d = d;
          best = j;
        }
      }
      taken[best] = true;
      match[i] = best;
      displacement = std::max(displacement, best_d);
    }
    if (!(separation > 3.0 * displacement)) {
      fail(ErrorCode::ContinuationFailure, "outputs too close to match by continuation");
    }
    {
      std::lock_guard lock(mu);
      result.max_sum_residual = std::max(result.max_sum_residual, tuple.sum_residual);
    }
    return std::make_pair(std::move(tuple), std::move(match));
  };

  const numkit::VectorMap periods = [&](std::span<const Complex> w) {
    const auto [tuple, match] = evaluate(w);
    std::vector<Complex> out;
    out.reserve(2 * ref.points.size());
    for (std::size_t i = 0; i < ref.points.size(); ++i) {
      const auto v = read_chart(tuple.points[match[i]], charts[i]);
      out.push_back(v[0]);
      out.push_back(v[1]);
    }
    return out;
  };
  const numkit::VectorMap summed = [&](std::span<const Complex> w) {
    const auto [tuple, match] = evaluate(w);
    const auto v = read_chart(group.sum(tuple.points), sum_chart);
    return std::vector<Complex>{v[0], v[1]};
  };

  const std::vector<Complex> origin(basis.size(), 0.0);
  result.certificate = numkit::jacobian_rank(periods, origin, step, gap_tol, exec, inst.seed);
  result.sum_certificate = numkit::jacobian_rank(summed, origin, step, gap_tol, exec, inst.seed);
  return result;
}

bool SpecialReport::passed() const {
  return std::all_of(items.begin(), items.end(), [](const CheckItem& c) { return c.passed; });
}

IibInstance x9111_special_instance(Complex mu) {
  return {pencil::x9111(1.0, mu), Projectivity::diagonal(1.0, kZeta, kZeta * kZeta), 0};
}

SpecialReport x9111_special_report(Complex mu, const ToleranceProfile& tol) {
  SpecialReport r;
  r.lambda = 1.0;
  r.mu = mu;
  const auto inst = x9111_special_instance(mu);
  const CubicGroup group(inst.curve, tol);
  const std::array<ProjectivePoint, 3> vertex{ProjectivePoint(1.0, 0.0, 0.0), ProjectivePoint(0.0, 1.0, 0.0),
                                              ProjectivePoint(0.0, 0.0, 1.0)};

  // (a) base locus
  const pencil::CubicPencil pair(inst.curve, cubic::act(inst.gamma, inst.curve));
  r.base_locus = pencil::base_points(pair, tol);
  {
    CheckItem item{"base_locus", false, r.base_locus.max_residual, ""};
    bool ok = r.base_locus.points.size() == 3 && r.base_locus.max_residual < tol.on_curve_tol;
    for (const auto& v : vertex) {
      bool hit = false;
      for (const auto& p : r.base_locus.points) {
        hit = hit || (p.multiplicity == 3 && chordal_distance(p.point, v) < tol.point_tol);
      }
      ok = ok && hit;
    }
    item.passed = ok;
    item.detail = "three coordinate vertices, multiplicity 3 each";
    r.items.push_back(item);
  }

  // (b) each tangent line at a vertex contains exactly one other vertex
  std::array<int, 3> next{-1, -1, -1};
  {
    CheckItem item{"tangent_cycle", true, 0.0, ""};
    for (int i = 0; i < 3; ++i) {
      const Vec3 line = cubic::tangent_line(inst.curve, vertex[static_cast<std::size_t>(i)]);
      int hits = 0;
      for (int j = 0; j < 3; ++j) {
        if (j == i) continue;
        const double v = std::abs(dot(line, vertex[static_cast<std::size_t>(j)].coords()));
        if (v < 1e-12) {
          ++hits;
          next[static_cast<std::size_t>(i)] = j;
        }
      }
      item.passed = item.passed && hits == 1;
      item.detail += "p" + std::to_string(i + 1) + "->p" + std::to_string(next[static_cast<std::size_t>(i)] + 1) + " ";
    }
    item.detail.pop_back();
    r.items.push_back(item);
  }

  // (c) 2 p_i = -p_j along the cycle
  {
    CheckItem item{"doubling_relations", true, 0.0, "2 p_i = -p_j for the tangent cycle"};
    for (int i = 0; i < 3; ++i) {
      const int j = next[static_cast<std::size_t>(i)];
      if (j < 0) {
        item.passed = false;
        continue;
      }
      const auto& pi = vertex[static_cast<std::size_t>(i)];
      const auto& pj = vertex[static_cast<std::size_t>(j)];
      const double d = chordal_distance(group.scale(2, pi), group.neg(pj));
      item.residual = std::max(item.residual, d);
    }
    item.passed = item.passed && item.residual < 1e-7;
    r.items.push_back(item);
  }

  // (d) 9 (p_1 - p_2) = 0
  {
    const auto d = group.sub(vertex[0], vertex[1]);
    const double res = chordal_distance(group.scale(9, d), group.origin());
    r.items.push_back({"nine_torsion", res < 1e-7, res, "9 (p1 - p2) = origin"});
  }

  // (e) psi vanishes
  {
    r.period = psi(inst, group, tol);
    double worst = 0.0;
    for (const auto& e : r.period.points) worst = std::max(worst, chordal_distance(e, group.origin()));
    r.items.push_back({"psi_zero", r.period.points.size() == 9 && worst < 1e-6, worst, "all nine outputs at the origin"});
  }

  // singular member pattern of the pencil
  {
    r.singular_pattern = pencil::multiplicity_pattern(pencil::singular_members(pencil::x9111_pencil(), tol));
    r.items.push_back({"singular_pattern", r.singular_pattern == std::vector<int>{9, 1, 1, 1}, 0.0, "9,1,1,1"});
  }
  return r;
}

EquivarianceResult translation_equivariance_check(const IibInstance& inst, const ProjectivePoint& t,
                                                  double tol, const ToleranceProfile& profile) {
  const CubicGroup g0(inst.curve, profile);
  const CubicGroup gt(inst.curve, t, profile);
  const auto a = psi(inst, g0, profile);
  const auto b = psi(inst, gt, profile);
  EquivarianceResult r;
  r.sum_residual_origin = a.sum_residual;
  r.sum_residual_other = b.sum_residual;
  // Both runs share the base-point ordering, so entries correspond.
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    r.max_discrepancy = std::max(r.max_discrepancy, chordal_distance(g0.add(a.points[i], t), b.points[i]));
  }
  r.passed = a.points.size() == b.points.size() && r.max_discrepancy < tol && r.sum_residual_origin < tol &&
             r.sum_residual_other < tol;
  return r;
}

}  // namespace period_lab::iib
