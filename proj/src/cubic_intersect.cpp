#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "period_lab/cubiclab.hpp"
#include "period_lab/errors.hpp"

namespace period_lab::cubic {

namespace {

constexpr int kSamples = 16;
constexpr int kMaxAttempts = 32;
constexpr double kMaxAffineRoot = 10.0;
constexpr std::uint64_t kCoordinateSeed = 0x5eed'c0de'0000'0001ULL;

// Coefficients (ascending in the eliminated variable) of F restricted to
// {kept variable = s, z = 1}.
std::array<Complex, 4> restrict_form(const TernaryForm& f, int kept, Complex s) {
  std::array<Complex, 4> out{};
  for (int idx = 0; idx < TernaryForm::size(3); ++idx) {
    const auto e = TernaryForm::exponents(3, idx);
    const int kept_power = e[static_cast<std::size_t>(kept)];
    const int elim_power = e[static_cast<std::size_t>(1 - kept)];
    out[static_cast<std::size_t>(elim_power)] +=
        f.coefficients()[static_cast<std::size_t>(idx)] * std::pow(s, kept_power);
  }
  return out;
}

struct SylvesterValue {
  Complex det;
  double hadamard;
};

SylvesterValue sylvester3(const std::array<Complex, 4>& a, const std::array<Complex, 4>& b) {
  Eigen::Matrix<Complex, 6, 6> s = Eigen::Matrix<Complex, 6, 6>::Zero();
  for (int row = 0; row < 3; ++row) {
    for (int k = 0; k <= 3; ++k) {
      s(row, row + k) = a[static_cast<std::size_t>(3 - k)];
      s(3 + row, row + k) = b[static_cast<std::size_t>(3 - k)];
    }
  }
  double bound = 1.0;
  for (int r = 0; r < 6; ++r) bound *= s.row(r).norm();
  return {s.fullPivLu().determinant(), bound};
}

double normalized_value(const std::array<Complex, 4>& c, Complex t) {
  Complex v = 0.0;
  double scale = 0.0;
  double tp = 1.0;
  Complex tc = 1.0;
  for (const auto& ci : c) {
    v += ci * tc;
    scale += std::abs(ci) * tp;
    tc *= t;
    tp *= std::abs(t);
  }
  return scale > 0.0 ? std::abs(v) / scale : 0.0;
}

// Newton on (F, G) in the affine chart z = 1 with (x, y) free.
Vec3 polish_simple(const TernaryForm& f, const TernaryForm& g, Vec3 p) {
  const std::array<TernaryForm, 2> fx{f.partial(0), f.partial(1)};
  const std::array<TernaryForm, 2> gx{g.partial(0), g.partial(1)};
  auto size_of = [&](const Vec3& v) { return std::abs(f(v)) + std::abs(g(v)); };
  for (int it = 0; it < 4; ++it) {
    Eigen::Matrix2cd j;
    j << fx[0](p), fx[1](p), gx[0](p), gx[1](p);
    const Eigen::Vector2cd r(f(p), g(p));
    const auto lu = j.fullPivLu();
    if (!lu.isInvertible()) break;
    const Eigen::Vector2cd d = lu.solve(r);
    const Vec3 next{p[0] - d(0), p[1] - d(1), 1.0};
    if (size_of(next) >= size_of(p)) break;
    p = next;
  }
  return p;
}

enum class Outcome { ok, retry };

struct Elimination {
  Outcome outcome = Outcome::retry;
  std::vector<numkit::PointCluster> points;  // in transformed coordinates
};

Elimination eliminate(const TernaryForm& f, const TernaryForm& g, int kept,
                      const ToleranceProfile& tol) {
  Elimination out;
  const int elim = 1 - kept;
  auto lead = [&](const TernaryForm& h) {
    std::array<int, 3> e{0, 0, 0};
    e[static_cast<std::size_t>(elim)] = 3;
    return std::abs(h.coefficient(e[0], e[1], e[2]));
  };
  if (lead(f) < 1e-3 * f.coefficient_norm() || lead(g) < 1e-3 * g.coefficient_norm()) return out;

  std::array<Complex, kSamples> values;
  double largest_normalized = 0.0;
  for (int j = 0; j < kSamples; ++j) {
    const Complex s = std::polar(1.0, 2.0 * std::numbers::pi * j / kSamples);
    const auto v = sylvester3(restrict_form(f, kept, s), restrict_form(g, kept, s));
    values[static_cast<std::size_t>(j)] = v.det;
    largest_normalized = std::max(largest_normalized, std::abs(v.det) / v.hadamard);
  }
  if (largest_normalized < 1e-12) {
    fail(ErrorCode::NonFinitelyMany, "resultant vanishes identically: common component");
  }

  std::vector<Complex> coeffs(kSamples);
  for (int m = 0; m < kSamples; ++m) {
    Complex acc = 0.0;
    for (int j = 0; j < kSamples; ++j) {
      acc += values[static_cast<std::size_t>(j)] * std::polar(1.0, -2.0 * std::numbers::pi * j * m / kSamples);
    }
    coeffs[static_cast<std::size_t>(m)] = acc / static_cast<double>(kSamples);
  }
  double scale = 0.0;
  for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
  for (int m = 10; m < kSamples; ++m) {
    if (std::abs(coeffs[static_cast<std::size_t>(m)]) > 1e-8 * scale) return out;
  }
  coeffs.resize(10);
  const numkit::UniPoly resultant(coeffs, tol.zero_tol);
  if (resultant.degree() != 9) return out;  // a point on the line at infinity

  const auto clusters = numkit::roots(resultant, tol.cluster_tol, tol.max_iterations);
  for (const auto& cl : clusters) {
    if (std::abs(cl.center) > kMaxAffineRoot) return out;
    const auto fr = restrict_form(f, kept, cl.center);
    const auto gr = restrict_form(g, kept, cl.center);
    std::vector<numkit::RootCluster> froots, groots;
    try {
      froots = numkit::roots(numkit::UniPoly({fr.begin(), fr.end()}, tol.zero_tol), tol.cluster_tol,
                             tol.max_iterations);
      groots = numkit::roots(numkit::UniPoly({gr.begin(), gr.end()}, tol.zero_tol), tol.cluster_tol,
                             tol.max_iterations);
    } catch (const LabError&) {
      return out;
    }
    std::optional<Complex> common;
    int matches = 0;
    for (const auto& a : froots) {
      for (const auto& b : groots) {
        const double reach = 1e-5 * std::max(1.0, std::abs(a.center));
        if (std::abs(a.center - b.center) <= reach) {
          ++matches;
          common = 0.5 * (a.center + b.center);
        }
      }
    }
    if (matches != 1) {
      // Either two base points share this projection or the fibre is not
      // resolved well enough; both are cured by another coordinate change.
      return out;
    }
    if (normalized_value(fr, *common) > 1e-6 || normalized_value(gr, *common) > 1e-6) return out;
    Vec3 p{};
    p[static_cast<std::size_t>(kept)] = cl.center;
    p[static_cast<std::size_t>(elim)] = *common;
    p[2] = 1.0;
    if (cl.multiplicity == 1) p = polish_simple(f, g, p);
    out.points.push_back({ProjectivePoint(p), cl.multiplicity});
  }
  out.outcome = Outcome::ok;
  return out;
}

bool same_multiset(const std::vector<numkit::PointCluster>& a,
                   const std::vector<numkit::PointCluster>& b, double tol) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& pa : a) {
    bool found = false;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!used[j] && b[j].multiplicity == pa.multiplicity &&
          chordal_distance(pa.point, b[j].point) <= tol) {
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

std::vector<numkit::PointCluster> intersect(const TernaryCubic& f, const TernaryCubic& g,
                                            const ToleranceProfile& tol) {
  std::mt19937_64 rng(kCoordinateSeed);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const Eigen::Matrix3cd u = random_unitary(rng);
    const TernaryForm fu = f.form().compose(u);
    const TernaryForm gu = g.form().compose(u);
    const auto by_x = eliminate(fu, gu, 0, tol);
    if (by_x.outcome == Outcome::retry) continue;
    const auto by_y = eliminate(fu, gu, 1, tol);
    if (by_y.outcome == Outcome::retry) continue;
    if (!same_multiset(by_x.points, by_y.points, std::max(1e3 * tol.point_tol, 1e-4))) {
      fail(ErrorCode::InconsistentElimination, "the two elimination orders disagree");
    }
    std::vector<numkit::PointCluster> out;
    for (const auto& pc : by_x.points) {
      const Eigen::Vector3cd v(pc.point[0], pc.point[1], pc.point[2]);
      const Eigen::Vector3cd w = u * v;
      out.push_back({ProjectivePoint(w(0), w(1), w(2)), pc.multiplicity});
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return lex_less(a.point, b.point); });
    return out;
  }
  fail(ErrorCode::NonConvergence, "no admissible coordinate system found for the intersection");
}

}  // namespace period_lab::cubic
