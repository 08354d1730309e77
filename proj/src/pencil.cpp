#include "period_lab/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "period_lab/errors.hpp"

namespace period_lab::pencil {

namespace {

constexpr double kProportionalTol = 1e-10;
constexpr int kSamples = 13;

Eigen::VectorXcd as_vector(const TernaryCubic& c) {
  const auto k = c.coefficients();
  return Eigen::Map<const Eigen::VectorXcd>(k.data(), static_cast<Eigen::Index>(k.size()));
}

}  // namespace

CubicPencil::CubicPencil(TernaryCubic f, TernaryCubic g) : f_(std::move(f)), g_(std::move(g)) {
  // Both generators have unit norm, so the Gram determinant is 1 - |<f,g>|^2.
  const double overlap = std::abs(as_vector(f_).dot(as_vector(g_)));
  if (1.0 - overlap * overlap < kProportionalTol) {
    fail(ErrorCode::NonFinitelyMany, "pencil generators are proportional");
  }
}

cubic::TernaryForm CubicPencil::form(Complex lambda, Complex mu) const {
  if (lambda == Complex(0.0) && mu == Complex(0.0)) fail(ErrorCode::ZeroParameters, "[0:0] is not a member");
  return f_.form() * lambda + g_.form() * mu;
}

int BaseLocus::total_multiplicity() const {
  int n = 0;
  for (const auto& p : points) n += p.multiplicity;
  return n;
}

BaseLocus base_points(const CubicPencil& p, const ToleranceProfile& tol) {
  BaseLocus out;
  out.points = cubic::intersect(p.f(), p.g(), tol);
  for (const auto& c : out.points) {
    out.max_residual = std::max({out.max_residual, p.f().residual(c.point), p.g().residual(c.point)});
  }
  return out;
}

bool same_locus(const BaseLocus& a, const BaseLocus& b, double tol) {
  if (a.points.size() != b.points.size()) return false;
  std::vector<bool> used(b.points.size(), false);
  for (const auto& pa : a.points) {
    bool found = false;
    for (std::size_t j = 0; j < b.points.size() && !found; ++j) {
      if (!used[j] && b.points[j].multiplicity == pa.multiplicity &&
          chordal_distance(pa.point, b.points[j].point) <= tol) {
        used[j] = true;
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

TernaryCubic x9111(Complex lambda, Complex mu) {
  if (lambda == Complex(0.0) && mu == Complex(0.0)) fail(ErrorCode::ZeroParameters, "[0:0] is not a member");
  cubic::CubicCoefficients c{};
  c[1] = lambda;  // x^2 y
  c[7] = lambda;  // y^2 z
  c[5] = lambda;  // x z^2
  c[4] = mu;      // xyz
  return TernaryCubic(c);
}

CubicPencil x9111_pencil() { return CubicPencil(x9111(1.0, 0.0), x9111(0.0, 1.0)); }

std::vector<SingularMember> singular_members(const CubicPencil& p, const ToleranceProfile& tol) {
  // disc(F + t G) has degree <= 12 in t; the missing degree is the
  // multiplicity of the member G at t = infinity.
  std::array<Complex, kSamples> values;
  for (int k = 0; k < kSamples; ++k) {
    const Complex t = std::polar(1.0, 2.0 * std::numbers::pi * k / kSamples);
    values[static_cast<std::size_t>(k)] = cubic::discriminant(p.form(1.0, t));
  }
  std::vector<Complex> coeffs(kSamples);
  double scale = 0.0;
  for (int m = 0; m < kSamples; ++m) {
    Complex acc = 0.0;
    for (int k = 0; k < kSamples; ++k) {
      acc += values[static_cast<std::size_t>(k)] * std::polar(1.0, -2.0 * std::numbers::pi * k * m / kSamples);
    }
    coeffs[static_cast<std::size_t>(m)] = acc / static_cast<double>(kSamples);
    scale = std::max(scale, std::abs(coeffs[static_cast<std::size_t>(m)]));
  }
  if (!(scale > 0.0)) fail(ErrorCode::NonFinitelyMany, "every member of the pencil is singular");
  for (auto& c : coeffs) {
    if (std::abs(c) < tol.zero_tol * scale) c = 0.0;
  }
  const numkit::UniPoly poly(coeffs);

  std::vector<SingularMember> out;
  if (poly.degree() > 0) {
    for (const auto& r : numkit::roots(poly, tol.cluster_tol, tol.max_iterations)) {
      out.push_back({1.0, r.center, r.multiplicity});
    }
  }
  if (poly.degree() < 12) out.push_back({0.0, 1.0, 12 - poly.degree()});
  return out;
}

std::vector<int> multiplicity_pattern(const std::vector<SingularMember>& members) {
  std::vector<int> m;
  for (const auto& s : members) m.push_back(s.multiplicity);
  std::sort(m.begin(), m.end(), std::greater<>());
  return m;
}

bool is_fixed_by(const Projectivity& gamma, const CubicPencil& p, double tol) {
  Eigen::Matrix<Complex, 10, 2> span;
  span.col(0) = as_vector(p.f());
  span.col(1) = as_vector(p.g());
  const auto qr = span.colPivHouseholderQr();
  const std::array<std::array<Complex, 2>, 3> samples{{{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}};
  for (const auto& s : samples) {
    const Eigen::VectorXcd moved = as_vector(cubic::act(gamma, p.member(s[0], s[1])));
    const Eigen::VectorXcd fit = span * qr.solve(moved);
    if ((moved - fit).norm() > tol) return false;
  }
  return true;
}

CubicPencil random_pencil(std::mt19937_64& rng) {
  auto f = cubic::random_cubic(rng);
  auto g = cubic::random_cubic(rng);
  return CubicPencil(std::move(f), std::move(g));
}

}  // namespace period_lab::pencil
