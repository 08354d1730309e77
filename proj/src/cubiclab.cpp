#include "period_lab/cubiclab.hpp"

#include <algorithm>
#include <cmath>

#include "period_lab/errors.hpp"

namespace period_lab::cubic {

// ---------------------------------------------------------------- forms

TernaryForm::TernaryForm(int degree)
    : degree_(degree), coeffs_(static_cast<std::size_t>(size(degree)), Complex(0.0)) {}

TernaryForm::TernaryForm(int degree, std::vector<Complex> coefficients)
    : degree_(degree), coeffs_(std::move(coefficients)) {
  if (static_cast<int>(coeffs_.size()) != size(degree)) {
    fail(ErrorCode::InvalidConfig, "coefficient count does not match degree");
  }
}

TernaryForm TernaryForm::linear(Complex a, Complex b, Complex c) {
  return TernaryForm(1, {a, b, c});
}

int TernaryForm::index(int /*i*/, int j, int k) {
  const int r = j + k;
  return r * (r + 1) / 2 + k;
}

std::array<int, 3> TernaryForm::exponents(int degree, int idx) {
  int r = 0;
  while ((r + 1) * (r + 2) / 2 <= idx) ++r;
  const int k = idx - r * (r + 1) / 2;
  return {degree - r, r - k, k};
}

double TernaryForm::coefficient_norm() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::norm(c);
  return std::sqrt(s);
}

Complex TernaryForm::operator()(const Vec3& v) const {
  std::vector<std::array<Complex, 3>> powers(static_cast<std::size_t>(degree_ + 1));
  powers[0] = {1.0, 1.0, 1.0};
  for (int e = 1; e <= degree_; ++e) {
    for (int a = 0; a < 3; ++a) {
      powers[static_cast<std::size_t>(e)][static_cast<std::size_t>(a)] =
          powers[static_cast<std::size_t>(e - 1)][static_cast<std::size_t>(a)] * v[static_cast<std::size_t>(a)];
    }
  }
  Complex acc = 0.0;
  for (int idx = 0; idx < size(degree_); ++idx) {
    const auto [i, j, k] = exponents(degree_, idx);
    acc += coeffs_[static_cast<std::size_t>(idx)] * powers[static_cast<std::size_t>(i)][0] *
           powers[static_cast<std::size_t>(j)][1] * powers[static_cast<std::size_t>(k)][2];
  }
  return acc;
}

TernaryForm TernaryForm::partial(int variable) const {
  if (degree_ == 0) return TernaryForm(0);
  TernaryForm out(degree_ - 1);
  for (int idx = 0; idx < size(degree_); ++idx) {
    auto e = exponents(degree_, idx);
    const int power = e[static_cast<std::size_t>(variable)];
    if (power == 0) continue;
    e[static_cast<std::size_t>(variable)] -= 1;
    out.coefficient(e[0], e[1], e[2]) += static_cast<double>(power) * coeffs_[static_cast<std::size_t>(idx)];
  }
  return out;
}

TernaryForm operator*(const TernaryForm& a, const TernaryForm& b) {
  TernaryForm out(a.degree() + b.degree());
  for (int ia = 0; ia < TernaryForm::size(a.degree()); ++ia) {
    const Complex ca = a.coefficients()[static_cast<std::size_t>(ia)];
    if (ca == Complex(0.0)) continue;
    const auto ea = TernaryForm::exponents(a.degree(), ia);
    for (int ib = 0; ib < TernaryForm::size(b.degree()); ++ib) {
      const Complex cb = b.coefficients()[static_cast<std::size_t>(ib)];
      if (cb == Complex(0.0)) continue;
      const auto eb = TernaryForm::exponents(b.degree(), ib);
      out.coefficient(ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]) += ca * cb;
    }
  }
  return out;
}

TernaryForm& TernaryForm::operator+=(const TernaryForm& other) {
  if (other.degree_ != degree_) fail(ErrorCode::InvalidConfig, "adding forms of different degree");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

TernaryForm& TernaryForm::operator*=(Complex s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

TernaryForm TernaryForm::compose(const Eigen::Matrix3cd& m) const {
  std::array<std::vector<TernaryForm>, 3> powers;
  for (int a = 0; a < 3; ++a) {
    const auto line = TernaryForm::linear(m(a, 0), m(a, 1), m(a, 2));
    auto& pw = powers[static_cast<std::size_t>(a)];
    pw.push_back(TernaryForm(0, {Complex(1.0)}));
    for (int e = 1; e <= degree_; ++e) pw.push_back(pw.back() * line);
  }
  TernaryForm out(degree_);
  for (int idx = 0; idx < size(degree_); ++idx) {
    const Complex c = coeffs_[static_cast<std::size_t>(idx)];
    if (c == Complex(0.0)) continue;
    const auto [i, j, k] = exponents(degree_, idx);
    out += powers[0][static_cast<std::size_t>(i)] * powers[1][static_cast<std::size_t>(j)] *
           powers[2][static_cast<std::size_t>(k)] * c;
  }
  return out;
}

// ---------------------------------------------------------------- cubics

namespace {

TernaryForm normalized(TernaryForm f) {
  const double n = f.coefficient_norm();
  if (!(n > 0.0) || !std::isfinite(n)) fail(ErrorCode::ZeroParameters, "cubic is identically zero");
  f *= Complex(1.0 / n);
  return f;
}

TernaryForm hessian_of(const TernaryForm& f) {
  std::array<std::array<TernaryForm, 3>, 3> second{
      {{TernaryForm(1), TernaryForm(1), TernaryForm(1)},
       {TernaryForm(1), TernaryForm(1), TernaryForm(1)},
       {TernaryForm(1), TernaryForm(1), TernaryForm(1)}}};
  for (int a = 0; a < 3; ++a) {
    const auto fa = f.partial(a);
    for (int b = 0; b < 3; ++b) second[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = fa.partial(b);
  }
  auto s = [&](int a, int b) -> const TernaryForm& {
    return second[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  };
  auto minor = [&](int a1, int b1, int a2, int b2) {
    return s(a1, b1) * s(a2, b2) + s(a1, b2) * s(a2, b1) * Complex(-1.0);
  };
  return s(0, 0) * minor(1, 1, 2, 2) + s(0, 1) * minor(1, 0, 2, 2) * Complex(-1.0) +
         s(0, 2) * minor(1, 0, 2, 1);
}

}  // namespace

TernaryCubic::TernaryCubic(const CubicCoefficients& coefficients)
    : form_(normalized(TernaryForm(3, std::vector<Complex>(coefficients.begin(), coefficients.end())))) {
  derive();
}

TernaryCubic::TernaryCubic(const TernaryForm& form) : form_(normalized(form)) {
  if (form.degree() != 3) fail(ErrorCode::InvalidConfig, "TernaryCubic needs a degree-3 form");
  derive();
}

void TernaryCubic::derive() {
  for (int a = 0; a < 3; ++a) gradient_[static_cast<std::size_t>(a)] = form_.partial(a);
  hessian_ = hessian_of(form_);
}

CubicCoefficients TernaryCubic::coefficients() const {
  CubicCoefficients c;
  std::copy(form_.coefficients().begin(), form_.coefficients().end(), c.begin());
  return c;
}

Vec3 TernaryCubic::gradient(const Vec3& v) const {
  return {gradient_[0](v), gradient_[1](v), gradient_[2](v)};
}

Eigen::Matrix3cd TernaryCubic::hessian_matrix(const Vec3& v) const {
  Eigen::Matrix3cd h;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) h(a, b) = gradient_[static_cast<std::size_t>(a)].partial(b)(v);
  }
  return h;
}

// ---------------------------------------------------------------- projectivities

Projectivity::Projectivity(const Eigen::Matrix3cd& m) : m_(m) {
  const Complex det = m.determinant();
  const double scale = m.norm();
  if (!(std::abs(det) > 1e-14 * scale * scale * scale)) {
    fail(ErrorCode::SingularMatrix, "projectivity matrix is singular");
  }
  m_ /= std::pow(det, 1.0 / 3.0);
}

Projectivity Projectivity::identity() { return Projectivity(Eigen::Matrix3cd::Identity()); }

Projectivity Projectivity::diagonal(Complex a, Complex b, Complex c) {
  Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return Projectivity(m);
}

Projectivity Projectivity::inverse() const { return Projectivity(m_.inverse()); }

ProjectivePoint Projectivity::operator()(const ProjectivePoint& p) const {
  const Eigen::Vector3cd v(p[0], p[1], p[2]);
  const Eigen::Vector3cd w = m_ * v;
  return ProjectivePoint(w(0), w(1), w(2));
}

TernaryCubic act(const Projectivity& gamma, const TernaryCubic& f) {
  return TernaryCubic(f.form().compose(gamma.inverse().matrix()));
}

// ---------------------------------------------------------------- smoothness

namespace {

Eigen::Matrix<Complex, 6, 6> discriminant_matrix(const TernaryForm& cubic) {
  const TernaryForm hess = hessian_of(cubic);
  Eigen::Matrix<Complex, 6, 6> m;
  for (int a = 0; a < 3; ++a) {
    const auto fa = cubic.partial(a);
    const auto ha = hess.partial(a);
    for (int c = 0; c < 6; ++c) {
      m(a, c) = fa.coefficients()[static_cast<std::size_t>(c)];
      m(3 + a, c) = ha.coefficients()[static_cast<std::size_t>(c)];
    }
  }
  return m;
}

}  // namespace

Complex discriminant(const TernaryForm& cubic) {
  if (cubic.degree() != 3) fail(ErrorCode::InvalidConfig, "discriminant needs a cubic");
  return discriminant_matrix(cubic).fullPivLu().determinant();
}

double smoothness_measure(const TernaryCubic& f) {
  const auto m = discriminant_matrix(f.form());
  double bound = 1.0;
  for (int r = 0; r < 6; ++r) bound *= m.row(r).norm();
  if (!(bound > 0.0)) return 0.0;
  return std::abs(m.fullPivLu().determinant()) / bound;
}

bool is_smooth(const TernaryCubic& f, double tol) { return smoothness_measure(f) > tol; }

Vec3 tangent_line(const TernaryCubic& f, const ProjectivePoint& p, double tol) {
  const Vec3 g = f.gradient(p.coords());
  if (norm(g) < tol) fail(ErrorCode::SingularPoint, "gradient vanishes at the point");
  return ProjectivePoint(g).coords();
}

// ---------------------------------------------------------------- flexes

std::vector<ProjectivePoint> flexes(const TernaryCubic& f, const ToleranceProfile& tol) {
  const auto& h = f.hessian_form();
  if (h.coefficient_norm() < 1e-12) fail(ErrorCode::DegenerateHessian, "Hessian vanishes identically");
  const auto clusters = intersect(f, TernaryCubic(h), tol);
  std::vector<ProjectivePoint> out;
  for (const auto& c : clusters) {
    for (int m = 0; m < c.multiplicity; ++m) out.push_back(c.point);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return lex_less(a, b); });
  return out;
}

// ---------------------------------------------------------------- random

TernaryCubic fermat_cubic() {
  CubicCoefficients c{};
  c[0] = 1.0;
  c[6] = 1.0;
  c[9] = 1.0;
  return TernaryCubic(c);
}

namespace {

Complex gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

}  // namespace

TernaryCubic random_cubic(std::mt19937_64& rng) {
  CubicCoefficients c;
  for (auto& v : c) v = gaussian(rng);
  return TernaryCubic(c);
}

TernaryCubic random_smooth_cubic(std::mt19937_64& rng, double smooth_tol) {
  for (;;) {
    auto f = random_cubic(rng);
    if (is_smooth(f, smooth_tol)) return f;
  }
}

Projectivity random_projectivity(std::mt19937_64& rng) {
  for (;;) {
    Eigen::Matrix3cd m;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) m(i, j) = gaussian(rng);
    }
    const double cond = Eigen::JacobiSVD<Eigen::Matrix3cd>(m).singularValues()(2) / m.norm();
    if (cond > 1e-2) return Projectivity(m);
  }
}

Eigen::Matrix3cd random_unitary(std::mt19937_64& rng) {
  Eigen::Matrix3cd m;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m(i, j) = gaussian(rng);
  }
  Eigen::HouseholderQR<Eigen::Matrix3cd> qr(m);
  return qr.householderQ() * Eigen::Matrix3cd::Identity();
}

ProjectivePoint random_point_on(const TernaryCubic& f, std::mt19937_64& rng) {
  for (;;) {
    Vec3 a{gaussian(rng), gaussian(rng), gaussian(rng)};
    Vec3 b{gaussian(rng), gaussian(rng), gaussian(rng)};
    // F(a + t b) as a cubic in t.
    const Vec3 ga = f.gradient(a);
    const Vec3 gb = f.gradient(b);
    std::vector<Complex> c{f(a), dot(ga, b), dot(gb, a), f(b)};
    try {
      const numkit::UniPoly p(c, 1e-12);
      if (p.degree() < 1) continue;
      const auto roots = numkit::aberth_approximants(p);
      const Complex t = roots.front();
      if (std::abs(t) > 1e3) continue;
      return ProjectivePoint(a[0] + t * b[0], a[1] + t * b[1], a[2] + t * b[2]);
    } catch (const LabError&) {
      continue;
    }
  }
}

}  // namespace period_lab::cubic
