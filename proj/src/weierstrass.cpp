#include "period_lab/weierstrass.hpp"

#include <algorithm>
#include <optional>

#include "period_lab/errors.hpp"

namespace period_lab::weierstrass {

namespace {

int index_in(int bound, Monomial m) {
  if (m.pole_order() > bound) return -1;
  if (!m.has_y) return m.x_power;
  return bound / 2 + 1 + m.x_power;
}

// P(x) + Q(x) y with unreduced degrees.
struct Expanded {
  std::vector<Rational> p;
  std::vector<Rational> q;
};

void accumulate(std::vector<Rational>& v, std::size_t i, const Rational& c) {
  if (v.size() <= i) v.resize(i + 1, 0);
  v[i] += c;
}

Expanded expand(const SectionElement& s) {
  Expanded e;
  const auto b = basis(s.bound());
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto& c = s.coefficients()[i];
    if (c == 0) continue;
    accumulate(b[i].has_y ? e.q : e.p, static_cast<std::size_t>(b[i].x_power), c);
  }
  return e;
}

std::size_t rational_rank(std::vector<std::vector<Rational>> a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[r][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
    }
    ++r;
  }
  return r;
}

// Truncated products of eps-polynomials with section coefficients.
using Series = std::vector<SectionElement>;

Series series_mul(const Series& a, const Series& b, std::size_t order) {
  Series out;
  for (std::size_t k = 0; k <= order; ++k) {
    std::optional<SectionElement> acc;
    for (std::size_t i = 0; i <= k; ++i) {
      if (i >= a.size() || k - i >= b.size()) continue;
      auto term = multiply(a[i], b[k - i]);
      if (acc) {
        const int bound = std::max(acc->bound(), term.bound());
        acc = acc->lift(bound) + term.lift(bound);
      } else {
        acc = term;
      }
    }
    out.push_back(*acc);
  }
  return out;
}

Series series_combine(const Series& a, const Rational& ca, const Series& b, const Rational& cb, int bound) {
  Series out;
  for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) {
    out.push_back(a[k].lift(bound) * ca + b[k].lift(bound) * cb);
  }
  return out;
}

}  // namespace

WeierstrassCurve::WeierstrassCurve(Rational a_, Rational b_) : a(std::move(a_)), b(std::move(b_)) {
  if (discriminant() == 0) fail(ErrorCode::SingularCurve, "4A^3 + 27B^2 vanishes");
}

std::vector<Monomial> basis(int n) {
  if (n < 1) fail(ErrorCode::NonPositive, "pole bound must be positive");
  std::vector<Monomial> out;
  for (int i = 0; 2 * i <= n; ++i) out.push_back({i, false});
  for (int j = 0; 2 * j + 3 <= n; ++j) out.push_back({j, true});
  return out;
}

SectionElement::SectionElement(WeierstrassCurve curve, int bound)
    : curve_(std::move(curve)), bound_(bound), coeffs_(basis(bound).size(), 0) {}

SectionElement::SectionElement(WeierstrassCurve curve, int bound, std::vector<Rational> coefficients)
    : curve_(std::move(curve)), bound_(bound), coeffs_(std::move(coefficients)) {
  if (coeffs_.size() != basis(bound_).size()) fail(ErrorCode::InvalidConfig, "coefficient count does not match the basis");
}

SectionElement SectionElement::monomial(const WeierstrassCurve& curve, int bound, Monomial m, Rational c) {
  SectionElement s(curve, bound);
  const int i = index_in(bound, m);
  if (i < 0) fail(ErrorCode::InvalidConfig, "monomial exceeds the pole bound");
  s.coeffs_[static_cast<std::size_t>(i)] = std::move(c);
  return s;
}

Rational SectionElement::coefficient(Monomial m) const {
  const int i = index_in(bound_, m);
  return i < 0 ? Rational(0) : coeffs_[static_cast<std::size_t>(i)];
}

bool SectionElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

int SectionElement::leading_pole_order() const {
  const auto b = basis(bound_);
  int best = -1;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (coeffs_[i] != 0) best = std::max(best, b[i].pole_order());
  }
  return best;
}

SectionElement SectionElement::lift(int bound) const {
  if (bound < bound_) fail(ErrorCode::InvalidConfig, "cannot lower a pole bound");
  SectionElement out(curve_, bound);
  const auto b = basis(bound_);
  for (std::size_t i = 0; i < b.size(); ++i) out.coeffs_[static_cast<std::size_t>(index_in(bound, b[i]))] = coeffs_[i];
  return out;
}

SectionElement& SectionElement::operator+=(const SectionElement& o) {
  if (!(curve_ == o.curve_) || bound_ != o.bound_) fail(ErrorCode::InvalidConfig, "sections live in different spaces");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

SectionElement& SectionElement::operator-=(const SectionElement& o) {
  if (!(curve_ == o.curve_) || bound_ != o.bound_) fail(ErrorCode::InvalidConfig, "sections live in different spaces");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

SectionElement& SectionElement::operator*=(const Rational& s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

bool operator==(const SectionElement& a, const SectionElement& b) {
  if (!(a.curve_ == b.curve_)) return false;
  const int bound = std::max(a.bound_, b.bound_);
  return a.lift(bound).coeffs_ == b.lift(bound).coeffs_;
}

SectionElement multiply(const SectionElement& f, const SectionElement& g) {
  if (!(f.curve() == g.curve())) fail(ErrorCode::InvalidConfig, "sections on different curves");
  const auto& c = f.curve();
  const auto ef = expand(f);
  const auto eg = expand(g);
  Expanded out;
  for (std::size_t i = 0; i < ef.p.size(); ++i) {
    for (std::size_t k = 0; k < eg.p.size(); ++k) accumulate(out.p, i + k, ef.p[i] * eg.p[k]);
    for (std::size_t l = 0; l < eg.q.size(); ++l) accumulate(out.q, i + l, ef.p[i] * eg.q[l]);
  }
  for (std::size_t j = 0; j < ef.q.size(); ++j) {
    for (std::size_t k = 0; k < eg.p.size(); ++k) accumulate(out.q, j + k, ef.q[j] * eg.p[k]);
    // y^2 = x^3 + A x + B
    for (std::size_t l = 0; l < eg.q.size(); ++l) {
      const Rational v = ef.q[j] * eg.q[l];
      accumulate(out.p, j + l + 3, v);
      accumulate(out.p, j + l + 1, v * c.a);
      accumulate(out.p, j + l, v * c.b);
    }
  }
  const int bound = f.bound() + g.bound();
  SectionElement s(c, bound);
  std::vector<Rational> coeffs(s.coefficients());
  auto place = [&](const std::vector<Rational>& v, bool has_y) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0) continue;
      const int idx = index_in(bound, {static_cast<int>(i), has_y});
      if (idx < 0) fail(ErrorCode::InvalidConfig, "product exceeds its pole bound");
      coeffs[static_cast<std::size_t>(idx)] += v[i];
    }
  };
  place(out.p, false);
  place(out.q, true);
  return SectionElement(c, bound, std::move(coeffs));
}

DiscriminantExpansion discriminant_expansion(const SectionElement& r, const SectionElement& g4,
                                             const SectionElement& g6) {
  if (r.is_zero()) fail(ErrorCode::IdenticallyDegenerate, "r = 0 collapses the family");
  const auto& c = r.curve();
  const auto r2 = multiply(r, r);
  const auto r3 = multiply(r2, r);
  // a(eps) = -(3 r^2 + eps g4), b(eps) = 2 r^3 + eps g4 r + eps^2 g6
  const Series a{r2 * Rational(-3), g4 * Rational(-1)};
  const Series b{r3 * Rational(2), multiply(g4, r), g6};
  const auto a3 = series_mul(series_mul(a, a, 2), a, 2);
  const auto b2 = series_mul(b, b, 2);

  const auto expected =
      (multiply(r2, multiply(r, g6)) * Rational(108) - multiply(r2, multiply(g4, g4)) * Rational(9)).lift(12);
  for (const int sign : {1, -1}) {
    const auto delta = series_combine(a3, 4, b2, 27 * sign, 12);
    if (!delta[0].is_zero() || !delta[1].is_zero()) continue;
    DiscriminantExpansion d{sign == 1 ? "4a^3+27b^2" : "4a^3-27b^2", 0, {delta}, expected};
    if (delta[2] == expected) {
      d.sigma = 1;
    } else if (delta[2] == expected * Rational(-1)) {
      d.sigma = -1;
    } else {
      continue;
    }
    return d;
  }
  (void)c;
  fail(ErrorCode::ConventionMismatch, "no discriminant convention cancels the low orders");
}

ExactRank limits_rank(const SectionElement& r, const SectionElement& g4) {
  const auto& c = r.curve();
  ExactRank out;
  out.constant_r = r.coefficient({1, false}) == 0;
  std::vector<std::vector<Rational>> cols;
  for (const auto& m : basis(4)) {
    const auto img = (multiply(g4, SectionElement::monomial(c, 4, m)) * Rational(-2)).lift(8);
    cols.push_back(img.coefficients());
  }
  for (const auto& m : basis(6)) {
    const auto img = (multiply(r, SectionElement::monomial(c, 6, m)) * Rational(12)).lift(8);
    cols.push_back(img.coefficients());
  }
  out.cols = static_cast<int>(cols.size());
  out.rows = static_cast<int>(basis(8).size());
  out.rank = static_cast<int>(rational_rank(cols));
  return out;
}

Rational random_rational(std::mt19937_64& rng, int numerator, int denominator) {
  std::uniform_int_distribution<int> num(-numerator, numerator);
  std::uniform_int_distribution<int> den(1, denominator);
  const int n = num(rng);
  return Rational(n, den(rng));
}

WeierstrassCurve random_curve(std::mt19937_64& rng) {
  for (;;) {
    Rational a = random_rational(rng);
    Rational b = random_rational(rng);
    if (4 * a * a * a + 27 * b * b != 0) return WeierstrassCurve(a, b);
  }
}

SectionElement random_section(const WeierstrassCurve& c, int bound, std::mt19937_64& rng) {
  std::vector<Rational> coeffs;
  for (std::size_t i = 0; i < basis(bound).size(); ++i) coeffs.push_back(random_rational(rng));
  return SectionElement(c, bound, std::move(coeffs));
}

}  // namespace period_lab::weierstrass
