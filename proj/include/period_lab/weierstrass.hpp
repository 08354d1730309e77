#pragma once

#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace period_lab::weierstrass {

using Rational = boost::multiprecision::cpp_rational;

/// y^2 = x^3 + A x + B
struct WeierstrassCurve {
  Rational a;
  Rational b;

  WeierstrassCurve(Rational a, Rational b);
  Rational discriminant() const { return 4 * a * a * a + 27 * b * b; }
  friend bool operator==(const WeierstrassCurve&, const WeierstrassCurve&) = default;
};

/// x^i or x^i y; pole order at infinity 2i or 2i + 3.
struct Monomial {
  int x_power = 0;
  bool has_y = false;
  int pole_order() const { return 2 * x_power + (has_y ? 3 : 0); }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// x^i ascending, then x^j y ascending; size n (Riemann-Roch).
std::vector<Monomial> basis(int n);

/// Element of H^0(C, O(n p)) in the monomial basis.
class SectionElement {
 public:
  SectionElement(WeierstrassCurve curve, int bound);
  SectionElement(WeierstrassCurve curve, int bound, std::vector<Rational> coefficients);

  static SectionElement monomial(const WeierstrassCurve& curve, int bound, Monomial m, Rational c = 1);
  static SectionElement constant(const WeierstrassCurve& curve, Rational c) { return monomial(curve, 1, {0, false}, c); }

  const WeierstrassCurve& curve() const { return curve_; }
  int bound() const { return bound_; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(Monomial m) const;
  bool is_zero() const;
  /// -infinity stand-in of -1 for the zero section.
  int leading_pole_order() const;

  /// Same function, viewed in H^0(O(n p)) for n >= bound.
  SectionElement lift(int bound) const;

  SectionElement& operator+=(const SectionElement& o);
  SectionElement& operator-=(const SectionElement& o);
  SectionElement& operator*=(const Rational& s);
  friend SectionElement operator+(SectionElement a, const SectionElement& b) { return a += b; }
  friend SectionElement operator-(SectionElement a, const SectionElement& b) { return a -= b; }
  friend SectionElement operator*(SectionElement a, const Rational& s) { return a *= s; }
  friend SectionElement operator*(const Rational& s, SectionElement a) { return a *= s; }
  /// Function equality, independent of the bound.
  friend bool operator==(const SectionElement& a, const SectionElement& b);

 private:
  WeierstrassCurve curve_;
  int bound_;
  std::vector<Rational> coeffs_;
};

/// Product reduced with y^2 = x^3 + A x + B; bound m + n.
SectionElement multiply(const SectionElement& f, const SectionElement& g);

struct EpsilonSeries {
  std::vector<SectionElement> terms;  // coefficient of eps^k at index k
};

struct DiscriminantExpansion {
  std::string convention;  // "4a^3+27b^2" or "4a^3-27b^2"
  int sigma = 1;           // eps^2 term = sigma * 9 r^2 (12 r g6 - g4^2)
  EpsilonSeries series;    // through eps^2, bound 12
  SectionElement expected; // 9 r^2 (12 r g6 - g4^2)
};

/// Discriminant of y^2 = x^3 - (3r^2 + eps g4) x + (2r^3 + eps g4 r + eps^2 g6)
/// through order eps^2.
DiscriminantExpansion discriminant_expansion(const SectionElement& r, const SectionElement& g4,
                                             const SectionElement& g6);

struct ExactRank {
  int rank = 0;
  int rows = 8;
  int cols = 10;
  bool constant_r = false;
};

/// Rank of (d4, d6) |-> 12 r d6 - 2 g4 d4 from H^0(4p) + H^0(6p) to H^0(8p).
ExactRank limits_rank(const SectionElement& r, const SectionElement& g4);

Rational random_rational(std::mt19937_64& rng, int numerator = 9, int denominator = 5);
WeierstrassCurve random_curve(std::mt19937_64& rng);
SectionElement random_section(const WeierstrassCurve& c, int bound, std::mt19937_64& rng);

}  // namespace period_lab::weierstrass
