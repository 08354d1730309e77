#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "period_lab/errors.hpp"
#include "period_lab/numkit.hpp"

using namespace period_lab;
using namespace period_lab::numkit;

namespace {

Complex gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  const double re = n(rng);
  return {re, n(rng)};
}

const RootCluster* near(const std::vector<RootCluster>& cl, Complex z, double tol) {
  for (const auto& c : cl) {
    if (std::abs(c.center - z) < tol) return &c;
  }
  return nullptr;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const LabError& e) {
    return e.code();
  }
  FAIL("expected a LabError");
  return ErrorCode::InvalidConfig;
}

}  // namespace

TEST_CASE("roots: quadratic, repeated and cyclotomic examples") {
  const auto quad = roots(UniPoly({1.0, 0.0, 1.0}), 1e-6);
  REQUIRE(quad.size() == 2);
  CHECK(near(quad, {0.0, 1.0}, 1e-12) != nullptr);
  CHECK(near(quad, {0.0, -1.0}, 1e-12) != nullptr);

  // (z - 1)^3 = z^3 - 3z^2 + 3z - 1
  const auto triple = roots(UniPoly({-1.0, 3.0, -3.0, 1.0}), 1e-4);
  REQUIRE(triple.size() == 1);
  CHECK(triple[0].multiplicity == 3);
  CHECK(std::abs(triple[0].center - 1.0) < 1e-10);

  const auto cyc = roots(UniPoly({-1.0, 0.0, 0.0, 1.0}), 1e-6);
  REQUIRE(cyc.size() == 3);
  for (int k = 0; k < 3; ++k) {
    const auto* c = near(cyc, std::polar(1.0, 2.0 * std::numbers::pi * k / 3.0), 1e-12);
    REQUIRE(c != nullptr);
    CHECK(c->multiplicity == 1);
  }
}

TEST_CASE("roots: zero polynomial and trimming") {
  CHECK(code_of([] { UniPoly({0.0, 0.0}); }) == ErrorCode::ZeroPolynomial);
  CHECK(code_of([] { UniPoly({1e-14, 1e-15}, 1e-12); }) == ErrorCode::ZeroPolynomial);
  const UniPoly trimmed({1.0, 2.0, 1e-16}, 1e-12);
  CHECK(trimmed.degree() == 1);
}

TEST_CASE("roots: multiplicities sum to the degree for known root multisets") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Complex> distinct;
    std::vector<int> mult;
    std::vector<Complex> all;
    const int k = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < k; ++i) {
      Complex z;
      bool separated = false;
      while (!separated) {
        z = gaussian(rng);
        separated = true;
        for (const auto& w : distinct) separated = separated && std::abs(z - w) > 0.3;
      }
      distinct.push_back(z);
      mult.push_back(1 + static_cast<int>(rng() % 3));
      for (int m = 0; m < mult.back(); ++m) all.push_back(z);
    }
    const auto p = UniPoly::from_roots(all, gaussian(rng));
    const auto cl = roots(p, 1e-3);
    int total = 0;
    for (const auto& c : cl) total += c.multiplicity;
    CHECK(total == p.degree());
    REQUIRE(cl.size() == distinct.size());
    for (std::size_t i = 0; i < distinct.size(); ++i) {
      const auto* c = near(cl, distinct[i], 1e-6);
      REQUIRE(c != nullptr);
      CHECK(c->multiplicity == mult[i]);
    }
  }
}

TEST_CASE("resultant: linear, shared root, and product-over-roots oracle") {
  const Complex a{0.3, -1.2};
  const Complex b{2.0, 0.5};
  CHECK(std::abs(resultant(UniPoly({-a, 1.0}), UniPoly({-b, 1.0})) - (a - b)) < 1e-14);
  CHECK(std::abs(resultant(UniPoly({-1.0, 0.0, 1.0}), UniPoly({-1.0, 1.0}))) < 1e-14);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Complex> pr{gaussian(rng), gaussian(rng), gaussian(rng)};
    const Complex lead = gaussian(rng);
    const auto p = UniPoly::from_roots(pr, lead);
    const UniPoly q({gaussian(rng), gaussian(rng), gaussian(rng), gaussian(rng)});
    // lead(p)^deg(q) * prod q(r_i), once with the known roots and once with
    // the roots recovered by the root finder.
    Complex known = std::pow(lead, 3);
    for (const auto& r : pr) known *= q(r);
    Complex found = std::pow(lead, 3);
    for (const auto& c : roots(p, 1e-6)) {
      for (int m = 0; m < c.multiplicity; ++m) found *= q(c.center);
    }
    const Complex res = resultant(p, q);
    CHECK(std::abs(res - known) < 1e-9 * std::max(1.0, std::abs(known)));
    CHECK(std::abs(res - found) < 1e-9 * std::max(1.0, std::abs(known)));
  }
}

TEST_CASE("resultant: antisymmetry under swapping arguments") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 25; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 5);
    const int n = 1 + static_cast<int>(rng() % 5);
    std::vector<Complex> a(static_cast<std::size_t>(m + 1)), b(static_cast<std::size_t>(n + 1));
    for (auto& c : a) c = gaussian(rng);
    for (auto& c : b) c = gaussian(rng);
    const UniPoly p(a), q(b);
    const Complex sign = (m * n) % 2 == 0 ? 1.0 : -1.0;
    const Complex lhs = resultant(p, q);
    const Complex rhs = sign * resultant(q, p);
    CHECK(std::abs(lhs - rhs) < 1e-9 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("jacobian_rank: identity, constant and squaring maps") {
  const std::vector<Complex> base{{0.2, 0.1}, {-1.0, 0.3}, {0.5, 0.5}};
  const VectorMap identity = [](std::span<const Complex> z) { return std::vector<Complex>(z.begin(), z.end()); };
  const auto id = jacobian_rank(identity, base, 1e-5, 1e-6);
  CHECK(id.rank == 3);
  CHECK(id.gap_ratio == doctest::Approx(1.0).epsilon(1e-9));

  const VectorMap constant = [](std::span<const Complex>) { return std::vector<Complex>{1.0, 2.0}; };
  const auto c = jacobian_rank(constant, base, 1e-5, 1e-6);
  CHECK(c.rank == 0);

  const VectorMap square = [](std::span<const Complex> z) { return std::vector<Complex>{z[0] * z[0]}; };
  const std::vector<Complex> one{1.0};
  const double h = 1e-3;
  const auto sq = jacobian_rank(square, one, h, 1e-6);
  CHECK(sq.rank == 1);
  // Central differences are exact for quadratics; allow O(h^2) anyway.
  CHECK(std::abs(sq.singular_values[0] - 2.0) < 10 * h * h);
}

TEST_CASE("jacobian_rank recovers the rank of random linear maps") {
  std::mt19937_64 rng(21);
  const int n = 6;
  const int m = 4;
  for (int r = 0; r <= m; ++r) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, r), b = Eigen::MatrixXcd::Zero(r, m);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < r; ++j) a(i, j) = gaussian(rng);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < m; ++j) b(i, j) = gaussian(rng);
    const Eigen::MatrixXcd mat = a * b;
    const VectorMap f = [&](std::span<const Complex> z) {
      Eigen::VectorXcd v(m);
      for (int j = 0; j < m; ++j) v(j) = z[static_cast<std::size_t>(j)];
      const Eigen::VectorXcd w = mat * v;
      return std::vector<Complex>(w.data(), w.data() + w.size());
    };
    std::vector<Complex> base(static_cast<std::size_t>(m));
    for (auto& z : base) z = gaussian(rng);
    CHECK(jacobian_rank(f, base, 1e-5, 1e-6).rank == r);
  }
}

TEST_CASE("jacobian kernels: serial reference and parallel agree exactly") {
  const VectorMap f = [](std::span<const Complex> z) {
    return std::vector<Complex>{z[0] * z[1], std::exp(z[2]), z[0] + z[1] * z[2], z[3] * z[3] * z[0]};
  };
  const std::vector<Complex> base{{0.1, 0.2}, {1.1, -0.3}, {0.4, 0.0}, {-0.7, 0.9}};
  const auto serial = finite_difference_jacobian(f, base, 1e-5, Exec::serial);
  const auto parallel = finite_difference_jacobian(f, base, 1e-5, Exec::parallel);
  CHECK((serial - parallel).norm() == 0.0);
}

TEST_CASE("jacobian_rank: error paths") {
  const VectorMap identity = [](std::span<const Complex> z) { return std::vector<Complex>(z.begin(), z.end()); };
  const std::vector<Complex> base{1.0, 2.0};
  CHECK(code_of([&] { jacobian_rank(identity, base, 0.0, 1e-6); }) == ErrorCode::DegenerateStep);
  CHECK(code_of([&] { jacobian_rank(identity, std::vector<Complex>{1e300}, 1e-5, 1e-6); }) ==
        ErrorCode::DegenerateStep);
  int calls = 0;
  const VectorMap flaky = [&](std::span<const Complex> z) -> std::vector<Complex> {
    if (++calls > 1) throw std::runtime_error("model blew up");
    return {z[0]};
  };
  CHECK(code_of([&] { jacobian_rank(flaky, base, 1e-5, 1e-6, Exec::serial); }) ==
        ErrorCode::EvaluationFailure);
}

TEST_CASE("cluster_points examples") {
  const ProjectivePoint p(1.0, {0.5, 0.2}, -0.3);
  std::vector<ProjectivePoint> nine(9, p);
  const auto one = cluster_points(nine, 1e-6);
  REQUIRE(one.size() == 1);
  CHECK(one[0].multiplicity == 9);

  std::mt19937_64 rng(3);
  std::vector<ProjectivePoint> distinct;
  while (distinct.size() < 9) {
    ProjectivePoint q(gaussian(rng), gaussian(rng), gaussian(rng));
    bool far = true;
    for (const auto& d : distinct) far = far && chordal_distance(d, q) > 0.1;
    if (far) distinct.push_back(q);
  }
  const auto nine_clusters = cluster_points(distinct, 1e-6);
  CHECK(nine_clusters.size() == 9);
  for (const auto& c : nine_clusters) CHECK(c.multiplicity == 1);

  std::vector<ProjectivePoint> triples;
  for (int i = 0; i < 3; ++i) {
    const auto& centre = distinct[static_cast<std::size_t>(i)];
    for (int k = 0; k < 3; ++k) {
      Vec3 v = centre.coords();
      for (auto& c : v) c += 1e-10 * gaussian(rng);
      // A random phase must not matter.
      const Complex phase = std::polar(1.0, 0.37 * k);
      for (auto& c : v) c *= phase;
      triples.emplace_back(v);
    }
  }
  const auto three = cluster_points(triples, 1e-6);
  REQUIRE(three.size() == 3);
  for (const auto& c : three) {
    CHECK(c.multiplicity == 3);
    bool matched = false;
    for (int i = 0; i < 3; ++i) matched = matched || chordal_distance(c.point, distinct[static_cast<std::size_t>(i)]) < 1e-9;
    CHECK(matched);
  }

  std::vector<ProjectivePoint> close{p, ProjectivePoint(1.0, Complex(0.5, 0.2) + 2e-6, -0.3)};
  CHECK(code_of([&] { cluster_points(close, 1e-6); }) == ErrorCode::AmbiguousClustering);
}
