#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "period_lab/errors.hpp"
#include "period_lab/numkit.hpp"

namespace period_lab::numkit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

UniPoly::UniPoly(std::vector<Complex> coefficients, double zero_tol) {
  double largest = 0.0;
  for (const auto& c : coefficients) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      fail(ErrorCode::ZeroPolynomial, "non-finite coefficient");
    }
    largest = std::max(largest, std::abs(c));
  }
  if (coefficients.empty() || largest <= zero_tol || largest == 0.0) {
    fail(ErrorCode::ZeroPolynomial, "all coefficients below tolerance");
  }
  while (std::abs(coefficients.back()) <= zero_tol * largest ||
         coefficients.back() == Complex(0.0)) {
    coefficients.pop_back();
  }
  coeffs_ = std::move(coefficients);
}

Complex UniPoly::operator()(Complex z) const {
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

UniPoly UniPoly::derivative() const {
  UniPoly d;
  if (coeffs_.size() <= 1) {
    d.coeffs_ = {Complex(0.0)};
    return d;
  }
  d.coeffs_.resize(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    d.coeffs_[i - 1] = static_cast<double>(i) * coeffs_[i];
  }
  return d;
}

double UniPoly::evaluation_error_bound(Complex z) const {
  const double r = std::abs(z);
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + std::abs(*it);
  return 4.0 * static_cast<double>(coeffs_.size()) * kEps * acc;
}

UniPoly UniPoly::from_roots(std::span<const Complex> roots, Complex leading) {
  std::vector<Complex> c{leading};
  for (const auto& r : roots) {
    std::vector<Complex> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return UniPoly(std::move(c));
}

std::vector<Complex> aberth_approximants(const UniPoly& p, int max_iterations) {
  const auto& c = p.coefficients();
  std::vector<Complex> zeros;
  std::size_t low = 0;
  while (low < c.size() && c[low] == Complex(0.0)) ++low;
  zeros.assign(low, Complex(0.0));
  if (low + 1 == c.size()) return zeros;

  const UniPoly q(std::vector<Complex>(c.begin() + static_cast<std::ptrdiff_t>(low), c.end()));
  const int n = q.degree();
  const auto& a = q.coefficients();
  const Complex lead = a.back();

  std::vector<Complex> z(static_cast<std::size_t>(n));
  if (n == 1) {
    z[0] = -a[0] / lead;
  } else {
    const Complex center = -a[static_cast<std::size_t>(n - 1)] / (static_cast<double>(n) * lead);
    double radius = 0.0;
    for (int k = 0; k < n; ++k) {
      radius = std::max(radius, std::pow(std::abs(a[static_cast<std::size_t>(k)] / lead),
                                         1.0 / static_cast<double>(n - k)));
    }
    radius = std::max(radius, 1e-3);
    for (int k = 0; k < n; ++k) {
      const double angle = 2.0 * std::numbers::pi * k / n + 0.7;
      z[static_cast<std::size_t>(k)] = center + radius * std::polar(1.0, angle);
    }

    const UniPoly dq = q.derivative();
    std::vector<bool> done(static_cast<std::size_t>(n), false);
    int remaining = n;
    for (int iter = 0; iter < max_iterations && remaining > 0; ++iter) {
      for (int k = 0; k < n; ++k) {
        const auto ks = static_cast<std::size_t>(k);
        if (done[ks]) continue;
        const Complex zk = z[ks];
        const Complex value = q(zk);
        if (std::abs(value) <= q.evaluation_error_bound(zk)) {
          done[ks] = true;
          --remaining;
          continue;
        }
        Complex slope = dq(zk);
        if (slope == Complex(0.0)) slope = Complex(kEps, kEps);
        const Complex ratio = value / slope;
        Complex repulsion = 0.0;
        for (int j = 0; j < n; ++j) {
          if (j == k) continue;
          const Complex diff = zk - z[static_cast<std::size_t>(j)];
          if (diff != Complex(0.0)) repulsion += 1.0 / diff;
        }
        const Complex step = ratio / (1.0 - ratio * repulsion);
        z[ks] = zk - step;
        if (std::abs(step) <= kEps * std::abs(z[ks])) {
          done[ks] = true;
          --remaining;
        }
      }
    }
    if (remaining > 0) {
      fail(ErrorCode::NonConvergence,
           "Aberth iteration did not converge for " + std::to_string(remaining) + " roots");
    }
  }
  zeros.insert(zeros.end(), z.begin(), z.end());
  return zeros;
}

std::vector<RootCluster> roots(const UniPoly& p, double cluster_tol, int max_iterations) {
  const auto approx = aberth_approximants(p, max_iterations);
  const int n = static_cast<int>(approx.size());
  DisjointSets sets(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double scale = std::max({1.0, std::abs(approx[static_cast<std::size_t>(i)]),
                                     std::abs(approx[static_cast<std::size_t>(j)])});
      if (std::abs(approx[static_cast<std::size_t>(i)] - approx[static_cast<std::size_t>(j)]) <=
          cluster_tol * scale) {
        sets.unite(i, j);
      }
    }
  }

  std::vector<RootCluster> clusters;
  for (int i = 0; i < n; ++i) {
    if (sets.find(i) != i) continue;
    std::vector<Complex> members;
    for (int j = 0; j < n; ++j) {
      if (sets.find(j) == i) members.push_back(approx[static_cast<std::size_t>(j)]);
    }
    Complex mean = 0.0;
    for (const auto& m : members) mean += m;
    mean /= static_cast<double>(members.size());
    double radius = 0.0;
    for (const auto& m : members) radius = std::max(radius, std::abs(m - mean));

    const int mult = static_cast<int>(members.size());
    UniPoly target = p;
    for (int k = 1; k < mult; ++k) target = target.derivative();
    if (target.degree() >= 1) {
      const UniPoly slope = target.derivative();
      const double reach = std::max(radius, cluster_tol * std::max(1.0, std::abs(mean)));
      Complex z = mean;
      for (int it = 0; it < 8; ++it) {
        const Complex d = slope(z);
        if (d == Complex(0.0)) break;
        const Complex next = z - target(z) / d;
        if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) break;
        if (std::abs(target(next)) > std::abs(target(z))) break;
        z = next;
      }
      if (std::abs(z - mean) <= reach) mean = z;
    }
    clusters.push_back({mean, mult, radius});
  }
  std::sort(clusters.begin(), clusters.end(), [](const RootCluster& a, const RootCluster& b) {
    if (a.center.real() != b.center.real()) return a.center.real() < b.center.real();
    return a.center.imag() < b.center.imag();
  });
  return clusters;
}

Complex resultant(const UniPoly& p, const UniPoly& q) {
  const int m = p.degree();
  const int n = q.degree();
  const int size = m + n;
  if (size == 0) return 1.0;
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(size, size);
  const auto& a = p.coefficients();
  const auto& b = q.coefficients();
  for (int row = 0; row < n; ++row) {
    for (int k = 0; k <= m; ++k) s(row, row + k) = a[static_cast<std::size_t>(m - k)];
  }
  for (int row = 0; row < m; ++row) {
    for (int k = 0; k <= n; ++k) s(n + row, row + k) = b[static_cast<std::size_t>(n - k)];
  }
  return s.partialPivLu().determinant();
}

}  // namespace period_lab::numkit
