#include "period_lab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "period_lab/errors.hpp"

namespace period_lab::lattice {

namespace {

using RationalMatrix = std::vector<std::vector<Rational>>;

RationalMatrix to_rational(const IntMatrix& m) {
  RationalMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i].assign(m[i].begin(), m[i].end());
  return out;
}

std::size_t cols_of(const IntMatrix& m) { return m.empty() ? 0 : m.front().size(); }

// s x + t y = g with g = gcd(x, y) >= 0.
void extended_gcd(const Int& x, const Int& y, Int& g, Int& s, Int& t) {
  Int old_r = x, r = y, old_s = 1, s1 = 0, old_t = 0, t1 = 1;
  while (r != 0) {
    const Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s1;
    old_s = s1;
    s1 = tmp;
    tmp = old_t - q * t1;
    old_t = t1;
    t1 = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  g = old_r;
  s = old_s;
  t = old_t;
}

// Column echelon form m V = [H | 0] with V unimodular; also returns V^{-1}.
struct ColumnEchelon {
  IntMatrix reduced;
  IntMatrix v;
  IntMatrix v_inverse;
  std::size_t rank = 0;
};

ColumnEchelon column_echelon(const IntMatrix& m, std::size_t n) {
  ColumnEchelon e{m, identity_matrix(n), identity_matrix(n), 0};
  auto& a = e.reduced;
  std::size_t pivot_col = 0;
  for (std::size_t row = 0; row < a.size() && pivot_col < n; ++row) {
    for (std::size_t c = pivot_col + 1; c < n; ++c) {
      const Int x = a[row][pivot_col];
      const Int y = a[row][c];
      if (y == 0) continue;
      Int g, s, t;
      extended_gcd(x, y, g, s, t);
      const Int yg = y / g;
      const Int xg = x / g;
      auto combine_cols = [&](IntMatrix& mat) {
        for (auto& r : mat) {
          const Int ca = r[pivot_col];
          const Int cb = r[c];
          r[pivot_col] = s * ca + t * cb;
          r[c] = -yg * ca + xg * cb;
        }
      };
      combine_cols(a);
      combine_cols(e.v);
      auto& vi = e.v_inverse;
      for (std::size_t k = 0; k < n; ++k) {
        const Int ra = vi[pivot_col][k];
        const Int rb = vi[c][k];
        vi[pivot_col][k] = xg * ra + yg * rb;
        vi[c][k] = -t * ra + s * rb;
      }
    }
    if (a[row][pivot_col] != 0) ++pivot_col;
  }
  e.rank = pivot_col;
  return e;
}

// Gaussian elimination over Q; returns the rank and reduces in place.
std::size_t row_reduce(RationalMatrix& a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[r][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
    }
    ++r;
  }
  return r;
}

// ---------------------------------------------------------------- roots

struct Enumerator {
  RationalMatrix q;  // Fincke-Pohst form
  Rational bound;

  long long count(int level, const Rational& budget, std::vector<Int>& x) const {
    if (level < 0) return budget == 0 ? 1 : 0;
    const auto i = static_cast<std::size_t>(level);
    const std::size_t n = q.size();
    Rational centre = 0;
    for (std::size_t j = i + 1; j < n; ++j) centre -= q[i][j] * Rational(x[j]);
    const double radius = std::sqrt(std::max(0.0, static_cast<double>(budget / q[i][i])));
    const double c = static_cast<double>(centre);
    const auto lo = static_cast<long long>(std::floor(c - radius)) - 1;
    const auto hi = static_cast<long long>(std::ceil(c + radius)) + 1;
    long long total = 0;
    for (long long xi = lo; xi <= hi; ++xi) {
      const Rational d = Rational(xi) - centre;
      const Rational used = q[i][i] * d * d;
      if (used > budget) continue;
      x[i] = xi;
      total += count(level - 1, budget - used, x);
    }
    x[i] = 0;
    return total;
  }

  // Prefixes (x_{n-1}, x_{n-2}) with their remaining budgets.
  struct Prefix {
    std::vector<Int> x;
    Rational budget;
  };

  std::vector<Prefix> prefixes(int depth) const {
    const int n = static_cast<int>(q.size());
    std::vector<Prefix> frontier{{std::vector<Int>(static_cast<std::size_t>(n), 0), bound}};
    for (int level = n - 1; level >= std::max(0, n - depth); --level) {
      std::vector<Prefix> next;
      const auto i = static_cast<std::size_t>(level);
      for (const auto& p : frontier) {
        Rational centre = 0;
        for (std::size_t j = i + 1; j < q.size(); ++j) centre -= q[i][j] * Rational(p.x[j]);
        const double radius = std::sqrt(std::max(0.0, static_cast<double>(p.budget / q[i][i])));
        const double c = static_cast<double>(centre);
        for (auto xi = static_cast<long long>(std::floor(c - radius)) - 1;
             xi <= static_cast<long long>(std::ceil(c + radius)) + 1; ++xi) {
          const Rational d = Rational(xi) - centre;
          const Rational used = q[i][i] * d * d;
          if (used > p.budget) continue;
          Prefix child = p;
          child.x[i] = xi;
          child.budget = p.budget - used;
          next.push_back(std::move(child));
        }
      }
      frontier = std::move(next);
    }
    return frontier;
  }
};

Enumerator make_enumerator(const IntMatrix& positive_gram, const Rational& bound) {
  Enumerator e{to_rational(positive_gram), bound};
  auto& q = e.q;
  const std::size_t n = q.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      q[j][i] = q[i][j];
      q[i][j] = q[i][j] / q[i][i];
    }
    for (std::size_t k = i + 1; k < n; ++k) {
      for (std::size_t l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
    }
  }
  return e;
}

}  // namespace

// ---------------------------------------------------------------- basics

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix transpose(const IntMatrix& m) {
  const std::size_t c = cols_of(m);
  IntMatrix t(c, IntVector(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < c; ++j) t[j][i] = m[i][j];
  return t;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t inner = b.size();
  const std::size_t c = cols_of(b);
  IntMatrix out(a.size(), IntVector(c, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < c; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

GramLattice::GramLattice(IntMatrix gram, std::vector<std::string> labels)
    : gram_(std::move(gram)), labels_(std::move(labels)) {
  const std::size_t n = gram_.size();
  if (labels_.size() != n) fail(ErrorCode::InvalidConfig, "label count does not match the Gram rank");
  for (std::size_t i = 0; i < n; ++i) {
    if (gram_[i].size() != n) fail(ErrorCode::InvalidConfig, "Gram matrix is not square");
    for (std::size_t j = 0; j < i; ++j) {
      if (gram_[i][j] != gram_[j][i]) fail(ErrorCode::InvalidConfig, "Gram matrix is not symmetric");
    }
  }
  if (std::set<std::string>(labels_.begin(), labels_.end()).size() != n) {
    fail(ErrorCode::InvalidConfig, "basis labels are not distinct");
  }
}

int GramLattice::index_of(std::string_view label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) fail(ErrorCode::UnknownName, "no basis vector named " + std::string(label));
  return static_cast<int>(it - labels_.begin());
}

IntVector GramLattice::basis_vector(std::string_view label) const {
  IntVector v(gram_.size(), 0);
  v[static_cast<std::size_t>(index_of(label))] = 1;
  return v;
}

Int GramLattice::pair(const IntVector& x, const IntVector& y) const {
  Int s = 0;
  for (std::size_t i = 0; i < gram_.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < gram_.size(); ++j) s += x[i] * gram_[i][j] * y[j];
  }
  return s;
}

GramLattice direct_sum(const GramLattice& a, const GramLattice& b, std::string_view suffix) {
  const std::size_t n = static_cast<std::size_t>(a.rank());
  const std::size_t m = static_cast<std::size_t>(b.rank());
  IntMatrix g(n + m, IntVector(n + m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g[i][j] = a.gram()[i][j];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g[n + i][n + j] = b.gram()[i][j];
  std::vector<std::string> labels = a.labels();
  for (const auto& l : b.labels()) {
    const bool clash = std::find(a.labels().begin(), a.labels().end(), l) != a.labels().end();
    labels.push_back(clash ? l + std::string(suffix) : l);
  }
  return GramLattice(std::move(g), std::move(labels));
}

GramLattice standard(std::string_view name) {
  auto numbered = [](const std::string& stem, int count) {
    std::vector<std::string> out;
    for (int i = 1; i <= count; ++i) out.push_back(stem + std::to_string(i));
    return out;
  };
  if (name == "E8") {
    // Negative of the Bourbaki Cartan matrix.
    const int c[8][8] = {{-2, 0, 1, 0, 0, 0, 0, 0},  {0, -2, 0, 1, 0, 0, 0, 0},  {1, 0, -2, 1, 0, 0, 0, 0},
                         {0, 1, 1, -2, 1, 0, 0, 0},  {0, 0, 0, 1, -2, 1, 0, 0},  {0, 0, 0, 0, 1, -2, 1, 0},
                         {0, 0, 0, 0, 0, 1, -2, 1},  {0, 0, 0, 0, 0, 0, 1, -2}};
    IntMatrix g(8, IntVector(8));
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = c[i][j];
    return GramLattice(g, numbered("e", 8));
  }
  if (name == "D8") {
    // e1-e2, ..., e7-e8, e7+e8 under the negative of the dot product.
    IntMatrix rows(8, IntVector(8, 0));
    for (std::size_t i = 0; i < 7; ++i) {
      rows[i][i] = 1;
      rows[i][i + 1] = -1;
    }
    rows[7][6] = 1;
    rows[7][7] = 1;
    IntMatrix g = multiply(rows, transpose(rows));
    for (auto& r : g)
      for (auto& v : r) v = -v;
    return GramLattice(g, numbered("d", 8));
  }
  if (name == "H") return GramLattice({{0, 1}, {1, 0}}, {"u", "v"});
  if (name == "I11") return GramLattice({{-1, 1}, {1, 0}}, {"s", "f"});
  if (name == "II_2_10") {
    const auto h1 = GramLattice({{0, 1}, {1, 0}}, {"u1", "v1"});
    const auto h2 = GramLattice({{0, 1}, {1, 0}}, {"u2", "v2"});
    return direct_sum(direct_sum(h1, h2), standard("E8"));
  }
  if (name == "RE_H2") {
    IntMatrix g(10, IntVector(10, 0));
    g[0][0] = 1;
    for (std::size_t i = 1; i < 10; ++i) g[i][i] = -1;
    auto labels = numbered("F", 9);
    labels.insert(labels.begin(), "h");
    return GramLattice(g, labels);
  }
  if (name == "RULED_H2") {
    IntMatrix g(10, IntVector(10, 0));
    g[0][0] = -1;
    g[0][1] = g[1][0] = 1;
    for (std::size_t i = 2; i < 10; ++i) g[i][i] = -1;
    auto labels = numbered("E", 8);
    labels.insert(labels.begin(), {"s_inf", "f"});
    return GramLattice(g, labels);
  }
  fail(ErrorCode::UnknownName, "unknown standard lattice " + std::string(name));
}

// ---------------------------------------------------------------- sublattices

IntMatrix Sublattice::gram() const {
  return multiply(multiply(basis, ambient.gram()), transpose(basis));
}

GramLattice Sublattice::as_lattice(std::string_view prefix) const {
  std::vector<std::string> labels;
  for (int i = 1; i <= rank(); ++i) labels.push_back(std::string(prefix) + std::to_string(i));
  return GramLattice(gram(), labels);
}

Sublattice make_sublattice(const GramLattice& ambient, IntMatrix rows) {
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != ambient.rank()) fail(ErrorCode::InvalidConfig, "vector length mismatch");
  }
  if (matrix_rank(rows) != static_cast<int>(rows.size())) {
    fail(ErrorCode::InvalidConfig, "sublattice rows are linearly dependent");
  }
  return {ambient, std::move(rows)};
}

IntMatrix integer_kernel(const IntMatrix& m) {
  if (m.empty()) fail(ErrorCode::InvalidConfig, "kernel of an empty matrix needs a column count");
  const std::size_t n = cols_of(m);
  const auto e = column_echelon(m, n);
  IntMatrix out;
  for (std::size_t c = e.rank; c < n; ++c) {
    IntVector v(n);
    for (std::size_t r = 0; r < n; ++r) v[r] = e.v[r][c];
    out.push_back(std::move(v));
  }
  return out;
}

Sublattice saturate(const Sublattice& s) {
  if (s.basis.empty()) return s;
  // (Q-span) cap Z^n is the kernel of the kernel.
  const auto k = integer_kernel(s.basis);
  if (k.empty()) return {s.ambient, identity_matrix(static_cast<std::size_t>(s.ambient.rank()))};
  return {s.ambient, integer_kernel(k)};
}

Sublattice orth_complement(const Sublattice& s) {
  const auto n = static_cast<std::size_t>(s.ambient.rank());
  if (s.basis.empty()) return {s.ambient, identity_matrix(n)};
  return {s.ambient, integer_kernel(multiply(s.basis, s.ambient.gram()))};
}

// ---------------------------------------------------------------- invariants

Int determinant(const IntMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

Signature signature(const IntMatrix& gram) {
  RationalMatrix a = to_rational(gram);
  const std::size_t n = a.size();
  Signature s;
  auto swap_index = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    for (auto& row : a) std::swap(row[i], row[j]);
  };
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][p] == 0) ++p;
    if (p == n) {
      // All remaining diagonal entries vanish; use x_i += x_j on a nonzero
      // off-diagonal entry to create a nonzero diagonal.
      bool found = false;
      for (std::size_t i = k; i < n && !found; ++i) {
        for (std::size_t j = i + 1; j < n && !found; ++j) {
          if (a[i][j] == 0) continue;
          for (std::size_t c = 0; c < n; ++c) a[i][c] += a[j][c];
          for (std::size_t r = 0; r < n; ++r) a[r][i] += a[r][j];
          p = i;
          found = true;
        }
      }
      if (!found) {
        s.zero += static_cast<int>(n - k);
        return s;
      }
    }
    swap_index(k, p);
    const Rational d = a[k][k];
    (d > 0 ? s.positive : s.negative) += 1;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (a[r][k] == 0) continue;
      const Rational f = a[r][k] / d;
      for (std::size_t c = k; c < n; ++c) a[r][c] -= f * a[k][c];
      for (std::size_t c = k; c < n; ++c) a[c][r] = a[r][c];
    }
  }
  return s;
}

long long root_count(const GramLattice& l, Exec exec) {
  const auto sig = signature(l.gram());
  const int n = l.rank();
  if (n == 0) return 0;
  IntMatrix q = l.gram();
  if (sig.negative == n) {
    for (auto& r : q)
      for (auto& v : r) v = -v;
  } else if (sig.positive != n) {
    fail(ErrorCode::IndefiniteEnumeration, "root enumeration needs a definite lattice");
  }
  const auto e = make_enumerator(q, Rational(2));
  if (exec == Exec::serial) {
    std::vector<Int> x(static_cast<std::size_t>(n), 0);
    return e.count(n - 1, e.bound, x);
  }
  const auto prefixes = e.prefixes(2);
  const int depth = std::min(n, 2);
  long long total = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : total)
  for (std::size_t k = 0; k < prefixes.size(); ++k) {
    std::vector<Int> x = prefixes[k].x;
    total += e.count(n - 1 - depth, prefixes[k].budget, x);
  }
  return total;
}

InvariantReport invariants(const GramLattice& l, Exec exec) {
  InvariantReport r;
  r.rank = l.rank();
  r.signature = signature(l.gram());
  r.determinant = determinant(l.gram());
  r.is_even = true;
  for (int i = 0; i < l.rank(); ++i) {
    const auto& d = l.gram()[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    if (d % 2 != 0) r.is_even = false;
  }
  r.is_unimodular = abs(r.determinant) == 1;
  if (r.rank > 0 && (r.signature.positive == r.rank || r.signature.negative == r.rank)) {
    r.root_count = root_count(l, exec);
  }
  return r;
}

InvariantReport invariants(const Sublattice& s, Exec exec) { return invariants(s.as_lattice(), exec); }

// ---------------------------------------------------------------- maps

IntVector d8_embed(const std::vector<long long>& a) {
  if (a.size() != 8) fail(ErrorCode::InvalidConfig, "D8 vectors have eight coordinates");
  long long sum = 0;
  for (const auto v : a) sum += v;
  if (sum % 2 != 0) fail(ErrorCode::OddSum, "coordinate sum is odd");
  IntVector out(10, 0);
  out[1] = -sum / 2;
  for (std::size_t i = 0; i < 8; ++i) out[2 + i] = a[i];
  return out;
}

IntVector canonical_class_ruled() {
  IntVector k(10, 1);
  k[0] = -2;
  k[1] = -1;
  return k;
}

LatticeHom monodromy_nilpotent(const GramLattice& l, const IntVector& u, const IntVector& v) {
  const auto n = static_cast<std::size_t>(l.rank());
  IntMatrix m(n, IntVector(n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    Int xu = 0, xv = 0;
    for (std::size_t k = 0; k < n; ++k) {
      xu += l.gram()[j][k] * u[k];
      xv += l.gram()[j][k] * v[k];
    }
    for (std::size_t i = 0; i < n; ++i) m[i][j] = xu * v[i] - xv * u[i];
  }
  return {l, l, std::move(m)};
}

int matrix_rank(const IntMatrix& m) {
  auto a = to_rational(m);
  return static_cast<int>(row_reduce(a));
}

std::vector<Rational> coordinates(const Sublattice& s, const IntVector& x) {
  // Solve c B = x through the augmented system [B^T | x].
  const std::size_t k = s.basis.size();
  const std::size_t n = x.size();
  RationalMatrix a(n, std::vector<Rational>(k + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) a[i][j] = s.basis[j][i];
    a[i][k] = x[i];
  }
  const std::size_t r = row_reduce(a);
  std::vector<Rational> c(k, 0);
  for (std::size_t i = 0; i < r; ++i) {
    std::size_t lead = 0;
    while (lead <= k && a[i][lead] == 0) ++lead;
    if (lead == k) fail(ErrorCode::NotContained, "vector is outside the rational span");
    c[lead] = a[i][k] / a[i][lead];
  }
  if (r < k) fail(ErrorCode::InvalidConfig, "sublattice basis is degenerate");
  return c;
}

std::optional<Int> sublattice_index(const Sublattice& s, const Sublattice& t) {
  IntMatrix c;
  for (const auto& row : s.basis) {
    const auto coords = coordinates(t, row);
    IntVector v;
    for (const auto& q : coords) {
      if (denominator(q) != 1) fail(ErrorCode::NotContained, "vector has non-integral coordinates");
      v.push_back(numerator(q));
    }
    c.push_back(std::move(v));
  }
  if (s.rank() != t.rank()) return std::nullopt;
  return abs(determinant(c));
}

// ---------------------------------------------------------------- Mayer-Vietoris

std::string to_string(ModelKind kind) { return kind == ModelKind::IIb ? "IIb" : "IIf"; }

IntVector MvModel::to_lambda(const IntVector& ambient_vector) const {
  const auto c = coordinates(k, ambient_vector);
  IntVector y;
  for (const auto& q : c) {
    if (denominator(q) != 1) fail(ErrorCode::NotContained, "vector is not in K");
    y.push_back(numerator(q));
  }
  IntVector out(k_to_lambda.size() - 1, 0);
  for (std::size_t j = 1; j < k_to_lambda.size(); ++j) {
    for (std::size_t i = 0; i < y.size(); ++i) out[j - 1] += y[i] * k_to_lambda[i][j];
  }
  return out;
}

MvModel mv_model(ModelKind kind) {
  MvModel m;
  m.kind = kind;
  IntVector w;  // res(x) = x . w
  IntVector i11_a, i11_b;
  if (kind == ModelKind::IIb) {
    m.ambient = direct_sum(standard("RE_H2"), GramLattice({{0, 1}, {1, 0}}, {"a", "b"}));
    const auto n = static_cast<std::size_t>(m.ambient.rank());
    IntVector f(n, 0);
    f[0] = 3;
    for (std::size_t i = 1; i <= 9; ++i) f[i] = -1;
    w = f;
    w[10] = -1;  // (f, -a)
    m.d1_minus_d2 = IntVector(n);
    for (std::size_t i = 0; i < n; ++i) m.d1_minus_d2[i] = 2 * w[i];
    i11_a = m.ambient.basis_vector("F9");
    i11_a[11] = 1;  // (F9, b)
    i11_b = f;      // (f, 0)
  } else {
    m.ambient = direct_sum(GramLattice({{-1, 1}, {1, 0}}, {"s_inf", "f"}), standard("RULED_H2"), "_2");
    const auto n = static_cast<std::size_t>(m.ambient.rank());
    IntVector d(n, 0);
    d[0] = 2;
    d[1] = 2;   // D1 = 2 s_inf + 2 f
    d[2] = -2;
    d[3] = -2;  // -D2 = -(2 s_inf + 2 f - sum E_i)
    for (std::size_t i = 4; i < n; ++i) d[i] = 1;
    w = d;
    m.d1_minus_d2 = d;
    i11_a = IntVector(n, 0);
    i11_a[0] = 1;  // (s_inf, 0)
    i11_b = IntVector(n, 0);
    i11_b[1] = 1;
    i11_b[3] = 1;  // (f, f)
  }

  m.k = orth_complement(Sublattice{m.ambient, {w}});
  const auto gram_k = m.k.gram();
  const auto rad = integer_kernel(gram_k);
  if (rad.size() != 1) fail(ErrorCode::InvalidConfig, "radical of K is not of rank one");
  const auto& r = rad.front();
  m.radical = multiply(IntMatrix{r}, m.k.basis).front();

  // (D1, -D2) = t * radical
  const auto lit = coordinates(Sublattice{m.ambient, {m.radical}}, m.d1_minus_d2);
  m.literal_quotient_torsion = abs(numerator(lit.front()));
  m.radical_saturation_applied = m.literal_quotient_torsion != 1;

  // Unimodular V with r V = (+-1, 0, ..., 0); rows 1.. of V^{-1} span a
  // complement of the radical.
  const auto e = column_echelon(IntMatrix{r}, r.size());
  m.k_to_lambda = e.v;
  IntMatrix complement(e.v_inverse.begin() + 1, e.v_inverse.end());
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= complement.size(); ++i) labels.push_back("l" + std::to_string(i));
  m.lambda = GramLattice(multiply(multiply(complement, gram_k), transpose(complement)), labels);

  m.i11_image = Sublattice{m.lambda, {m.to_lambda(i11_a), m.to_lambda(i11_b)}};
  m.lambda0 = orth_complement(m.i11_image);
  return m;
}

Sublattice d8_image_in_lambda0(const MvModel& iif) {
  if (iif.kind != ModelKind::IIf) fail(ErrorCode::InvalidConfig, "the D8 image lives in the IIf model");
  IntMatrix rows;
  for (std::size_t i = 0; i < 8; ++i) {
    std::vector<long long> a(8, 0);
    if (i < 7) {
      a[i] = 1;
      a[i + 1] = -1;
    } else {
      a[6] = 1;
      a[7] = 1;
    }
    const auto d = d8_embed(a);
    IntVector amb(2, 0);
    amb.insert(amb.end(), d.begin(), d.end());
    rows.push_back(iif.to_lambda(amb));
  }
  return Sublattice{iif.lambda, rows};
}

}  // namespace period_lab::lattice
