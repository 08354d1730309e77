#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "period_lab/exec.hpp"

namespace period_lab::lattice {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntVector = std::vector<Int>;
/// Row-major; rows are vectors.
using IntMatrix = std::vector<IntVector>;

IntMatrix identity_matrix(std::size_t n);
IntMatrix transpose(const IntMatrix& m);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

/// Free Z-module with a symmetric integral bilinear form.
class GramLattice {
 public:
  GramLattice() = default;
  GramLattice(IntMatrix gram, std::vector<std::string> labels);

  int rank() const { return static_cast<int>(gram_.size()); }
  const IntMatrix& gram() const { return gram_; }
  const std::vector<std::string>& labels() const { return labels_; }

  int index_of(std::string_view label) const;
  /// Unit vector of a basis label.
  IntVector basis_vector(std::string_view label) const;
  Int pair(const IntVector& x, const IntVector& y) const;
  Int norm(const IntVector& x) const { return pair(x, x); }

 private:
  IntMatrix gram_;
  std::vector<std::string> labels_;
};

/// Orthogonal direct sum; labels of b get the suffix when they collide.
GramLattice direct_sum(const GramLattice& a, const GramLattice& b, std::string_view suffix = "'");

/// E8, H, I11, II_2_10, RE_H2, RULED_H2, D8.
GramLattice standard(std::string_view name);

struct Sublattice {
  GramLattice ambient;
  IntMatrix basis;  // rows, linearly independent

  int rank() const { return static_cast<int>(basis.size()); }
  IntMatrix gram() const;
  /// The induced form, as a lattice in its own right.
  GramLattice as_lattice(std::string_view prefix = "b") const;
};

Sublattice make_sublattice(const GramLattice& ambient, IntMatrix rows);

/// Saturated basis of {x in Z^n : m x = 0}, as rows.
IntMatrix integer_kernel(const IntMatrix& m);
Sublattice saturate(const Sublattice& s);
Sublattice orth_complement(const Sublattice& s);

struct Signature {
  int positive = 0;
  int zero = 0;
  int negative = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

Int determinant(const IntMatrix& m);
Signature signature(const IntMatrix& gram);

/// Number of vectors of norm 2 (positive definite) or -2 (negative
/// definite), by Fincke-Pohst enumeration over an exact LDL^T.
long long root_count(const GramLattice& l, Exec exec = Exec::parallel);

struct InvariantReport {
  int rank = 0;
  Signature signature;
  Int determinant;
  bool is_even = false;
  bool is_unimodular = false;
  std::optional<long long> root_count;  // only for definite lattices
};

InvariantReport invariants(const GramLattice& l, Exec exec = Exec::parallel);
InvariantReport invariants(const Sublattice& s, Exec exec = Exec::parallel);

/// sum a_i E_i - (sum a_i / 2) f in RULED_H2.
IntVector d8_embed(const std::vector<long long>& a);
/// K_V = -f - 2 s_inf + sum E_i in RULED_H2.
IntVector canonical_class_ruled();

struct LatticeHom {
  GramLattice source;
  GramLattice target;
  IntMatrix matrix;  // column j is the image of basis vector j
};

/// x |-> (x.u) v - (x.v) u
LatticeHom monodromy_nilpotent(const GramLattice& l, const IntVector& u, const IntVector& v);
int matrix_rank(const IntMatrix& m);

/// [T : S] for S inside T; nullopt when the ranks differ.
std::optional<Int> sublattice_index(const Sublattice& s, const Sublattice& t);

/// Coordinates of x in the row basis of s; NotContained when x is not in
/// the rational span.
std::vector<Rational> coordinates(const Sublattice& s, const IntVector& x);

enum class ModelKind { IIb, IIf };

struct MvModel {
  ModelKind kind;
  GramLattice ambient;
  IntVector d1_minus_d2;        // (D1, -D2) in the ambient
  Sublattice k;                 // ker(res)
  IntVector radical;            // saturated generator, ambient coordinates
  Int literal_quotient_torsion; // (D1, -D2) = t * radical
  bool radical_saturation_applied = false;
  GramLattice lambda;           // K / radical
  Sublattice i11_image;         // inside lambda
  Sublattice lambda0;           // orthogonal complement of i11_image in lambda

  /// Image in lambda of an ambient vector lying in K.
  IntVector to_lambda(const IntVector& ambient_vector) const;

  IntMatrix k_to_lambda;        // rows of V: K coordinates -> (radical, lambda) coordinates
};

MvModel mv_model(ModelKind kind);
std::string to_string(ModelKind kind);

/// D8 basis e1-e2, ..., e7-e8, e7+e8 pushed into lambda0 of the IIf model.
Sublattice d8_image_in_lambda0(const MvModel& iif);

}  // namespace period_lab::lattice
