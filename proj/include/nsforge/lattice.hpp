#pragma once

// Exact arithmetic on free lattices, rational sublattices, finitely generated
// abelian groups and integer linear constraint systems.
//
// Conventions used throughout the library:
//   * lattice bases are stored as matrix ROWS;
//   * the canonical basis of a lattice is its Hermite normal form: echelon,
//     positive pivots, entries above each pivot reduced into [0, pivot);
//   * maps between lattices act on column vectors (target.rank x source.rank).

#include "nsforge/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nsforge {

struct FreeLattice {
  std::size_t rank = 0;
  std::string label;
};

struct LatticeMap {
  FreeLattice source;
  FreeLattice target;
  IntMatrix matrix; // target.rank x source.rank

  static LatticeMap make(FreeLattice source, FreeLattice target, IntMatrix matrix);
  static LatticeMap identity(const FreeLattice& l);
  /// this ∘ inner
  LatticeMap compose(const LatticeMap& inner) const;
};

/// Finitely generated abelian group Z^free_rank ⊕ Z/n_1 ⊕ ... ⊕ Z/n_s with n_1 | n_2 | ... .
struct FinAbGroup {
  std::size_t free_rank = 0;
  IntVector torsion;

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  std::size_t num_generators() const { return torsion.size() + free_rank; }
  std::string to_string() const;
  friend bool operator==(const FinAbGroup&, const FinAbGroup&) = default;
};

struct SmithDecomposition {
  IntMatrix U; // unimodular, rows x rows
  IntMatrix D; // diagonal, same shape as the input
  IntMatrix V; // unimodular, cols x cols
};

/// U * M * V = D with d_1 | d_2 | ... and nonnegative diagonal.
SmithDecomposition smith_decompose(const IntMatrix& m);

/// Invariant factors of M (nonzero diagonal of the Smith form, including ones).
IntVector invariant_factors(const IntMatrix& m);

struct HermiteResult {
  IntMatrix H;         // nonzero rows of the Hermite form
  IntMatrix W;         // unimodular with W * M = [H; 0]
  std::size_t rank = 0;
};

/// Row Hermite normal form with transform.
HermiteResult hermite_with_transform(const IntMatrix& m);

/// Canonical basis (Hermite form) of the lattice generated by the rows of m.
IntMatrix hermite_basis(const IntMatrix& m);
/// Same for rational generators: scale by the common denominator, reduce, scale back.
RatMatrix hermite_basis(const RatMatrix& m);

/// Integer right kernel {x : M x = 0} as a Hermite basis (rows).
IntMatrix integer_kernel(const IntMatrix& m);

/// Cokernel Z^target / image(M) of a lattice map.
FinAbGroup cokernel(const LatticeMap& map);
FinAbGroup cokernel(const IntMatrix& matrix);

/// A subgroup of Q^dim stored by its canonical basis.
class RationalSubgroup {
public:
  RationalSubgroup() = default;
  /// Any generating set; the canonical basis is computed.
  static RationalSubgroup generated_by(std::size_t dim, const RatMatrix& generators);
  static RationalSubgroup generated_by(std::size_t dim, const IntMatrix& generators);
  static RationalSubgroup full(std::size_t dim);
  static RationalSubgroup zero(std::size_t dim);
  /// Accepts a basis only if it is already canonical; throws InputError otherwise.
  static RationalSubgroup from_canonical(std::size_t dim, const RatMatrix& basis);

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return basis_.rows(); }
  const RatMatrix& basis() const { return basis_; }
  bool is_integral() const { return nsforge::is_integral(basis_); }
  IntMatrix integral_basis() const { return to_integer(basis_); }

  bool contains(const RatVector& v) const;
  /// Integer coordinates of v in the canonical basis, if v is a member.
  std::optional<IntVector> coordinates(const RatVector& v) const;
  bool contains(const RationalSubgroup& other) const;
  bool same_span(const RationalSubgroup& other) const;
  /// Index [other : this] for this ⊆ other of equal rank; throws otherwise.
  Integer index_in(const RationalSubgroup& other) const;

  friend bool operator==(const RationalSubgroup& a, const RationalSubgroup& b) {
    return a.dim_ == b.dim_ && a.basis_ == b.basis_;
  }

private:
  std::size_t dim_ = 0;
  RatMatrix basis_;
};

/// S ∩ Z^dim.
RationalSubgroup intersect_integral(const RationalSubgroup& s);
/// A ∩ B for A, B ⊆ Q^dim.
RationalSubgroup intersect(const RationalSubgroup& a, const RationalSubgroup& b);
/// (Q-span of S) ∩ Z^dim.
RationalSubgroup saturate(const RationalSubgroup& s);

/// Linear condition on an unknown x ∈ Z^n: coeffs·x = 0 (modulus 0) or coeffs·x ≡ 0 (mod modulus).
struct Constraint {
  IntVector coeffs;
  Integer modulus = 0;

  static Constraint equal(IntVector coeffs) { return {std::move(coeffs), 0}; }
  static Constraint divisible(IntVector coeffs, Integer modulus) { return {std::move(coeffs), std::move(modulus)}; }
  /// coeffs·x ∈ Z for rational coefficients.
  static Constraint integral(const RatVector& coeffs);
  /// Expands an E-valued condition (one rational coefficient row per E-coordinate).
  static std::vector<Constraint> integral(const RatMatrix& coeffs_per_coordinate);

  bool satisfied_by(const IntVector& x) const;
};

/// Hermite basis of {x ∈ Z^n : all constraints hold}. No constraints gives the identity.
IntMatrix solution_lattice(const std::vector<Constraint>& constraints, std::size_t n);

/// Extension of a linear map given on a lattice Λ to a subgroup Λ̃ ⊆ Λ ⊗ Q.
///
/// `domain` holds an independent basis of Λ (rows, rational coordinates in Q^dim) and
/// `values` the images of those basis vectors (one row each, any number of
/// coordinates, e.g. an E-valued map). `target` must be canonical and lie in the
/// rational span of Λ; otherwise InputError ("non-canonical" / "infinite index
/// unsupported"). Returns the values of the unique extension on the canonical
/// basis of Λ̃, or nothing when the extension is not integral.
std::optional<IntMatrix> integral_extension(const RatMatrix& domain, const RatMatrix& values,
                                            const RationalSubgroup& target);

/// Bilinear version: `form[t]` is the matrix of the t-th coordinate of the form on
/// domain ⊗ domain. Returns per-coordinate matrices on target ⊗ target.
std::optional<std::vector<IntMatrix>> integral_extension_bilinear(const RatMatrix& domain,
                                                                  const std::vector<RatMatrix>& form,
                                                                  const RationalSubgroup& target);

/// Quotient Z^n / L for an integral sublattice L, with explicit class and lift maps.
class QuotientPresentation {
public:
  QuotientPresentation() = default;
  /// `sublattice` rows generate L ⊆ Z^n.
  QuotientPresentation(std::size_t n, const IntMatrix& sublattice);

  const FinAbGroup& group() const { return group_; }
  std::size_t ambient_rank() const { return n_; }
  /// Coordinates of the class of v: torsion coordinates reduced into [0, n_i), then free ones.
  IntVector class_of(const IntVector& v) const;
  /// Some preimage of the given coordinates; coordinates are taken modulo the presentation.
  IntVector lift(const IntVector& coords) const;
  /// Reduces coordinates modulo the torsion orders; checks the length.
  IntVector normalize(const IntVector& coords) const;
  /// Rows: linear functionals Z^n -> Z giving the free coordinates (an Hermite basis
  /// of the annihilator of L).
  IntMatrix free_projection() const;

private:
  std::size_t n_ = 0;
  FinAbGroup group_;
  IntMatrix projection_; // (torsion + free) x n
  IntMatrix lifts_;      // rows: lifts of the generators
};

/// Canonical representative of v modulo the lattice with the given basis.
/// Reduction runs against the Hermite basis taken from the last coordinate backwards,
/// so trailing coordinates are minimised first.
IntVector reduce_modulo(const IntVector& v, const IntMatrix& lattice_generators);

/// Index of the sublattice generated by `sub` in the one generated by `super`
/// (same rank required); ComputationError if not contained.
Integer lattice_index(const IntMatrix& sub, const IntMatrix& super);

/// Tests whether two generating sets span the same lattice.
bool same_lattice(const IntMatrix& a, const IntMatrix& b);

/// Integer coordinates of v in the lattice with Hermite basis h, if v is a member.
std::optional<IntVector> hermite_coordinates(const IntMatrix& h, const IntVector& v);

} // namespace nsforge
