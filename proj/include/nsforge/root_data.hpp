#pragma once

// Root data of split reductive groups, the lattice chain attached to them,
// Weyl reflections, basic inner products and the standard catalog.
//
// A group is presented on its cocharacter lattice Λ = Z^n. Simple roots are rows
// in the dual basis, simple coroots are rows in Λ. The Cartan matrix is
// C[i][j] = α_i(α_j∨). Coroot coordinates (the space Λ_coroots ⊗ Q = Q^l) are the
// home of Λ_G̃ = Z^l, Λ_G', Λ_Ḡ and Λ_ad.

#include "nsforge/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nsforge {

struct CartanComponent {
  char family = 'A';               // 'A'..'G'
  std::size_t rank = 0;
  std::vector<std::size_t> nodes;  // simple indices, increasing

  std::string name() const { return std::string(1, family) + std::to_string(rank); }
  friend bool operator==(const CartanComponent&, const CartanComponent&) = default;
};

/// Splits the Dynkin graph of C into components and identifies each one.
/// Throws InputError("not a Cartan matrix ...") naming the offending entry.
std::vector<CartanComponent> classify_cartan(const IntMatrix& cartan);

/// Cartan matrix of a Dynkin type in Bourbaki numbering, C[i][j] = α_i(α_j∨).
IntMatrix cartan_of_type(char family, std::size_t rank);

struct RootDatum {
  std::size_t n = 0;       // rank of the cocharacter lattice
  IntMatrix simple_roots;   // l x n
  IntMatrix simple_coroots; // l x n
  IntMatrix cartan;         // l x l
  std::vector<CartanComponent> cartan_type;

  std::size_t semisimple_rank() const { return simple_coroots.rows(); }
  std::string type_string() const;
};

/// Validates shapes, independence of the coroots and the Cartan matrix.
RootDatum build_root_datum(std::size_t n, const IntMatrix& simple_roots, const IntMatrix& simple_coroots);

/// An almost simple factor of the derived group together with its basic inner product.
struct SimpleFactor {
  CartanComponent type;
  IntMatrix form; // on the simple coroots of the factor, ordered as type.nodes
};

class Reductive {
public:
  Reductive() = default;
  static Reductive derive(const RootDatum& datum, std::string name = "");

  const std::string& name() const { return name_; }
  const RootDatum& datum() const { return datum_; }
  std::size_t n() const { return datum_.n; }
  std::size_t l() const { return datum_.semisimple_rank(); }
  const IntMatrix& roots() const { return datum_.simple_roots; }
  const IntMatrix& coroots() const { return datum_.simple_coroots; }
  const IntMatrix& cartan() const { return datum_.cartan; }

  const RationalSubgroup& coroot_lattice() const { return coroot_lattice_; }
  const RationalSubgroup& center_lattice() const { return center_lattice_; }
  const RationalSubgroup& derived_lattice() const { return derived_lattice_; }
  /// Integral basis of Λ_Z⁰ (rows, z x n).
  IntMatrix center_basis() const { return center_lattice_.integral_basis(); }
  std::size_t center_rank() const { return center_lattice_.rank(); }
  /// Rank of Λ / Λ_G' (the abelianization).
  std::size_t abelian_rank() const { return n() - derived_lattice_.rank(); }

  /// Projection Λ ⊗ Q -> Λ_coroots ⊗ Q along the center, l x n.
  const RatMatrix& coroot_projection() const { return projection_; }
  RatVector coroot_coordinates(const IntVector& v) const;
  /// Lattices in coroot coordinates: Z^l ⊆ Λ_G' ⊆ Λ_Ḡ ⊆ Λ_ad.
  RationalSubgroup gtilde_lattice() const { return RationalSubgroup::full(l()); }
  const RationalSubgroup& gprime_lattice() const { return gprime_lattice_; }
  const RationalSubgroup& gbar_lattice() const { return gbar_lattice_; }
  const RationalSubgroup& gad_lattice() const { return gad_lattice_; }

  const QuotientPresentation& pi1() const { return pi1_; }
  const FinAbGroup& pi1_group() const { return pi1_.group(); }
  /// Canonical lift of d ∈ π₁ to Λ.
  IntVector lift_component(const IntVector& d) const;
  IntVector component_of(const IntVector& v) const { return pi1_.class_of(v); }

  const std::vector<SimpleFactor>& factors() const { return factors_; }
  /// Basic inner product of factor f embedded into the l x l coroot coordinates.
  IntMatrix factor_form(std::size_t f) const;

  /// s_i(λ) = λ - α_i(λ) α_i∨ as n x n matrices on Λ.
  std::vector<IntMatrix> simple_reflections() const;
  /// The same reflections on coroot coordinates Z^l.
  std::vector<IntMatrix> coroot_reflections() const;

private:
  std::string name_;
  RootDatum datum_;
  RationalSubgroup coroot_lattice_, center_lattice_, derived_lattice_;
  RatMatrix projection_;
  RationalSubgroup gprime_lattice_, gbar_lattice_, gad_lattice_;
  QuotientPresentation pi1_;
  std::vector<SimpleFactor> factors_;
};

/// Unique W-invariant positive definite form on the coroots of an irreducible Cartan
/// matrix with value 2 on short coroots (simple-coroot basis).
IntMatrix basic_inner_product(const IntMatrix& cartan);
IntMatrix basic_inner_product(const Reductive& g, std::size_t factor);

/// Z-basis of the symmetric integer forms B with sᵀ B s = B for every given s.
std::vector<IntMatrix> invariant_symmetric_forms(const std::vector<IntMatrix>& reflections, std::size_t dim);

/// All coroots (the W-orbit of the simple ones) in coroot coordinates.
std::vector<IntVector> all_coroots(const IntMatrix& cartan);

/// Lift δ of d whose image δ̄ makes the map ι^NS injective. For genus ≥ 1 this is the
/// canonical lift; for genus 0 the first simple coroot of every factor on which δ̄
/// vanishes is added.
IntVector find_injective_lift(const Reductive& g, const IntVector& d, std::size_t genus);

struct GhatExtension {
  Reductive ghat;
  IntMatrix basis;    // Hermite basis of Λ_Ĝ inside Λ ⊕ Z, rows
  IntMatrix pi_hat;   // n x (l+1): Λ_Ĝ -> Λ
  IntMatrix dt;       // 1 x (l+1): Λ_Ĝ -> Z
  IntVector generator; // element of Λ_Ĝ generating π₁(Ĝ) with dt = 1
  bool pi1_is_z = false;
  bool generator_maps_to_d = false;
};

/// Ĝ with Λ_Ĝ generated by Λ_coroots ⊕ 0 and (δ, 1) for the canonical lift δ of d.
GhatExtension ghat_extension(const Reductive& g, const IntVector& d);

struct MappingCone {
  IntMatrix f; // (z + n) x (z + l): (z, c) -> (z, -(ζz + πc))
  IntMatrix g; // classes in π₁ of the basis of Λ_Z⁰ ⊕ Λ, one column each
  bool composite_zero = false;
  bool injective = false;
  bool cokernel_matches = false;
  bool surjective = false;
  bool exact() const { return composite_zero && injective && cokernel_matches && surjective; }
};

/// 0 -> Λ_Z⁰ ⊕ Λ_G̃ -> Λ_Z⁰ ⊕ Λ -> π₁(G) -> 0 with its exactness checks.
MappingCone mapping_cone(const Reductive& g);

// ---------------------------------------------------------------------------
// Catalog

/// Standard presentation of a named group: SL, GL, PGL, Sp, SO, Spin, T (torus),
/// E6, E7, E8, F4, G2 (simply connected) and E6ad, E7ad, E8ad, F4ad, G2ad (adjoint).
/// The numeral is the matrix size (Sp4 has rank 2) and may be replaced by
/// `n`. Products are written A x B, e.g. "GL2xSL3".
Reductive catalog(const std::string& name, std::optional<long> n = std::nullopt);

/// Product of groups (block diagonal root datum).
Reductive product(const std::vector<Reductive>& groups);

/// Families known to catalog(), with a one-line description each.
std::vector<std::pair<std::string, std::string>> catalog_families();

/// Fixed list of concrete catalog names used by batch runs and test suites.
std::vector<std::string> standard_catalog();

} // namespace nsforge
