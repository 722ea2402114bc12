#pragma once

// Induced maps between Néron–Severi lattices as integer matrices, and Dynkin indices.

#include "nsforge/ns.hpp"

namespace nsforge {

/// A linear map between NS lattices. `matrix` has one column per source basis
/// vector holding its image in the ambient coordinates of the target.
struct NSMap {
  std::string label;
  IntMatrix source_basis; // rows
  IntMatrix target_basis; // rows
  IntMatrix matrix;       // target ambient x source rank

  /// Coordinates of the images in the target basis; ComputationError if an image
  /// is not in the target lattice.
  IntMatrix lattice_matrix() const;
};

/// Homomorphism given on cocharacters, Λ_G -> Λ_H (n_H x n_G).
struct GroupHom {
  Reductive source;
  Reductive target;
  IntMatrix cochar;
  IntMatrix coroot_map; // l_H x l_G, images of simple coroots in simple coroot coordinates

  /// Checks the shape and that coroots go to the coroot lattice.
  static GroupHom make(const Reductive& source, const Reductive& target, const IntMatrix& cochar);
  /// this ∘ inner
  GroupHom compose(const GroupHom& inner) const;
  /// φ_*(d) ∈ π₁(H).
  IntVector push_component(const IntVector& d) const;
};

/// NS(M_T) of the maximal torus of g: [Z^n | Hom^s(Z^n ⊗ Z^n, E)], identity basis.
NSLattice ns_maximal_torus(const Reductive& g, const CurveModel& curve);

/// Image of an ambient vector of NS(M_G^d) in NS(M_{T_G}) under ι^{NS,δ}.
IntVector iota_apply(const NSContext& ctx, const IntVector& delta, const IntVector& x);

/// ι^{NS,δ}: NS(M_G^d) -> NS(M_{T_G}) where d is the class of δ.
NSMap iota_ns(const Reductive& g, const IntVector& delta, const CurveModel& curve);

/// φ^{NS,d}: NS(M_H^e) -> NS(M_G^d), e = φ_*(d). The lift δ of d defaults to the
/// canonical one.
NSMap phi_ns(const GroupHom& phi, const IntVector& d, const CurveModel& curve,
             const std::optional<IntVector>& delta = std::nullopt);

/// q*: NS(M_{G^ab}) -> NS(M_G^d).
NSMap qstar(const Reductive& g, const IntVector& d, const CurveModel& curve);

/// Pull-back NS(M_{T_H}) -> NS(M_{T_G}) along the cocharacter map (ambient x ambient).
IntMatrix torus_pullback(const GroupHom& phi, const CurveModel& curve);

/// Triples whose split image extends over Λ_G, computed as the preimage of the
/// pull-back along Λ_Z⁰ ⊕ Λ_G̃ -> Λ_G (Hermite basis, ambient coordinates).
IntMatrix cartesian_lattice(const Reductive& g, const IntVector& delta, const CurveModel& curve);

struct DynkinIndex {
  Integer value;
  bool trivial = false; // the map kills the coroots
};

/// φ*(b_H) = d_φ · b_G for almost simple source and target.
DynkinIndex dynkin_index(const GroupHom& phi);

/// Σ_i ⟨μ_i, α∨⟩² / b_G(α∨, α∨) for a short simple coroot α∨; weights are rows in the
/// dual basis of Λ_G and must sum to zero.
Integer dynkin_by_weights(const Reductive& g, const IntMatrix& weights);

/// The cocharacter map G -> SL_N of a representation with the given weights.
GroupHom representation_hom(const Reductive& g, const IntMatrix& weights);

} // namespace nsforge
