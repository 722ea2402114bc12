#pragma once

// Néron–Severi lattices of moduli of G-bundles.
//
// Elements are triples (l_Z, b_Z, b) written in ambient coordinates
//   [ l_Z on the basis of Λ_Z⁰ (z) | b_Z in hom_s_basis(z) (h) | coefficient of each basic form (s) ].

#include "nsforge/curve.hpp"
#include "nsforge/root_data.hpp"

#include <string>
#include <vector>

namespace nsforge {

/// Data shared by every computation on NS(M_G^d) for a fixed group and curve.
struct NSContext {
  NSContext(const Reductive& group, const CurveModel& curve);

  const Reductive* group;
  CurveModel curve;
  IntMatrix zbasis;             // z x n
  RatMatrix zc;                 // n x z: Λ_Z⁰ part of each basis vector of Λ
  RatMatrix pc;                 // n x l: coroot coordinates of each basis vector of Λ
  IntMatrix hom_s;              // h x (z z m)
  std::vector<IntMatrix> forms; // basic forms, l x l each
  std::size_t z = 0, h = 0, s = 0, m = 0;

  std::size_t ambient() const { return z + h + s; }
  /// Σ_f k_f b_f on coroot coordinates for the last s ambient coordinates of x.
  IntMatrix form_of(const IntVector& x) const;
  /// b_Z of x as z z m coordinates.
  IntVector bz_of(const IntVector& x) const;

  /// Condition (1) functional on Λ: value on e_k of l_Z ⊕ b(-δ̄, _), one row per k,
  /// as coefficients on the ambient coordinates.
  RatMatrix linear_rows(const RatVector& delta_bar) const;
  /// Condition (2): value on (e_k, e_l)[t] of b_Z ⊥ (unit · b), row index (k n + l) m + t.
  RatMatrix form_rows() const;
};

struct NSTriple {
  IntVector l_z;
  IntVector b_z; // z z m coordinates
  IntMatrix b;   // on coroot coordinates
};

struct NSLattice {
  std::string group;
  IntVector component;
  CurveModel curve;
  std::size_t z = 0, h = 0, s = 0;
  IntMatrix basis; // rows, Hermite form, ambient coordinates

  std::size_t ambient() const { return z + h + s; }
  std::size_t rank() const { return basis.rows(); }
  bool contains(const IntVector& x) const;
};

NSTriple triple_of(const NSContext& ctx, const IntVector& x);

/// NS(M_T) for a torus: dual basis ⊕ Hom^s.
NSLattice ns_torus(const Reductive& t, const CurveModel& curve);

/// NS(M_G) for simply connected G: one basic form per almost simple factor.
/// Computed from the even W-invariant forms and checked against the basic forms.
NSLattice ns_simply_connected(const Reductive& g);

/// Symmetric, even on the diagonal and invariant under the simple reflections.
bool is_ns_simply_connected_form(const Reductive& g, const IntMatrix& form);

/// Coefficients k_f with form = Σ k_f b_f, if any.
std::optional<IntVector> decompose_form(const Reductive& g, const IntMatrix& form);

/// NS(M_G^d) using the canonical lift of d.
NSLattice ns_reductive(const Reductive& g, const IntVector& d, const CurveModel& curve);
/// Same with an explicit lift δ ∈ Λ of d.
NSLattice ns_reductive_with_lift(const Reductive& g, const IntVector& delta, const CurveModel& curve);

/// Exact check of both integrality conditions for an ambient vector and a lift δ.
bool satisfies_conditions(const NSContext& ctx, const IntVector& x, const IntVector& delta);

/// r + r·rank NS(J_C) + r(r-1)/2·rank End(J_C) + s.
std::size_t rank_formula(const Reductive& g, const CurveModel& curve);

/// Hom(π₁(G), J_C) written as J_C^r x J_C[n_1] x ...
std::string hom_pi1_jacobian(const Reductive& g);

/// q*: NS(M_{G^ab}) -> ambient coordinates of NS(M_G^d); one column per basis
/// vector of NS(M_{G^ab}) = Z^r ⊕ Hom^s(Z^r ⊗ Z^r, E).
IntMatrix qstar_matrix(const NSContext& ctx);

struct ExtensionAnalysis {
  IntMatrix qstar_image;        // basis, ambient coordinates
  IntMatrix kernel_pr2;         // basis, ambient coordinates
  IntMatrix pr2_image;          // basis in basic-form coefficients
  IntMatrix characterized;      // basis in basic-form coefficients
  std::size_t qstar_rank = 0;
  bool exact = false;
  bool characterization_match = false;
};

ExtensionAnalysis ns_extension_analysis(const Reductive& g, const IntVector& d, const CurveModel& curve);

struct PicardReport {
  std::string group;
  IntVector component;
  FinAbGroup pi1;
  std::string continuous_part;
  NSLattice ns;
  std::size_t rank_formula = 0;
  ExtensionAnalysis extension;
};

PicardReport picard_report(const Reductive& g, const IntVector& d, const CurveModel& curve);

} // namespace nsforge
