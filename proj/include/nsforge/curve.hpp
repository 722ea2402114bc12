#pragma once

// The curve enters only through its genus and a model of End J_C: a free
// Z-module with the Rosati involution and the unit element.

#include "nsforge/matrix.hpp"

namespace nsforge {

struct EndRing {
  std::size_t module_rank = 0;
  IntMatrix involution; // module_rank x module_rank
  IntVector unit;

  /// E = Z with trivial involution.
  static EndRing integers();
  /// E = 0.
  static EndRing zero();
  /// Checks involution² = id and involution(unit) = unit.
  static EndRing make(const IntMatrix& involution, const IntVector& unit);

  friend bool operator==(const EndRing&, const EndRing&) = default;
};

struct CurveModel {
  std::size_t genus = 0;
  EndRing end;
  std::size_t ns_jc_rank = 0; // rank of the fixed lattice of the involution

  /// Validates the ring against the genus and computes ns_jc_rank.
  static CurveModel make(std::size_t genus, const EndRing& end);
  /// E = Z for genus >= 1, E = 0 for genus 0.
  static CurveModel generic(std::size_t genus);
};

/// Basis (rows) of Hom^s(Z^r ⊗ Z^r, E): forms b with b(e_j, e_i) = †b(e_i, e_j).
/// Coordinates are indexed (i * r + j) * m + t for m = module_rank.
IntMatrix hom_s_basis(std::size_t r, const EndRing& end);

/// Tests the symmetry condition on a coordinate vector of length r * r * m.
bool is_hom_s(const IntVector& coords, std::size_t r, const EndRing& end);

/// Pull-back of a form on Z^t (coordinates t t m) along map: Z^r -> Z^t (a t x r matrix).
IntVector pull_back_form(const IntMatrix& map, const IntVector& coords, std::size_t m);

} // namespace nsforge
