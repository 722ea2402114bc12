#pragma once

// Brute-force cross-checks for the main algorithms. Nothing here calls the
// Hermite, Smith or constraint-solving code of the library; coordinate systems
// (basis of Λ_Z⁰, Hom^s basis, basic forms) are read from the main path so the
// results are comparable, everything else is recomputed.

#include "nsforge/curve.hpp"
#include "nsforge/root_data.hpp"

namespace nsforge::oracle {

class BudgetExceeded : public ComputationError {
public:
  using ComputationError::ComputationError;
};

struct EnumerationBudget {
  long coefficient_bound = 10;
  long element_bound = 51840;

  /// Defaults overridden by NSFORGE_BUDGET="coefficients[,elements]".
  static EnumerationBudget from_env();
};

/// NS(M_G^d) by enumerating ambient vectors and evaluating both integrality
/// conditions with rational arithmetic on the standard basis of Λ. Returns the
/// canonical row Hermite basis of the solutions.
IntMatrix ns_reductive_bruteforce(const Reductive& g, const IntVector& d, const CurveModel& curve,
                                  const EnumerationBudget& budget = EnumerationBudget::from_env());

/// Generates the Weyl group on coroot coordinates by closure and tests wᵀ B w = B
/// for every element. Throws BudgetExceeded past budget.element_bound elements.
bool full_weyl_check(const Reductive& g, const IntMatrix& form,
                     const EnumerationBudget& budget = EnumerationBudget::from_env());

/// Order of the Weyl group by closure (BudgetExceeded past the element bound).
std::size_t weyl_group_order(const Reductive& g, const EnumerationBudget& budget = EnumerationBudget::from_env());

/// U M V = D, det U = ±1, det V = ±1, D diagonal, nonnegative, with d_i | d_{i+1}.
bool smith_verify(const IntMatrix& m, const IntMatrix& u, const IntMatrix& d, const IntMatrix& v);

/// Invariant factors (nonzero ones, increasing) from gcds of k x k minors.
IntVector invariant_factors_by_minors(const IntMatrix& m);

/// π₁(G) = Λ / Λ_coroots from the minors of the coroot matrix.
FinAbGroup pi1_by_minors(const Reductive& g);

/// Fraction-free determinant.
Integer bareiss_determinant(IntMatrix m);

/// Exact lattice equality of two generating sets by rational membership tests.
bool same_lattice_by_membership(const IntMatrix& a, const IntMatrix& b);

} // namespace nsforge::oracle
