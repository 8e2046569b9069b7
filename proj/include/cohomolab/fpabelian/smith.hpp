#pragma once

// Dense exact normal forms over the integers.

#include <optional>
#include <vector>

#include "cohomolab/integer.hpp"

namespace cohomolab {

/// Smith normal form S = U * M * W with U, W unimodular.
///
/// The diagonal of S is non-negative with d_i | d_{i+1}; `rank` counts the
/// non-zero diagonal entries. The inverses of U and W are carried along so
/// callers can move between bases without a second elimination.
struct SmithDecomposition {
  IntMatrix S;
  IntMatrix U;
  IntMatrix W;
  IntMatrix U_inv;
  IntMatrix W_inv;
  Index rank = 0;

  std::vector<Integer> diagonal() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& M);

/// Non-zero invariant factors of M (the SNF diagonal), ascending; no transforms.
std::vector<Integer> invariant_factors(const IntMatrix& M);

/// Column Hermite form of the lattice spanned by the columns of A.
///
/// Columns are in echelon form from the top (pivot rows strictly increasing),
/// every pivot is positive, and entries left of a pivot lie in [0, pivot).
/// Zero columns are dropped, so the result is a lattice basis.
IntMatrix hermite_column_form(const IntMatrix& A);

/// Basis of {x : M x = 0}, canonical (column Hermite form).
IntMatrix kernel_basis(const IntMatrix& M);

/// Some integer x with A x = b, or nothing when b is outside the column lattice.
std::optional<IntVector> solve_integer(const IntMatrix& A, const IntVector& b);

/// |det| = 1 for a square integer matrix, decided through its Smith form.
bool is_unimodular(const IntMatrix& M);

}  // namespace cohomolab
