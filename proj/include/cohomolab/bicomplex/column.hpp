#pragma once

// Column p of the double complex, split along the restriction to
// X^{p+1} x U[q]:
//
//   0 -> K -> A_cr^{p,*}        -> A_c^{p,*}(X,U;V) -> 0
//   0 -> K -> A^{p,*}(X;V)      -> A^{p,*}(X,U;V)   -> 0
//
// A^{p,q}(X;V) are functions on X^{p+1} x X^{q+1} that are continuous in the
// first block for every fixed second block; A_cr^{p,q} here additionally
// asks for continuity on X^{p+1} x U[q]. The relative groups live on
// X^{p+1} x U[q] only (modelled as cochains vanishing elsewhere) and K is
// the common kernel. The full column is contracted by inserting a basepoint
// right after the first block.

#include <optional>
#include <vector>

#include "cohomolab/bicomplex/checks.hpp"

namespace cohomolab {

struct ColumnReport {
  Index p = 0;
  Index qmax = 0;
  Index basepoint = 0;
  std::vector<Check> contraction;  // (a)
  std::vector<Check> kernels;      // (b)
  std::vector<Check> sequences;    // (c)
  /// (d) H^q of A_c^{p,*}(X,U;V) and of A^{p,*}(X,U;V), q = 0..qmax.
  std::vector<Invariants> continuous;
  std::vector<Invariants> relative;
  /// The inclusion of the first into the second in cohomology.
  IsoReport inclusion;

  bool checks_ok() const;
};

/// Throws BasepointInvalid when the basepoint is not a point of X.
ColumnReport column_analysis(const SpacePtr& X, const ModulePtr& M, const Covering& cover, Index p, Index qmax,
                             std::optional<Index> basepoint = std::nullopt);

}  // namespace cohomolab
