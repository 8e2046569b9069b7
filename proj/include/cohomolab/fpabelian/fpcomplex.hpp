#pragma once

// Cochain complexes of diagonally presented groups, computed through a free
// model.
//
// For C^n = F^n / R^n with R^n = diag(o) the complex
//   Cone^n = F^n + R^{n+1},  D(f, r) = (δf + ρr, κf − σr)
// with σ = ρ^{-1} δ ρ and κ = −ρ^{-1} δ δ is a complex of free groups whose
// projection (f, r) -> [f] is a quasi-isomorphism. The correction κ makes
// this hold even when the lifted δ only squares to zero modulo relations.
// The top degree drops R^{T+1}; this is harmless because ρ is injective.
// The cone starts one degree early with R^0 alone, so cone degree k stands
// for degree k-1 of the complex.

#include <memory>
#include <mutex>
#include <vector>

#include "cohomolab/fpabelian/group.hpp"
#include "cohomolab/fpabelian/reduction.hpp"

namespace cohomolab {

struct FpComplex {
  std::vector<std::shared_ptr<const FpAbGroup>> groups;  // diagonal presentations
  std::vector<SparseIntMatrix> d;                        // d[n] : C^n -> C^{n+1}
  std::vector<std::vector<int>> labels;                  // optional filtration labels

  Index top() const { return Index(groups.size()) - 1; }
};

class FpComplexHomology {
 public:
  /// `filtered` and `max_gap` are passed on to the reduction (labels of the
  /// complex become labels of the cone).
  explicit FpComplexHomology(const FpComplex& c, bool filtered = false, int max_gap = 0);

  Index top() const { return Index(groups_.size()) - 1; }
  /// In the top degree this is the cokernel of the last map. Each degree is
  /// computed on first use.
  const Invariants& homology(Index n) const { return at(n).invariants(); }
  const std::vector<Integer>& orders(Index n) const { return at(n).orders(); }
  FpAbGroup group(Index n) const { return FpAbGroup::diagonal(orders(n)); }

  /// Coordinates of the class of a cocycle (given on the generators of C^n).
  IntVector class_of(Index n, const IntVector& cocycle) const;
  /// Cocycles of C^n, one per coordinate of `orders(n)`.
  std::vector<IntVector> representatives(Index n) const;

  /// Cone vector (cone degree n+1) over a cocycle; throws NotACocycle.
  IntVector lift(Index n, const IntVector& cocycle) const;

  const FreeComplex& cone() const { return cone_; }
  const ReducedComplex& reduced() const { return *reduced_; }
  /// Number of F-coordinates at the front of cone degree n+1.
  Index free_part(Index n) const { return gens_[n]; }

 private:
  std::vector<std::shared_ptr<const FpAbGroup>> groups_;
  std::vector<SparseIntMatrix> d_;
  std::vector<Index> gens_;
  std::vector<std::vector<Index>> tors_;  // position of each generator among torsion generators, or -1
  FreeComplex cone_;
  std::unique_ptr<ReducedComplex> reduced_;
  mutable std::vector<std::unique_ptr<FreeHomology>> homology_;
  mutable std::mutex mu_;

  const FreeHomology& at(Index n) const;
};

}  // namespace cohomolab
