#pragma once

// Sparse elimination of cochain complexes of free abelian groups.
//
// Pairs (a, b) with a in degree n, b in degree n+1 and <da, b> = ±1 are
// cancelled as acyclic summands; a pair whose coefficient k divides the
// whole row of b and the whole column of a is split off as a Z/k summand.
// What is left is small and handled densely. Every elimination step is
// recorded so cocycles can be carried to the residual complex and residual
// classes carried back.

#include <optional>
#include <utility>
#include <vector>

#include "cohomolab/fpabelian/lattice.hpp"
#include "cohomolab/integer.hpp"

namespace cohomolab {

using SparseVec = std::vector<std::pair<Index, Integer>>;

/// C^0 -> C^1 -> ... -> C^T over Z.
struct FreeComplex {
  std::vector<Index> dims;
  std::vector<SparseIntMatrix> d;  // d[n] : C^n -> C^{n+1}
  /// Optional filtration label per basis element (same shape as dims).
  std::vector<std::vector<int>> labels;

  Index top() const { return Index(dims.size()) - 1; }
};

class ReducedComplex {
 public:
  /// With `filtered` set, a pair (a, b) is cancelled only when it splits off
  /// as a filtered summand: label(b) - label(a) = g <= max_gap, d(a) has no
  /// entry below label(b) and nothing below label(a) hits b. Such a pair
  /// lives on pages 1..g and leaves Z/kappa behind from page g+1 on. With
  /// max_gap = 0 the residual keeps every page from E_1 on. The labels must
  /// make d non-decreasing. A prime `modulus` p > 0 reads the complex over
  /// F_p instead: every non-zero entry is a pivot and all vectors are
  /// reduced mod p (FreeHomology then does not apply).
  explicit ReducedComplex(const FreeComplex& c, bool filtered = false, int max_gap = 0, Integer modulus = 0);

  Index top() const { return Index(dims_.size()) - 1; }
  Index dim(Index n) const { return dims_[n]; }

  /// Original indices of the residual basis in degree n.
  const std::vector<Index>& kept(Index n) const { return kept_[n]; }
  /// Residual differential kept(n+1) x kept(n); empty for n = top.
  const IntMatrix& residual_d(Index n) const { return res_d_[n]; }
  const std::vector<int>& residual_labels(Index n) const { return res_labels_[n]; }

  struct Split {
    Index degree;  // degree of the Z/order summand
    int label;
    Integer order;
    std::size_t step;
  };
  const std::vector<Split>& splits() const { return splits_; }

  /// Every cancelled pair; `degree` is the degree of b.
  struct Cancellation {
    Index degree;
    int source_label, target_label;
    Integer kappa;
    bool split;
  };
  std::vector<Cancellation> cancellations() const;

  /// Residual coordinates of a cocycle of degree n; split coordinates
  /// (one per split summand in degree n, in order) are appended to `split`.
  IntVector project(Index n, const IntVector& z, std::vector<Integer>* split = nullptr) const;
  /// Residual vector of degree n carried back to C^n.
  IntVector include(Index n, const IntVector& residual) const;
  /// Cocycle of C^n representing a split summand.
  IntVector split_representative(const Split& s) const;

  /// d z = 0 in the original complex (always true in the top degree).
  bool is_cocycle(Index n, const IntVector& z) const;

  Index steps() const { return Index(steps_.size()); }
  const Integer& modulus() const { return modulus_; }

 private:
  struct Step {
    Index n;
    Index a, b;
    Integer kappa;
    SparseVec colA;
    SparseVec rowB;
    bool split;
    int label_a = 0, label_b = 0;
  };

  IntVector include_before(std::size_t step, Index n, IntVector x) const;
  Integer quotient(const Integer& a, const Integer& kappa) const;
  Integer reduce(const Integer& a) const;

  std::vector<Index> dims_;
  Integer modulus_;
  std::vector<SparseIntMatrix> orig_d_;
  std::vector<Step> steps_;
  std::vector<std::vector<Index>> kept_;
  std::vector<IntMatrix> res_d_;
  std::vector<std::vector<int>> res_labels_;
  std::vector<Split> splits_;
};

/// Homology of a free complex, with class coordinates and representatives.
class FreeHomology {
 public:
  FreeHomology(const ReducedComplex& rc, Index n);

  const Invariants& invariants() const { return inv_; }
  /// Orders of the coordinate generators (0 = free); not necessarily in
  /// invariant-factor form.
  const std::vector<Integer>& orders() const { return orders_; }
  /// Coordinates of the class of a cocycle; throws NotACocycle otherwise.
  IntVector class_of(const IntVector& cocycle) const;
  /// One cocycle per coordinate generator.
  std::vector<IntVector> representatives() const;

 private:
  const ReducedComplex* rc_;
  Index n_;
  LatticeQuotient q_;
  std::vector<std::size_t> split_ids_;
  std::vector<Integer> orders_;
  Invariants inv_;
};

}  // namespace cohomolab
