#pragma once

// The first-quadrant double complex A_cr^{p,q}(X,U;V) of cochains on
// X^{p+1} x X^{q+1} that are continuous on X^{p+1} x U[q].
//
// d_h deletes coordinates of the first block, d_v those of the second block
// with the extra factor (-1)^p, so the two anticommute. Rows are augmented by
// A_cr^q(X,U;V) through i(f)(x0, x') = f(x'), columns by A_c^p(X;V) through
// j(f)(x, x0') = f(x). Everything is built up to total degree N+1 so that
// cohomology is exact up to degree N.

#include <memory>
#include <string>
#include <vector>

#include "cohomolab/cochain/cochain.hpp"
#include "cohomolab/fpabelian/fpcomplex.hpp"

namespace cohomolab {


/// Deliberate defects used as negative controls.
struct Corruption {
  bool sign = false;          // d_v and the row contraction lose their (-1)^p
  bool differential = false;  // one entry of d_v at (0,0) is perturbed

  bool any() const { return sign || differential; }
};

/// Outcome of one identity check; `witness` names a generator and what went wrong.
struct Check {
  std::string name;
  bool ok = true;
  std::string witness;
};

class DoubleComplex {
 public:
  struct Options {
    bool equivariant = false;
    Index bound = 3;  // N
    Corruption corruption;
  };

  /// Throws NotACovering, NotGInvariantCovering and the cochain-module errors.
  DoubleComplex(SpacePtr X, ModulePtr M, Covering cover, Options options);

  const FiniteSpace& space() const { return *X_; }
  const SpacePtr& space_ptr() const { return X_; }
  const GModule& module() const { return *M_; }
  const ModulePtr& module_ptr() const { return M_; }
  const Covering& cover() const { return cover_; }
  const Options& options() const { return opt_; }
  bool equivariant() const { return opt_.equivariant; }
  Index bound() const { return opt_.bound; }
  /// Highest total degree built (N + 1).
  Index top() const { return opt_.bound + 1; }
  bool has(Index p, Index q) const { return p >= 0 && q >= 0 && p + q <= top(); }

  const CochainGroup& grid(Index p, Index q) const { return *grid_[p][q]; }
  const CochainGroupPtr& grid_ptr(Index p, Index q) const { return grid_[p][q]; }
  const SubspaceOfPower& neighborhood(Index q) const { return U_[q]; }

  /// grid(p,q) -> grid(p+1,q) and grid(p,q) -> grid(p,q+1); need p+q < top().
  const GroupMap& dh(Index p, Index q) const { return dh_[p][q]; }
  const GroupMap& dv(Index p, Index q) const { return dv_[p][q]; }
  /// Description of the corrupted entry, empty if none.
  const std::string& corruption_note() const { return corruption_note_; }

  /// A_cr^q(X,U;V) and A_c^p(X;V) with their differentials.
  const CochainGroup& row_source(Index q) const { return *row_src_[q]; }
  const CochainGroupPtr& row_source_ptr(Index q) const { return row_src_[q]; }
  const CochainGroup& col_source(Index p) const { return *col_src_[p]; }
  const CochainGroupPtr& col_source_ptr(Index p) const { return col_src_[p]; }
  const GroupMap& row_d(Index q) const { return row_d_[q]; }
  const GroupMap& col_d(Index p) const { return col_d_[p]; }
  const GroupMap& row_aug(Index q) const { return row_aug_[q]; }  // i
  const GroupMap& col_aug(Index p) const { return col_aug_[p]; }  // j

  /// s^{p,q} = (-1)^p h^{p,q}: grid(p,q) -> grid(p-1,q), or -> row_source(q) at p = 0.
  GroupMap contraction(Index p, Index q) const;

  /// Tot^n = sum over p of grid(p, n-p), ascending p; labels are p.
  const FpComplex& total() const { return tot_; }
  const std::shared_ptr<const FpAbGroup>& total_group(Index n) const { return tot_.groups[n]; }
  Index total_offset(Index n, Index p) const { return tot_off_[n][p]; }
  GroupMap total_d(Index n) const;
  /// grid(p, n-p) element placed into Tot^n, and the component back.
  IntVector to_total(Index n, Index p, const IntVector& x) const;
  IntVector component(Index n, Index p, const IntVector& x) const;

  /// i and j followed by the inclusion into Tot^n.
  GroupMap total_i(Index n) const;
  GroupMap total_j(Index n) const;
  /// A_cr^* and A_c^* as complexes of groups (degrees 0..top()).
  FpComplex row_source_complex() const;
  FpComplex col_source_complex() const;

 private:
  SpacePtr X_;
  ModulePtr M_;
  Covering cover_;
  Options opt_;
  std::vector<SubspaceOfPower> U_;
  std::vector<std::vector<CochainGroupPtr>> grid_;
  std::vector<std::vector<GroupMap>> dh_, dv_;
  std::vector<CochainGroupPtr> row_src_, col_src_;
  std::vector<GroupMap> row_d_, col_d_, row_aug_, col_aug_;
  FpComplex tot_;
  std::vector<std::vector<Index>> tot_off_;
  std::string corruption_note_;
};

/// Grid-style differentials on arbitrary cochain groups of the right arities.
/// `p` is the size-minus-one of the first block.
GroupMap horizontal_differential(const CochainGroup& src, const CochainGroup& tgt, Index p, bool corrupt_sign = false);
GroupMap vertical_differential(const CochainGroup& src, const CochainGroup& tgt, Index p, bool corrupt_sign = false);

/// Embedding of a map's source/target into a bigger diagonal group at an offset.
GroupMap place_block(const GroupMap& f, std::shared_ptr<const FpAbGroup> source, Index source_offset,
                     std::shared_ptr<const FpAbGroup> target, Index target_offset);

}  // namespace cohomolab
