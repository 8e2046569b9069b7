#pragma once

// Coefficient modules: a diagonally presented V with G acting by automorphisms.

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "cohomolab/finspace/action.hpp"
#include "cohomolab/fpabelian/group.hpp"

namespace cohomolab {

/// V^H for a subgroup H, presented as L_H / R with L_H = {v : h.v = v mod R}.
struct FixedLattice {
  bool whole = false;          // H acts trivially; V^H = V in V's own generators
  std::vector<Integer> orders;  // one per generator of V^H
  IntMatrix embed;             // rank(V) x generators; columns are ambient representatives
  LatticeQuotient quotient;    // unused when whole

  Index size() const { return Index(orders.size()); }
  /// Coordinates of v in V^H, or nothing when v is not H-fixed.
  std::optional<IntVector> coords(const IntVector& v, const std::vector<Integer>& v_orders) const;
};

class GModule {
 public:
  /// `matrices[g]` acts on V's generators; checked to be automorphisms
  /// forming a homomorphism from the group of `action`.
  GModule(FpAbGroup V, GroupAction action, std::vector<IntMatrix> matrices);
  /// Builds all element matrices from those of a generating set.
  static GModule from_generators(FpAbGroup V, GroupAction action, const std::vector<Index>& generators,
                                 const std::vector<IntMatrix>& generator_matrices);
  static GModule trivial(FpAbGroup V, GroupAction action);

  const FpAbGroup& V() const { return *V_; }
  const std::shared_ptr<const FpAbGroup>& V_ptr() const { return V_; }
  Index rank() const { return V_->generator_count(); }
  const GroupAction& group() const { return action_; }
  const IntMatrix& matrix(Index g) const { return mats_[g]; }
  bool acts_trivially() const { return trivial_; }
  bool is_identity(Index g) const { return ident_[g]; }

  /// Fixed lattice of the subgroup given by its sorted element list (cached).
  std::shared_ptr<const FixedLattice> fixed(const std::vector<Index>& subgroup) const;

 private:
  std::shared_ptr<const FpAbGroup> V_;
  GroupAction action_;
  std::vector<IntMatrix> mats_;
  std::vector<char> ident_;
  bool trivial_ = true;
  struct Cache {
    std::mutex mu;
    std::map<std::vector<Index>, std::shared_ptr<const FixedLattice>> lattices;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

}  // namespace cohomolab
