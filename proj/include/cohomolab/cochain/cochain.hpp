#pragma once

// Cochain groups as constrained subgroups of V^(X^k).
//
// A cochain is a function on k-tuples. A continuity region asks it to be
// locally constant there (constant on connected components of the region in
// the subspace preorder); the equivariant flag asks f(g.t) = g.f(t). Both
// constraints together leave one free value per orbit of components, taken
// in the fixed lattice of that orbit's stabilizer, so the realized group is
// always diagonally presented.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cohomolab/cochain/module.hpp"
#include "cohomolab/error.hpp"
#include "cohomolab/finspace/space.hpp"

namespace cohomolab {

struct Region {
  enum Kind { None, Full, Subspace } kind = None;
  SubspaceOfPower subspace;  // Subspace only
  /// Coordinates allowed to move along comparability edges; empty = all.
  std::vector<char> moving;

  /// Further continuity constraints; their components are merged with the main one.
  struct Layer {
    SubspaceOfPower subspace;
    std::vector<char> moving;
  };
  std::vector<Layer> extra;
  /// Tuples where the cochain must vanish (membership over codes); empty = none.
  std::vector<char> vanish;

  static Region none() { return {}; }
  static Region full() { return {Full, {}, {}, {}, {}}; }
  static Region of(SubspaceOfPower s, std::vector<char> moving = {}) {
    return {Subspace, std::move(s), std::move(moving), {}, {}};
  }
  Region& also(SubspaceOfPower s, std::vector<char> mv = {}) {
    extra.push_back({std::move(s), std::move(mv)});
    return *this;
  }
  Region& vanishing_on(std::vector<char> member) {
    vanish = std::move(member);
    return *this;
  }
};

class CochainGroup {
 public:
  /// Throws RegionArityMismatch, RegionNotGStable, SizeOverflow.
  static std::shared_ptr<const CochainGroup> build(std::shared_ptr<const FiniteSpace> X,
                                                   std::shared_ptr<const GModule> M, Index arity, Region region,
                                                   bool equivariant, std::string name = {});

  const FiniteSpace& space() const { return *X_; }
  const std::shared_ptr<const FiniteSpace>& space_ptr() const { return X_; }
  const GModule& module() const { return *M_; }
  const std::shared_ptr<const GModule>& module_ptr() const { return M_; }
  Index arity() const { return arity_; }
  const TupleCodec& codec() const { return codec_; }
  const Region& region() const { return region_; }
  bool equivariant() const { return equivariant_; }
  const std::string& name() const { return name_; }

  const FpAbGroup& group() const { return *group_; }
  const std::shared_ptr<const FpAbGroup>& group_ptr() const { return group_; }
  Index generator_count() const { return group_->generator_count(); }
  Index tuple_count() const { return codec_.count(); }

  struct Class {
    Index rep;     // representative tuple
    Index offset;  // first generator
    std::shared_ptr<const FixedLattice> fixed;
  };
  const std::vector<Class>& classes() const { return classes_; }
  Index class_of(Index tuple) const { return tuple_class_[tuple]; }
  /// f(tuple) = A_g f(rep) for this g.
  Index twist_of(Index tuple) const { return tuple_twist_[tuple]; }

  /// Value of the cochain with coordinates x at a tuple (rank(V) entries).
  IntVector value_at(Index tuple, const IntVector& x) const;
  /// All values, tuple-major with V generators innermost.
  IntVector values(const IntVector& x) const;
  /// Coordinates of an ambient function, or nothing if it violates a constraint.
  std::optional<IntVector> read(const IntVector& ambient) const;

  /// The full V^(X^k) this group sits in.
  std::shared_ptr<const FpAbGroup> ambient_group() const;
  GroupMap inclusion() const;
  /// Every element of `other` (same space, module, arity) lies in this group.
  bool contains(const CochainGroup& other) const;

  /// Generator vector e_i.
  IntVector unit(Index i) const;

 private:
  CochainGroup() = default;

  std::shared_ptr<const FiniteSpace> X_;
  std::shared_ptr<const GModule> M_;
  Index arity_ = 0;
  TupleCodec codec_;
  Region region_;
  bool equivariant_ = false;
  std::string name_;
  std::vector<int> tuple_class_;  // -1 when the class carries no generators
  std::vector<int> tuple_twist_;
  std::vector<Class> classes_;
  std::shared_ptr<const FpAbGroup> group_;
};

using CochainGroupPtr = std::shared_ptr<const CochainGroup>;
using SpacePtr = std::shared_ptr<const FiniteSpace>;
using ModulePtr = std::shared_ptr<const GModule>;

/// (Op f)(t) = sum over terms of sign * A_g f(source).
struct Term {
  int sign;
  Index source;
  Index g;
};
using TermFn = std::function<void(const Index* target_tuple, std::vector<Term>& out)>;

/// Matrix of a tuple operator between cochain groups. The operator is
/// evaluated at every target tuple and must land in the target group;
/// otherwise `failure` is thrown naming the first offending tuple.
GroupMap tuple_operator(const CochainGroup& source, const CochainGroup& target, const TermFn& terms,
                        ErrorKind failure, const std::string& what);

/// Alternating-sum coboundary; throws NotClosedUnderDifferential.
GroupMap simplicial_differential(const CochainGroup& source, const CochainGroup& target);

/// [g.f](t) = g.f(g^{-1} t) as a map of a non-equivariant group to itself.
GroupMap action_map(const CochainGroup& A, Index g);
IntVector act_on_cochain(const CochainGroup& A, Index g, const IntVector& f);

/// Equivariant version of A (same region); verified fixed by every element.
CochainGroupPtr fixed_subgroup(const CochainGroupPtr& A);

/// Inclusion of `sub` into `super` (sub must be contained).
GroupMap inclusion_map(const CochainGroup& sub, const CochainGroup& super);

/// Tuple helpers on decoded coordinates.
inline void delete_coord(const Index* t, Index k, Index i, Index* out) {
  for (Index j = 0, o = 0; j < k; ++j)
    if (j != i) out[o++] = t[j];
}

}  // namespace cohomolab
