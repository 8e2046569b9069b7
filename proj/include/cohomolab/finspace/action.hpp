#pragma once

// Finite groups acting on finite spaces by order automorphisms.

#include <string>
#include <vector>

#include "cohomolab/finspace/space.hpp"

namespace cohomolab {

struct ActionSpec {
  std::vector<std::string> element_names;
  std::vector<std::vector<Index>> table;         // table[g][h] = g*h
  std::vector<std::vector<Index>> permutations;  // permutations[g][x] = g.x

  static ActionSpec trivial(Index points);
};

/// A validated action. Element 0 need not be the identity; use identity().
class GroupAction {
 public:
  GroupAction() = default;
  /// Throws NotAGroup, NotOrderAutomorphism or NotHomomorphism.
  GroupAction(const ActionSpec& spec, const FiniteSpace& X);
  static GroupAction trivial(const FiniteSpace& X) { return GroupAction(ActionSpec::trivial(X.size()), X); }

  Index order() const { return Index(names_.size()); }
  Index points() const { return points_; }
  Index identity() const { return e_; }
  Index mul(Index g, Index h) const { return table_[g][h]; }
  Index inv(Index g) const { return inv_[g]; }
  Index act(Index g, Index x) const { return perm_[g][x]; }
  const std::string& name(Index g) const { return names_[g]; }
  bool is_trivial() const;
  /// Every point has trivial stabilizer.
  bool is_free() const;

  /// Diagonal action on a tuple code of X^k.
  Index act_tuple(Index g, Index code, const TupleCodec& codec) const;
  bool stabilizes(const SubspaceOfPower& S) const;
  bool stabilizes(const Covering& c) const;

 private:
  Index points_ = 0;
  Index e_ = 0;
  std::vector<std::string> names_;
  std::vector<std::vector<Index>> table_;
  std::vector<Index> inv_;
  std::vector<std::vector<Index>> perm_;
};

}  // namespace cohomolab
