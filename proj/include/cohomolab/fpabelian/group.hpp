#pragma once

// Finitely presented abelian groups and homomorphisms between them.

#include <memory>
#include <optional>
#include <vector>

#include "cohomolab/fpabelian/lattice.hpp"
#include "cohomolab/integer.hpp"

namespace cohomolab {

/// Z^generators / (column span of relations).
///
/// Diagonal presentations (one relation o_i * e_i per torsion generator) are
/// recognised and kept as an order list; every cochain group is of that
/// shape, so membership and reduction stay linear-time there.
class FpAbGroup {
 public:
  FpAbGroup();
  FpAbGroup(Index generators, SparseIntMatrix relations);

  static FpAbGroup free(Index rank);
  /// Z/o_1 + ... + Z/o_k; o_i = 0 gives a free generator.
  static FpAbGroup diagonal(std::vector<Integer> orders);
  static FpAbGroup from_invariants(const Invariants& inv);

  Index generator_count() const { return gens_; }
  const SparseIntMatrix& relations() const { return rel_; }
  const Invariants& invariants() const { return inv_; }

  bool is_diagonal() const { return diagonal_; }
  /// Per-generator orders (diagonal presentations only).
  const std::vector<Integer>& orders() const { return orders_; }

  /// x lies in the relation lattice.
  bool is_zero_element(const IntVector& x) const;
  /// Canonical representative modulo relations for diagonal presentations;
  /// the identity otherwise.
  IntVector reduce(const IntVector& x) const;
  bool equal_elements(const IntVector& x, const IntVector& y) const;

  /// Same generators and the same relation lattice entries.
  bool same_presentation(const FpAbGroup& other) const;

 private:
  Index gens_ = 0;
  SparseIntMatrix rel_;
  bool diagonal_ = true;
  std::vector<Integer> orders_;
  Invariants inv_;
};

/// Group equality means equal invariant-factor lists.
inline bool isomorphic(const FpAbGroup& a, const FpAbGroup& b) {
  return a.invariants() == b.invariants();
}

/// A homomorphism given by its matrix on generators.
class GroupMap {
 public:
  GroupMap() = default;
  /// Checks dimensions and that source relations land in target relations.
  GroupMap(FpAbGroup source, FpAbGroup target, SparseIntMatrix matrix);
  GroupMap(std::shared_ptr<const FpAbGroup> source, std::shared_ptr<const FpAbGroup> target,
           SparseIntMatrix matrix);

  static GroupMap zero(std::shared_ptr<const FpAbGroup> source, std::shared_ptr<const FpAbGroup> target);
  static GroupMap identity(std::shared_ptr<const FpAbGroup> group);

  const FpAbGroup& source() const { return *source_; }
  const FpAbGroup& target() const { return *target_; }
  const std::shared_ptr<const FpAbGroup>& source_ptr() const { return source_; }
  const std::shared_ptr<const FpAbGroup>& target_ptr() const { return target_; }
  const SparseIntMatrix& matrix() const { return m_; }

  IntVector apply(const IntVector& x) const;
  /// this ∘ first.
  GroupMap after(const GroupMap& first) const;
  /// Index of a generator whose image is non-zero, if any.
  std::optional<Index> nonzero_witness() const;
  bool is_zero() const { return !nonzero_witness().has_value(); }

 private:
  void check() const;

  std::shared_ptr<const FpAbGroup> source_;
  std::shared_ptr<const FpAbGroup> target_;
  SparseIntMatrix m_;
};

/// Dense description of ker(d_out) / im(d_in) on the middle group.
///
/// Elements are read in the ambient generator coordinates of the middle
/// group; `coords` returns nothing for non-cocycles.
class SubquotientHomology {
 public:
  SubquotientHomology(const GroupMap& d_out, const GroupMap& d_in);

  const Invariants& invariants() const { return q_.invariants(); }
  FpAbGroup group() const { return FpAbGroup::diagonal(q_.orders()); }
  /// Representative cocycles, one column per generator of the result.
  IntMatrix representatives() const;
  std::optional<IntVector> coords(const IntVector& cocycle) const;

 private:
  Index n_ = 0;
  LatticeQuotient q_;
};

/// ker(d_out) / im(d_in). Throws CompositionNotZero if d_out ∘ d_in != 0.
FpAbGroup homology_at(const GroupMap& d_out, const GroupMap& d_in);

/// Some x with f(x) = b in the target group, or nothing; exact.
std::optional<IntVector> solve_in_group(const GroupMap& f, const IntVector& b);

/// a + sign * b for maps between the same groups.
GroupMap combine(const GroupMap& a, const GroupMap& b, int sign = 1);
/// a == b as homomorphisms.
bool same_map(const GroupMap& a, const GroupMap& b);

/// Generators of {x : d x = 0} in the source of d.
std::vector<IntVector> cocycle_generators(const GroupMap& d);
/// A non-zero element of ker f, if there is one.
std::optional<IntVector> kernel_element(const GroupMap& f);
/// A target element outside im f, if there is one.
std::optional<IntVector> cokernel_witness(const GroupMap& f);

}  // namespace cohomolab
