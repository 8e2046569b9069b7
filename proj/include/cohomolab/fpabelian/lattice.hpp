#pragma once

// Invariant-factor data and subquotients of integer lattices.

#include <optional>
#include <string>
#include <vector>

#include "cohomolab/integer.hpp"

namespace cohomolab {

/// Isomorphism type of a finitely generated abelian group:
/// Z/t_1 + ... + Z/t_k + Z^free with 1 < t_1 | t_2 | ... | t_k.
struct Invariants {
  std::vector<Integer> torsion;
  Index free_rank = 0;

  bool trivial() const { return torsion.empty() && free_rank == 0; }
  /// Human form, e.g. "Z/2 + Z^2", or "0".
  std::string str() const;
  /// Compact form: invariant factors ascending, then one 0 per free summand,
  /// comma separated; "trivial" for the zero group.
  std::string machine() const;

  friend bool operator==(const Invariants&, const Invariants&) = default;
};

/// Invariant factors of Z/o_1 + ... + Z/o_k (o_i = 0 means Z; o_i = 1 is dropped).
Invariants invariants_from_orders(const std::vector<Integer>& orders);

/// A full-column-rank basis of a sublattice of Z^m with exact coordinate solving.
class LatticeBasis {
 public:
  LatticeBasis() = default;
  /// Columns must be linearly independent.
  explicit LatticeBasis(IntMatrix basis);
  /// Hermite basis of the lattice spanned by arbitrary generators.
  static LatticeBasis spanned_by(const IntMatrix& generators);

  Index ambient_dim() const { return B_.rows(); }
  Index rank() const { return B_.cols(); }
  const IntMatrix& basis() const { return B_; }

  std::optional<IntVector> coords(const IntVector& x) const;
  bool contains(const IntVector& x) const { return coords(x).has_value(); }

 private:
  IntMatrix B_;
  IntMatrix u_top_;  // first rank rows of U in U B W = S
  IntMatrix w_;
  std::vector<Integer> s_;
};

/// L / M for lattices M <= L <= Z^m, given by generating columns.
///
/// The quotient is rewritten in Smith form; each non-trivial cyclic factor
/// gets one generator (an ambient vector) and `coords` reads an element of L
/// in those generators, reduced modulo the factor orders.
class LatticeQuotient {
 public:
  LatticeQuotient() = default;
  LatticeQuotient(const IntMatrix& L_generators, const IntMatrix& M_generators);

  const Invariants& invariants() const { return inv_; }
  /// One order per generator; 0 marks a free generator.
  const std::vector<Integer>& orders() const { return orders_; }
  /// Ambient representatives, one column per generator.
  const IntMatrix& generators() const { return gens_; }
  const LatticeBasis& lattice() const { return L_; }

  /// Coordinates of x in the quotient, or nothing when x is not in L.
  std::optional<IntVector> coords(const IntVector& x) const;
  /// x in M (x must lie in L).
  bool in_submodule(const IntVector& x) const;

 private:
  LatticeBasis L_;
  IntMatrix transform_;  // rows of the Smith U kept for the non-trivial factors
  std::vector<Integer> orders_;
  IntMatrix gens_;
  Invariants inv_;
};

}  // namespace cohomolab
