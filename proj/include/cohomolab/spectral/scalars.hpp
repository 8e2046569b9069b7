#pragma once

// Dense linear algebra over Z or over F_p, just enough for the subquotients
// of a spectral sequence. Over F_p all vectors are kept reduced to [0, p).

#include <optional>
#include <vector>

#include "cohomolab/fpabelian/lattice.hpp"
#include "cohomolab/integer.hpp"

namespace cohomolab {

class Scalars {
 public:
  /// p = 0 is Z; otherwise p must be prime.
  explicit Scalars(Integer p = 0) : p_(std::move(p)) {}

  const Integer& modulus() const { return p_; }
  bool field() const { return p_ > 0; }

  IntMatrix reduce(IntMatrix m) const;
  IntVector reduce(IntVector v) const;
  /// Columns spanning {x : M x = 0}; a basis.
  IntMatrix kernel(const IntMatrix& M) const;
  std::optional<IntVector> solve(const IntMatrix& A, const IntVector& b) const;

 private:
  Integer p_;
};

/// L / M for M <= L given by generating columns of the same height.
class Subquotient {
 public:
  Subquotient() = default;
  Subquotient(const Scalars& k, const IntMatrix& L, const IntMatrix& M);

  Index ambient_dim() const { return dim_; }
  /// One order per generator (0 = Z).
  const std::vector<Integer>& orders() const { return orders_; }
  Invariants invariants() const { return invariants_from_orders(orders_); }
  /// Representatives in L, one column per generator.
  const IntMatrix& generators() const { return gens_; }
  /// Coordinates of x in L, reduced by the orders; nothing when x is outside L.
  std::optional<IntVector> coords(const IntVector& x) const;

 private:
  Scalars k_;
  Index dim_ = 0;
  std::vector<Integer> orders_;
  IntMatrix gens_;
  // over Z
  std::optional<LatticeQuotient> q_;
  // over F_p: basis of M followed by the generators
  IntMatrix basis_;
  Index m_rank_ = 0;
};

}  // namespace cohomolab
