#include "cohomolab/fpabelian/lattice.hpp"

#include <algorithm>
#include <map>

#include "cohomolab/error.hpp"
#include "cohomolab/fpabelian/smith.hpp"

namespace cohomolab {

std::string Invariants::str() const {
  if (trivial()) return "0";
  std::string s;
  for (const Integer& t : torsion) {
    if (!s.empty()) s += " + ";
    s += "Z/" + t.str();
  }
  if (free_rank > 0) {
    if (!s.empty()) s += " + ";
    s += free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank);
  }
  return s;
}

std::string Invariants::machine() const {
  if (trivial()) return "trivial";
  std::string s;
  for (const Integer& t : torsion) s += (s.empty() ? "" : ",") + t.str();
  for (Index i = 0; i < free_rank; ++i) s += s.empty() ? "0" : ",0";
  return s;
}

namespace {

void factor_into(Integer n, std::map<Integer, std::vector<unsigned>>& by_prime) {
  for (Integer p = 2; p * p <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) n /= p, ++e;
    if (e) by_prime[p].push_back(e);
  }
  if (n > 1) by_prime[n].push_back(1);
}

}  // namespace

Invariants invariants_from_orders(const std::vector<Integer>& orders) {
  Invariants inv;
  std::map<Integer, std::vector<unsigned>> by_prime;
  std::map<Integer, Index> multiplicity;
  for (const Integer& o0 : orders) {
    Integer o = o0 < 0 ? Integer(-o0) : o0;
    if (o == 0)
      ++inv.free_rank;
    else if (o != 1)
      ++multiplicity[o];
  }
  for (const auto& [o, count] : multiplicity) {
    std::map<Integer, std::vector<unsigned>> one;
    factor_into(o, one);
    for (const auto& [p, es] : one)
      for (Index c = 0; c < count; ++c) by_prime[p].push_back(es[0]);
  }
  std::size_t longest = 0;
  for (auto& [p, es] : by_prime) {
    std::sort(es.begin(), es.end(), std::greater<>());
    longest = std::max(longest, es.size());
  }
  // largest factor collects the largest prime powers
  for (std::size_t k = 0; k < longest; ++k) {
    Integer d = 1;
    for (const auto& [p, es] : by_prime)
      if (k < es.size()) d *= boost::multiprecision::pow(p, es[k]);
    inv.torsion.push_back(d);
  }
  std::reverse(inv.torsion.begin(), inv.torsion.end());
  return inv;
}

LatticeBasis::LatticeBasis(IntMatrix basis) : B_(std::move(basis)) {
  SmithDecomposition s = smith_normal_form(B_);
  if (s.rank != B_.cols()) throw Error(ErrorKind::Internal, "lattice basis columns are dependent");
  u_top_ = s.U.topRows(s.rank);
  w_ = std::move(s.W);
  for (Index i = 0; i < s.rank; ++i) s_.push_back(s.S(i, i));
}

LatticeBasis LatticeBasis::spanned_by(const IntMatrix& generators) {
  return LatticeBasis(hermite_column_form(generators));
}

std::optional<IntVector> LatticeBasis::coords(const IntVector& x) const {
  if (x.size() != B_.rows())
    throw Error(ErrorKind::DimensionMismatch, "vector of length " + std::to_string(x.size()) +
                                                  " in a lattice of ambient dimension " +
                                                  std::to_string(B_.rows()));
  const Index k = B_.cols();
  IntVector y = u_top_ * x;
  for (Index i = 0; i < k; ++i) {
    if (y[i] % s_[i] != 0) return std::nullopt;
    y[i] /= s_[i];
  }
  IntVector c = k ? IntVector(w_ * y) : zero_vector(0);
  IntVector back = k ? IntVector(B_ * c) : zero_vector(B_.rows());
  if (back != x) return std::nullopt;
  return c;
}

LatticeQuotient::LatticeQuotient(const IntMatrix& L_generators, const IntMatrix& M_generators)
    : L_(LatticeBasis::spanned_by(L_generators)) {
  const Index k = L_.rank();
  IntMatrix C = zero_matrix(k, M_generators.cols());
  for (Index j = 0; j < M_generators.cols(); ++j) {
    auto c = L_.coords(M_generators.col(j));
    if (!c) throw Error(ErrorKind::Internal, "submodule generator outside the lattice");
    C.col(j) = *c;
  }
  SmithDecomposition s = smith_normal_form(C);
  std::vector<Index> kept;
  for (Index i = 0; i < k; ++i) {
    Integer o = i < s.rank ? s.S(i, i) : Integer(0);
    if (o == 1) continue;
    kept.push_back(i);
    orders_.push_back(o);
  }
  transform_ = zero_matrix(Index(kept.size()), k);
  gens_ = zero_matrix(L_.ambient_dim(), Index(kept.size()));
  for (std::size_t r = 0; r < kept.size(); ++r) {
    transform_.row(Index(r)) = s.U.row(kept[r]);
    gens_.col(Index(r)) = L_.basis() * s.U_inv.col(kept[r]);
  }
  inv_ = invariants_from_orders(orders_);
}

std::optional<IntVector> LatticeQuotient::coords(const IntVector& x) const {
  auto c = L_.coords(x);
  if (!c) return std::nullopt;
  IntVector y = transform_.rows() ? IntVector(transform_ * *c) : zero_vector(0);
  for (Index i = 0; i < y.size(); ++i)
    if (orders_[i] != 0) y[i] = floor_mod(y[i], orders_[i]);
  return y;
}

bool LatticeQuotient::in_submodule(const IntVector& x) const {
  auto y = coords(x);
  if (!y) throw Error(ErrorKind::Internal, "element outside the lattice");
  return is_zero(*y);
}

}  // namespace cohomolab
