#include "cohomolab/spectral/scalars.hpp"

#include "cohomolab/error.hpp"
#include "cohomolab/fpabelian/smith.hpp"

namespace cohomolab {
namespace {

Integer inverse_mod(const Integer& a, const Integer& p) {
  return boost::multiprecision::powm(floor_mod(a, p), Integer(p - 2), p);
}

// Row echelon form mod p in place; returns pivot columns in row order.
std::vector<Index> echelon_mod(IntMatrix& A, const Integer& p, Index cols) {
  std::vector<Index> piv;
  Index row = 0;
  for (Index c = 0; c < cols && row < A.rows(); ++c) {
    Index sel = -1;
    for (Index i = row; i < A.rows(); ++i)
      if (A(i, c) != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    A.row(row).swap(A.row(sel));
    const Integer inv = inverse_mod(A(row, c), p);
    for (Index j = 0; j < A.cols(); ++j) A(row, j) = floor_mod(Integer(A(row, j) * inv), p);
    for (Index i = 0; i < A.rows(); ++i) {
      if (i == row || A(i, c) == 0) continue;
      const Integer f = A(i, c);
      for (Index j = 0; j < A.cols(); ++j)
        if (A(row, j) != 0) A(i, j) = floor_mod(Integer(A(i, j) - f * A(row, j)), p);
    }
    piv.push_back(c);
    ++row;
  }
  return piv;
}

}  // namespace

IntMatrix Scalars::reduce(IntMatrix m) const {
  if (field())
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j) m(i, j) = floor_mod(m(i, j), p_);
  return m;
}

IntVector Scalars::reduce(IntVector v) const {
  if (field())
    for (Index i = 0; i < v.size(); ++i) v[i] = floor_mod(v[i], p_);
  return v;
}

IntMatrix Scalars::kernel(const IntMatrix& M) const {
  if (M.cols() == 0) return IntMatrix(0, 0);
  if (M.rows() == 0) return identity_matrix(M.cols());
  if (!field()) return kernel_basis(M);
  IntMatrix A = reduce(M);
  const auto piv = echelon_mod(A, p_, A.cols());
  std::vector<char> is_piv(M.cols(), 0);
  for (Index c : piv) is_piv[c] = 1;
  IntMatrix K = zero_matrix(M.cols(), M.cols() - Index(piv.size()));
  Index k = 0;
  for (Index f = 0; f < M.cols(); ++f) {
    if (is_piv[f]) continue;
    K(f, k) = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) K(piv[r], k) = floor_mod(Integer(-A(Index(r), f)), p_);
    ++k;
  }
  return K;
}

std::optional<IntVector> Scalars::solve(const IntMatrix& A, const IntVector& b) const {
  if (A.rows() != b.size()) throw Error(ErrorKind::DimensionMismatch, "right-hand side has the wrong length");
  if (A.cols() == 0) {
    if (is_zero(reduce(b))) return IntVector(0);
    return std::nullopt;
  }
  if (!field()) return solve_integer(A, b);
  IntMatrix aug(A.rows(), A.cols() + 1);
  aug.leftCols(A.cols()) = A;
  aug.col(A.cols()) = b;
  aug = reduce(aug);
  const auto piv = echelon_mod(aug, p_, A.cols());
  for (Index i = Index(piv.size()); i < aug.rows(); ++i)
    if (aug(i, A.cols()) != 0) return std::nullopt;
  IntVector x = zero_vector(A.cols());
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(Index(r), A.cols());
  return x;
}

Subquotient::Subquotient(const Scalars& k, const IntMatrix& L, const IntMatrix& M) : k_(k), dim_(L.rows()) {
  if (M.rows() != L.rows() && M.cols() > 0) throw Error(ErrorKind::DimensionMismatch, "L and M differ in height");
  if (dim_ == 0 || L.cols() == 0) {
    gens_ = IntMatrix(dim_, 0);
    return;
  }
  if (!k.field()) {
    q_.emplace(L, M.cols() ? M : IntMatrix(dim_, 0));
    orders_ = q_->orders();
    gens_ = q_->generators();
    return;
  }
  // greedy basis: columns of M first, then those of L that are new
  const Integer& p = k.modulus();
  IntMatrix all(dim_, M.cols() + L.cols());
  if (M.cols()) all.leftCols(M.cols()) = M;
  all.rightCols(L.cols()) = L;
  all = k.reduce(all);
  IntMatrix chosen(dim_, 0);
  Index rank = 0;
  for (Index j = 0; j < all.cols(); ++j) {
    IntMatrix trial(dim_, chosen.cols() + 1);
    if (chosen.cols()) trial.leftCols(chosen.cols()) = chosen;
    trial.col(chosen.cols()) = all.col(j);
    IntMatrix e = trial.transpose();
    const Index r = Index(echelon_mod(e, p, e.cols()).size());
    if (r == rank) continue;
    chosen = std::move(trial);
    rank = r;
    if (j < M.cols()) ++m_rank_;
  }
  basis_ = chosen;
  const Index g = rank - m_rank_;
  gens_ = basis_.rightCols(g);
  orders_.assign(g, p);
}

std::optional<IntVector> Subquotient::coords(const IntVector& x) const {
  if (x.size() != dim_) throw Error(ErrorKind::DimensionMismatch, "vector has the wrong length");
  if (q_) return q_->coords(x);
  if (gens_.cols() == 0) {
    if (basis_.cols() == 0) {
      if (is_zero(k_.reduce(x))) return IntVector(0);
      return std::nullopt;
    }
  }
  auto y = k_.solve(basis_, x);
  if (!y) return std::nullopt;
  return IntVector(y->tail(gens_.cols()));
}

}  // namespace cohomolab
