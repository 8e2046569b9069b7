#include "cohomolab/fpabelian/smith.hpp"

#include <utility>

#include "cohomolab/error.hpp"

namespace cohomolab {
namespace {

// Elementary operations on a working matrix plus the optional transforms.
// Row ops act on U from the left and on U^{-1} from the right; column ops on
// W from the right and on W^{-1} from the left.
struct Reducer {
  IntMatrix A;
  bool track;
  IntMatrix U, Ui, W, Wi;

  Reducer(const IntMatrix& m, bool t) : A(m), track(t) {
    if (track) {
      U = identity_matrix(m.rows());
      Ui = U;
      W = identity_matrix(m.cols());
      Wi = W;
    }
  }

  // row_i += q * row_t
  void row_add(Index i, Index t, const Integer& q) {
    if (q == 0) return;
    for (Index j = 0; j < A.cols(); ++j)
      if (A(t, j) != 0) A(i, j) += q * A(t, j);
    if (!track) return;
    for (Index j = 0; j < U.cols(); ++j)
      if (U(t, j) != 0) U(i, j) += q * U(t, j);
    // (I + q e_i e_t^T)^{-1} = I - q e_i e_t^T: column t of Ui -= q * column i
    for (Index r = 0; r < Ui.rows(); ++r)
      if (Ui(r, i) != 0) Ui(r, t) -= q * Ui(r, i);
  }

  // col_j += q * col_t
  void col_add(Index j, Index t, const Integer& q) {
    if (q == 0) return;
    for (Index i = 0; i < A.rows(); ++i)
      if (A(i, t) != 0) A(i, j) += q * A(i, t);
    if (!track) return;
    for (Index i = 0; i < W.rows(); ++i)
      if (W(i, t) != 0) W(i, j) += q * W(i, t);
    for (Index c = 0; c < Wi.cols(); ++c)
      if (Wi(j, c) != 0) Wi(t, c) -= q * Wi(j, c);
  }

  void row_swap(Index i, Index t) {
    if (i == t) return;
    A.row(i).swap(A.row(t));
    if (!track) return;
    U.row(i).swap(U.row(t));
    Ui.col(i).swap(Ui.col(t));
  }

  void col_swap(Index j, Index t) {
    if (j == t) return;
    A.col(j).swap(A.col(t));
    if (!track) return;
    W.col(j).swap(W.col(t));
    Wi.row(j).swap(Wi.row(t));
  }

  void row_negate(Index i) {
    for (Index j = 0; j < A.cols(); ++j) A(i, j) = -A(i, j);
    if (!track) return;
    for (Index j = 0; j < U.cols(); ++j) U(i, j) = -U(i, j);
    for (Index r = 0; r < Ui.rows(); ++r) Ui(r, i) = -Ui(r, i);
  }

  // Smallest |entry| in the trailing block; false when the block is zero.
  bool find_pivot(Index t, Index& pi, Index& pj) const {
    bool found = false;
    Integer best;
    for (Index j = t; j < A.cols(); ++j)
      for (Index i = t; i < A.rows(); ++i) {
        const Integer& v = A(i, j);
        if (v == 0) continue;
        Integer a = abs(v);
        if (!found || a < best) {
          found = true;
          best = a;
          pi = i;
          pj = j;
          if (best == 1) return true;
        }
      }
    return found;
  }

  Index run() {
    const Index m = A.rows(), n = A.cols();
    Index t = 0;
    for (; t < std::min(m, n); ++t) {
      Index pi = 0, pj = 0;
      if (!find_pivot(t, pi, pj)) break;
      row_swap(t, pi);
      col_swap(t, pj);
      for (;;) {
        bool clean = true;
        for (Index i = t + 1; i < m; ++i) {
          if (A(i, t) == 0) continue;
          row_add(i, t, -floor_div(A(i, t), A(t, t)));
          if (A(i, t) != 0) clean = false;
        }
        for (Index j = t + 1; j < n; ++j) {
          if (A(t, j) == 0) continue;
          col_add(j, t, -floor_div(A(t, j), A(t, t)));
          if (A(t, j) != 0) clean = false;
        }
        if (!clean) {
          // a remainder is smaller than the pivot; bring the smallest one in
          Index bi = t, bj = t;
          Integer best = abs(A(t, t));
          for (Index i = t + 1; i < m; ++i)
            if (A(i, t) != 0 && abs(A(i, t)) < best) best = abs(A(i, t)), bi = i, bj = t;
          for (Index j = t + 1; j < n; ++j)
            if (A(t, j) != 0 && abs(A(t, j)) < best) best = abs(A(t, j)), bi = t, bj = j;
          row_swap(t, bi);
          col_swap(t, bj);
          continue;
        }
        // divisibility d_t | d_{t+1}: fold an offending row into the pivot row
        Index bad = -1;
        if (abs(A(t, t)) != 1) {
          for (Index i = t + 1; i < m && bad < 0; ++i)
            for (Index j = t + 1; j < n; ++j)
              if (A(i, j) % A(t, t) != 0) {
                bad = i;
                break;
              }
        }
        if (bad < 0) break;
        row_add(t, bad, Integer(1));
      }
      if (A(t, t) < 0) row_negate(t);
    }
    return t;
  }
};

}  // namespace

std::vector<Integer> SmithDecomposition::diagonal() const {
  std::vector<Integer> d;
  for (Index i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
  return d;
}

SmithDecomposition smith_normal_form(const IntMatrix& M) {
  Reducer r(M, true);
  SmithDecomposition out;
  out.rank = r.run();
  out.S = std::move(r.A);
  out.U = std::move(r.U);
  out.W = std::move(r.W);
  out.U_inv = std::move(r.Ui);
  out.W_inv = std::move(r.Wi);
  return out;
}

std::vector<Integer> invariant_factors(const IntMatrix& M) {
  Reducer r(M, false);
  const Index rank = r.run();
  std::vector<Integer> d;
  for (Index i = 0; i < rank; ++i) d.push_back(r.A(i, i));
  return d;
}

IntMatrix hermite_column_form(const IntMatrix& A) {
  IntMatrix H = A;
  const Index m = H.rows(), n = H.cols();
  auto col_add = [&](Index j, Index t, const Integer& q) {
    if (q == 0) return;
    for (Index i = 0; i < m; ++i)
      if (H(i, t) != 0) H(i, j) += q * H(i, t);
  };
  Index c = 0;
  for (Index r = 0; r < m && c < n; ++r) {
    for (;;) {
      Index best = -1;
      for (Index j = c; j < n; ++j)
        if (H(r, j) != 0 && (best < 0 || abs(H(r, j)) < abs(H(r, best)))) best = j;
      if (best < 0) break;
      if (best != c) H.col(best).swap(H.col(c));
      bool clean = true;
      for (Index j = c + 1; j < n; ++j) {
        if (H(r, j) == 0) continue;
        col_add(j, c, -floor_div(H(r, j), H(r, c)));
        if (H(r, j) != 0) clean = false;
      }
      if (clean) break;
    }
    if (H(r, c) == 0) continue;
    if (H(r, c) < 0)
      for (Index i = 0; i < m; ++i) H(i, c) = -H(i, c);
    for (Index j = 0; j < c; ++j)
      if (H(r, j) != 0) col_add(j, c, -floor_div(H(r, j), H(r, c)));
    ++c;
  }
  return H.leftCols(c);
}

IntMatrix kernel_basis(const IntMatrix& M) {
  if (M.cols() == 0) return IntMatrix(0, 0);
  SmithDecomposition s = smith_normal_form(M);
  IntMatrix K = s.W.rightCols(M.cols() - s.rank);
  return hermite_column_form(K);
}

std::optional<IntVector> solve_integer(const IntMatrix& A, const IntVector& b) {
  if (A.rows() != b.size())
    throw Error(ErrorKind::DimensionMismatch, "right-hand side has " + std::to_string(b.size()) +
                                                  " entries for " + std::to_string(A.rows()) + " rows");
  SmithDecomposition s = smith_normal_form(A);
  IntVector y = s.U * b;
  IntVector z = zero_vector(A.cols());
  for (Index i = 0; i < A.rows(); ++i) {
    if (i < s.rank) {
      if (y[i] % s.S(i, i) != 0) return std::nullopt;
      z[i] = y[i] / s.S(i, i);
    } else if (y[i] != 0) {
      return std::nullopt;
    }
  }
  return IntVector(s.W * z);
}

bool is_unimodular(const IntMatrix& M) {
  if (M.rows() != M.cols()) return false;
  std::vector<Integer> d = invariant_factors(M);
  if (Index(d.size()) != M.rows()) return false;
  for (const Integer& x : d)
    if (x != 1) return false;
  return true;
}

}  // namespace cohomolab
