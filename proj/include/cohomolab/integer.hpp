#pragma once

// Exact integer scalar and the dense/sparse matrix types built on it.

#include <boost/multiprecision/traits/is_byte_container.hpp>
#include <Eigen/Core>
#include <Eigen/SparseCore>

// Boost 1.74 probes `C::const_iterator` on every constructor argument, and
// Eigen 3.4 dense expressions declare it as `void` for non-vectors. Mark the
// expression templates as non-byte-containers so the probe never fires.
namespace boost::multiprecision::detail {
#define COHOMOLAB_NOT_BYTES(...) \
  struct is_byte_container<__VA_ARGS__> : std::false_type {}
template <class S, int R, int C, int O, int MR, int MC>
COHOMOLAB_NOT_BYTES(Eigen::Matrix<S, R, C, O, MR, MC>);
template <class S, int R, int C, int O, int MR, int MC>
COHOMOLAB_NOT_BYTES(Eigen::Array<S, R, C, O, MR, MC>);
template <class X, int R, int C, bool I>
COHOMOLAB_NOT_BYTES(Eigen::Block<X, R, C, I>);
template <class D>
COHOMOLAB_NOT_BYTES(Eigen::DenseBase<D>);
template <class D>
COHOMOLAB_NOT_BYTES(Eigen::MatrixBase<D>);
template <class D>
COHOMOLAB_NOT_BYTES(Eigen::ArrayBase<D>);
template <class A, class B, int O>
COHOMOLAB_NOT_BYTES(Eigen::Product<A, B, O>);
template <class X>
COHOMOLAB_NOT_BYTES(Eigen::Transpose<X>);
template <class F, class A, class B>
COHOMOLAB_NOT_BYTES(Eigen::CwiseBinaryOp<F, A, B>);
template <class F, class X>
COHOMOLAB_NOT_BYTES(Eigen::CwiseUnaryOp<F, X>);
template <class F, class X>
COHOMOLAB_NOT_BYTES(Eigen::CwiseNullaryOp<F, X>);
template <class X, int O, class St>
COHOMOLAB_NOT_BYTES(Eigen::Map<X, O, St>);
template <class X, int O, class St>
COHOMOLAB_NOT_BYTES(Eigen::Ref<X, O, St>);
template <class X, int I>
COHOMOLAB_NOT_BYTES(Eigen::Diagonal<X, I>);
template <class X, int S>
COHOMOLAB_NOT_BYTES(Eigen::VectorBlock<X, S>);
template <class X, int R, int C>
COHOMOLAB_NOT_BYTES(Eigen::Replicate<X, R, C>);
template <class X, int D>
COHOMOLAB_NOT_BYTES(Eigen::Reverse<X, D>);
#undef COHOMOLAB_NOT_BYTES
}  // namespace boost::multiprecision::detail

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace cohomolab {

using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;

using Index = std::ptrdiff_t;

using IntMatrix = Eigen::Matrix<Integer, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<Integer, Eigen::Dynamic, 1>;
using SparseIntMatrix = Eigen::SparseMatrix<Integer, Eigen::ColMajor, int>;
using Triplet = Eigen::Triplet<Integer, int>;

/// Floor division and the matching non-negative remainder (for m > 0).
inline Integer floor_mod(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

inline std::string to_string(const Integer& x) { return x.str(); }

/// Build a sparse matrix from triplets; duplicates are summed.
SparseIntMatrix sparse_from_triplets(Index rows, Index cols, const std::vector<Triplet>& t);

/// Exact equality of two sparse matrices (structural zeros ignored).
bool sparse_equal(const SparseIntMatrix& a, const SparseIntMatrix& b);

bool is_zero(const SparseIntMatrix& m);
bool is_zero(const IntVector& v);

IntMatrix to_dense(const SparseIntMatrix& m);
SparseIntMatrix to_sparse(const IntMatrix& m);

/// Sparse matrix times dense vector, exact.
IntVector apply(const SparseIntMatrix& m, const IntVector& v);

IntVector zero_vector(Index n);
IntMatrix zero_matrix(Index rows, Index cols);
IntMatrix identity_matrix(Index n);

/// [a | b] (row counts must agree).
IntMatrix hcat(const IntMatrix& a, const IntMatrix& b);

}  // namespace cohomolab
