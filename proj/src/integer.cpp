#include "cohomolab/integer.hpp"

#include <algorithm>

#include "cohomolab/error.hpp"

namespace cohomolab {

SparseIntMatrix sparse_from_triplets(Index rows, Index cols, const std::vector<Triplet>& t) {
  SparseIntMatrix m(rows, cols);
  m.setFromTriplets(t.begin(), t.end());
  m.prune([](Index, Index, const Integer& v) { return v != 0; });
  m.makeCompressed();
  return m;
}

bool is_zero(const SparseIntMatrix& m) {
  for (Index k = 0; k < m.outerSize(); ++k)
    for (SparseIntMatrix::InnerIterator it(m, k); it; ++it)
      if (it.value() != 0) return false;
  return true;
}

bool is_zero(const IntVector& v) {
  for (Index i = 0; i < v.size(); ++i)
    if (v[i] != 0) return false;
  return true;
}

bool sparse_equal(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  SparseIntMatrix diff = a - b;
  return is_zero(diff);
}

IntMatrix to_dense(const SparseIntMatrix& m) {
  IntMatrix d = zero_matrix(m.rows(), m.cols());
  for (Index k = 0; k < m.outerSize(); ++k)
    for (SparseIntMatrix::InnerIterator it(m, k); it; ++it) d(it.row(), it.col()) += it.value();
  return d;
}

SparseIntMatrix to_sparse(const IntMatrix& m) {
  std::vector<Triplet> t;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0) t.emplace_back(int(i), int(j), m(i, j));
  return sparse_from_triplets(m.rows(), m.cols(), t);
}

IntVector apply(const SparseIntMatrix& m, const IntVector& v) {
  if (m.cols() != v.size())
    throw Error(ErrorKind::DimensionMismatch, "matrix has " + std::to_string(m.cols()) +
                                                  " columns, vector has " + std::to_string(v.size()) +
                                                  " entries");
  IntVector out = zero_vector(m.rows());
  for (Index k = 0; k < m.outerSize(); ++k) {
    if (v[k] == 0) continue;
    for (SparseIntMatrix::InnerIterator it(m, k); it; ++it) out[it.row()] += it.value() * v[k];
  }
  return out;
}

IntVector zero_vector(Index n) {
  IntVector v(n);
  for (Index i = 0; i < n; ++i) v[i] = 0;
  return v;
}

IntMatrix zero_matrix(Index rows, Index cols) {
  IntMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = 0;
  return m;
}

IntMatrix identity_matrix(Index n) {
  IntMatrix m = zero_matrix(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix hcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows())
    throw Error(ErrorKind::DimensionMismatch, "cannot place matrices with " + std::to_string(a.rows()) +
                                                  " and " + std::to_string(b.rows()) + " rows side by side");
  IntMatrix m(a.rows(), a.cols() + b.cols());
  if (a.cols()) m.leftCols(a.cols()) = a;
  if (b.cols()) m.rightCols(b.cols()) = b;
  return m;
}

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::CompositionNotZero: return "CompositionNotZero";
    case ErrorKind::NotWellDefined: return "NotWellDefined";
    case ErrorKind::SizeOverflow: return "SizeOverflow";
    case ErrorKind::NotAGroup: return "NotAGroup";
    case ErrorKind::NotOrderAutomorphism: return "NotOrderAutomorphism";
    case ErrorKind::NotHomomorphism: return "NotHomomorphism";
    case ErrorKind::NotAnAutomorphism: return "NotAnAutomorphism";
    case ErrorKind::RegionArityMismatch: return "RegionArityMismatch";
    case ErrorKind::RegionNotGStable: return "RegionNotGStable";
    case ErrorKind::NotClosedUnderDifferential: return "NotClosedUnderDifferential";
    case ErrorKind::NotGInvariantCovering: return "NotGInvariantCovering";
    case ErrorKind::NotACovering: return "NotACovering";
    case ErrorKind::NotACocycle: return "NotACocycle";
    case ErrorKind::NotContinuous: return "NotContinuous";
    case ErrorKind::NotEquivariant: return "NotEquivariant";
    case ErrorKind::NotFreeAction: return "NotFreeAction";
    case ErrorKind::SignProfileFailure: return "SignProfileFailure";
    case ErrorKind::SourceMembership: return "SourceMembership";
    case ErrorKind::BasepointInvalid: return "BasepointInvalid";
    case ErrorKind::BoundTooSmall: return "BoundTooSmall";
    case ErrorKind::NotStabilized: return "NotStabilized";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace cohomolab
