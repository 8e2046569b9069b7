#include "cohomolab/fpabelian/group.hpp"

#include "cohomolab/error.hpp"
#include "cohomolab/fpabelian/fpcomplex.hpp"
#include "cohomolab/fpabelian/smith.hpp"

namespace cohomolab {

FpAbGroup::FpAbGroup() : rel_(0, 0) {}

FpAbGroup::FpAbGroup(Index generators, SparseIntMatrix relations)
    : gens_(generators), rel_(std::move(relations)) {
  if (rel_.rows() != gens_)
    throw Error(ErrorKind::DimensionMismatch, "relation matrix has " + std::to_string(rel_.rows()) +
                                                  " rows for " + std::to_string(gens_) + " generators");
  rel_.prune([](Index, Index, const Integer& v) { return v != 0; });
  rel_.makeCompressed();
  orders_.assign(gens_, Integer(0));
  std::vector<bool> hit(gens_, false);
  for (Index k = 0; k < rel_.outerSize() && diagonal_; ++k) {
    Index nnz = 0;
    for (SparseIntMatrix::InnerIterator it(rel_, k); it; ++it) {
      if (++nnz > 1 || hit[it.row()]) {
        diagonal_ = false;
        break;
      }
      hit[it.row()] = true;
      orders_[it.row()] = abs(it.value());
    }
  }
  if (diagonal_) {
    inv_ = invariants_from_orders(orders_);
  } else {
    orders_.clear();
    std::vector<Integer> d = invariant_factors(to_dense(rel_));
    for (const Integer& x : d)
      if (x != 1) inv_.torsion.push_back(x);
    inv_.free_rank = gens_ - Index(d.size());
  }
}

FpAbGroup FpAbGroup::free(Index rank) { return FpAbGroup(rank, SparseIntMatrix(rank, 0)); }

FpAbGroup FpAbGroup::diagonal(std::vector<Integer> orders) {
  std::vector<Triplet> t;
  int col = 0;
  for (std::size_t i = 0; i < orders.size(); ++i)
    if (orders[i] != 0) t.emplace_back(int(i), col++, abs(orders[i]));
  return FpAbGroup(Index(orders.size()), sparse_from_triplets(Index(orders.size()), col, t));
}

FpAbGroup FpAbGroup::from_invariants(const Invariants& inv) {
  std::vector<Integer> orders = inv.torsion;
  orders.resize(orders.size() + inv.free_rank, Integer(0));
  return diagonal(std::move(orders));
}

bool FpAbGroup::is_zero_element(const IntVector& x) const {
  if (x.size() != gens_)
    throw Error(ErrorKind::DimensionMismatch, "element has " + std::to_string(x.size()) +
                                                  " coordinates, group has " + std::to_string(gens_) +
                                                  " generators");
  if (diagonal_) {
    for (Index i = 0; i < gens_; ++i) {
      if (x[i] == 0) continue;
      if (orders_[i] == 0 || x[i] % orders_[i] != 0) return false;
    }
    return true;
  }
  return solve_integer(to_dense(rel_), x).has_value();
}

IntVector FpAbGroup::reduce(const IntVector& x) const {
  if (!diagonal_) return x;
  IntVector y = x;
  for (Index i = 0; i < gens_; ++i)
    if (orders_[i] != 0) y[i] = floor_mod(y[i], orders_[i]);
  return y;
}

bool FpAbGroup::equal_elements(const IntVector& x, const IntVector& y) const {
  return is_zero_element(x - y);
}

bool FpAbGroup::same_presentation(const FpAbGroup& other) const {
  if (gens_ != other.gens_) return false;
  if (diagonal_ && other.diagonal_) return orders_ == other.orders_;
  return sparse_equal(rel_, other.rel_);
}

GroupMap::GroupMap(FpAbGroup source, FpAbGroup target, SparseIntMatrix matrix)
    : GroupMap(std::make_shared<const FpAbGroup>(std::move(source)),
               std::make_shared<const FpAbGroup>(std::move(target)), std::move(matrix)) {}

GroupMap::GroupMap(std::shared_ptr<const FpAbGroup> source, std::shared_ptr<const FpAbGroup> target,
                   SparseIntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), m_(std::move(matrix)) {
  m_.prune([](Index, Index, const Integer& v) { return v != 0; });
  m_.makeCompressed();
  check();
}

GroupMap GroupMap::zero(std::shared_ptr<const FpAbGroup> source, std::shared_ptr<const FpAbGroup> target) {
  SparseIntMatrix m(target->generator_count(), source->generator_count());
  return GroupMap(std::move(source), std::move(target), std::move(m));
}

GroupMap GroupMap::identity(std::shared_ptr<const FpAbGroup> group) {
  const Index n = group->generator_count();
  std::vector<Triplet> t;
  for (Index i = 0; i < n; ++i) t.emplace_back(int(i), int(i), Integer(1));
  return GroupMap(group, group, sparse_from_triplets(n, n, t));
}

void GroupMap::check() const {
  if (m_.rows() != target_->generator_count() || m_.cols() != source_->generator_count())
    throw Error(ErrorKind::DimensionMismatch,
                "map matrix is " + std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()) +
                    ", expected " + std::to_string(target_->generator_count()) + "x" +
                    std::to_string(source_->generator_count()));
  if (source_->is_diagonal() && target_->is_diagonal()) {
    const auto& so = source_->orders();
    const auto& to = target_->orders();
    for (Index j = 0; j < m_.outerSize(); ++j) {
      if (so[j] == 0) continue;
      for (SparseIntMatrix::InnerIterator it(m_, j); it; ++it) {
        const Integer& o = to[it.row()];
        if (o == 0 || (it.value() * so[j]) % o != 0)
          throw Error(ErrorKind::NotWellDefined, "generator " + std::to_string(j) + " of order " +
                                                     so[j].str() + " maps to an element of different order");
      }
    }
    return;
  }
  SparseIntMatrix img = m_ * source_->relations();
  IntMatrix dense = to_dense(img);
  for (Index j = 0; j < dense.cols(); ++j)
    if (!target_->is_zero_element(dense.col(j)))
      throw Error(ErrorKind::NotWellDefined, "relation " + std::to_string(j) +
                                                 " of the source does not map into the target relations");
}

IntVector GroupMap::apply(const IntVector& x) const { return target_->reduce(cohomolab::apply(m_, x)); }

GroupMap GroupMap::after(const GroupMap& first) const {
  if (!first.target().same_presentation(source()))
    throw Error(ErrorKind::DimensionMismatch, "composition of maps with mismatched middle groups");
  SparseIntMatrix m = m_ * first.m_;
  if (target_->is_diagonal()) {
    const auto& to = target_->orders();
    for (Index k = 0; k < m.outerSize(); ++k)
      for (SparseIntMatrix::InnerIterator it(m, k); it; ++it)
        if (to[it.row()] != 0) it.valueRef() = floor_mod(it.value(), to[it.row()]);
  }
  return GroupMap(first.source_, target_, std::move(m));
}

std::optional<Index> GroupMap::nonzero_witness() const {
  if (target_->is_diagonal()) {
    const auto& to = target_->orders();
    for (Index j = 0; j < m_.outerSize(); ++j)
      for (SparseIntMatrix::InnerIterator it(m_, j); it; ++it) {
        const Integer& o = to[it.row()];
        if (it.value() != 0 && (o == 0 || it.value() % o != 0)) return j;
      }
    return std::nullopt;
  }
  IntMatrix dense = to_dense(m_);
  for (Index j = 0; j < dense.cols(); ++j)
    if (!target_->is_zero_element(dense.col(j))) return j;
  return std::nullopt;
}

namespace {

void check_composable(const GroupMap& d_out, const GroupMap& d_in) {
  if (!d_in.target().same_presentation(d_out.source()))
    throw Error(ErrorKind::DimensionMismatch, "homology of maps with mismatched middle groups");
  if (auto w = d_out.after(d_in).nonzero_witness())
    throw Error(ErrorKind::CompositionNotZero,
                "d_out o d_in is non-zero on source generator " + std::to_string(*w));
}

}  // namespace

SubquotientHomology::SubquotientHomology(const GroupMap& d_out, const GroupMap& d_in) {
  check_composable(d_out, d_in);
  const FpAbGroup& mid = d_out.source();
  const FpAbGroup& tgt = d_out.target();
  n_ = mid.generator_count();
  // cocycles: x with d_out x in the target relation lattice
  IntMatrix A = hcat(to_dense(d_out.matrix()), to_dense(tgt.relations()));
  IntMatrix K = kernel_basis(A);
  IntMatrix Z = K.topRows(n_);
  IntMatrix B = hcat(to_dense(d_in.matrix()), to_dense(mid.relations()));
  q_ = LatticeQuotient(Z, B);
}

IntMatrix SubquotientHomology::representatives() const { return q_.generators(); }

std::optional<IntVector> SubquotientHomology::coords(const IntVector& cocycle) const {
  return q_.coords(cocycle);
}

FpAbGroup homology_at(const GroupMap& d_out, const GroupMap& d_in) {
  if (d_out.source().is_diagonal() && d_out.target().is_diagonal() && d_in.source().is_diagonal()) {
    check_composable(d_out, d_in);
    FpComplex c;
    c.groups = {d_in.source_ptr(), d_out.source_ptr(), d_out.target_ptr()};
    c.d = {d_in.matrix(), d_out.matrix()};
    FpComplexHomology h(c);
    return FpAbGroup::from_invariants(h.homology(1));
  }
  return SubquotientHomology(d_out, d_in).group();
}

std::optional<IntVector> solve_in_group(const GroupMap& f, const IntVector& b) {
  const FpAbGroup& tgt = f.target();
  if (b.size() != tgt.generator_count())
    throw Error(ErrorKind::DimensionMismatch, "right-hand side has " + std::to_string(b.size()) +
                                                  " entries, target has " +
                                                  std::to_string(tgt.generator_count()) + " generators");
  const Index n = f.source().generator_count();
  IntMatrix A = hcat(to_dense(f.matrix()), to_dense(tgt.relations()));
  auto sol = solve_integer(A, b);
  if (!sol) return std::nullopt;
  IntVector x = sol->head(n);
  if (!tgt.equal_elements(f.apply(x), b))
    throw Error(ErrorKind::Internal, "solution failed re-verification");
  return f.source().reduce(x);
}

GroupMap combine(const GroupMap& a, const GroupMap& b, int sign) {
  if (!a.source().same_presentation(b.source()) || !a.target().same_presentation(b.target()))
    throw Error(ErrorKind::DimensionMismatch, "sum of maps between different groups");
  SparseIntMatrix m = sign >= 0 ? SparseIntMatrix(a.matrix() + b.matrix()) : SparseIntMatrix(a.matrix() - b.matrix());
  m.prune(Integer(0));
  return GroupMap(a.source_ptr(), a.target_ptr(), std::move(m));
}

bool same_map(const GroupMap& a, const GroupMap& b) { return combine(a, b, -1).is_zero(); }

std::vector<IntVector> cocycle_generators(const GroupMap& d) {
  const Index n = d.source().generator_count();
  IntMatrix A = hcat(to_dense(d.matrix()), to_dense(d.target().relations()));
  IntMatrix K = kernel_basis(A);
  std::vector<IntVector> out;
  for (Index j = 0; j < K.cols(); ++j) {
    IntVector x = d.source().reduce(K.col(j).head(n));
    if (!d.source().is_zero_element(x)) out.push_back(x);
  }
  if (out.empty()) return out;
  // drop redundant columns with a Hermite form of the span
  IntMatrix Z(n, Index(out.size()));
  for (std::size_t j = 0; j < out.size(); ++j) Z.col(Index(j)) = out[j];
  IntMatrix H = hermite_column_form(hcat(Z, to_dense(d.source().relations())));
  std::vector<IntVector> gens;
  for (Index j = 0; j < H.cols(); ++j) {
    IntVector x = d.source().reduce(H.col(j));
    if (!d.source().is_zero_element(x)) gens.push_back(x);
  }
  return gens;
}

namespace {

/// Homology of 0 -> ... of a two-step complex through the sparse path when possible.
std::vector<IntVector> middle_representatives(const GroupMap& d_out, const GroupMap& d_in) {
  if (d_out.source().is_diagonal() && d_out.target().is_diagonal() && d_in.source().is_diagonal()) {
    check_composable(d_out, d_in);
    FpComplex c;
    c.groups = {d_in.source_ptr(), d_out.source_ptr(), d_out.target_ptr()};
    c.d = {d_in.matrix(), d_out.matrix()};
    FpComplexHomology h(c);
    return h.representatives(1);
  }
  SubquotientHomology h(d_out, d_in);
  IntMatrix r = h.representatives();
  std::vector<IntVector> out;
  for (Index j = 0; j < r.cols(); ++j) out.push_back(r.col(j));
  return out;
}

}  // namespace

std::optional<IntVector> kernel_element(const GroupMap& f) {
  auto none = std::make_shared<const FpAbGroup>(FpAbGroup::free(0));
  auto r = middle_representatives(f, GroupMap::zero(none, f.source_ptr()));
  if (r.empty()) return std::nullopt;
  return r.front();
}

std::optional<IntVector> cokernel_witness(const GroupMap& f) {
  auto none = std::make_shared<const FpAbGroup>(FpAbGroup::free(0));
  auto r = middle_representatives(GroupMap::zero(f.target_ptr(), none), f);
  if (r.empty()) return std::nullopt;
  return r.front();
}

}  // namespace cohomolab
